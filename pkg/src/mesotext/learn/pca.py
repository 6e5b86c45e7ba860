"""Principal components from the covariance eigendecomposition, plus silhouette."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class PCAResult:
    coords: np.ndarray
    components: np.ndarray  # (n_components, n_features)
    explained_variance_ratio: np.ndarray
    mean: np.ndarray


def pca(X, n_components: int = 2) -> PCAResult:
    X = np.asarray(X, dtype=np.float64)
    n, p = X.shape
    if n < 2:
        raise ValueError("PCA needs at least two rows")
    if not 1 <= n_components <= min(n - 1, p):
        raise ValueError(f"n_components={n_components} outside 1..{min(n - 1, p)}")
    mean = X.mean(axis=0)
    Xc = X - mean
    cov = Xc.T @ Xc / (n - 1)
    evals, evecs = np.linalg.eigh(cov)
    order = np.argsort(evals, kind="stable")[::-1]
    evals = np.clip(evals[order], 0.0, None)
    evecs = evecs[:, order[:n_components]].T
    # sign convention: the largest-magnitude loading is positive
    lead = np.argmax(np.abs(evecs), axis=1)
    evecs *= np.sign(evecs[np.arange(n_components), lead])[:, None]
    total = evals.sum()
    ratios = evals[:n_components] / total if total > 0 else np.zeros(n_components)
    return PCAResult(Xc @ evecs.T, evecs, ratios, mean)


def silhouette(X, labels) -> float:
    """Mean silhouette width under Euclidean distance (singletons score 0)."""
    X = np.asarray(X, dtype=np.float64)
    labels = np.asarray(labels)
    d = np.sqrt(np.maximum(((X[:, None, :] - X[None, :, :]) ** 2).sum(-1), 0.0))
    uniq = sorted(set(labels.tolist()))
    if len(uniq) < 2:
        raise ValueError("silhouette needs at least two clusters")
    s = np.zeros(len(X))
    for i in range(len(X)):
        own = labels == labels[i]
        if own.sum() == 1:
            continue
        a = d[i, own].sum() / (own.sum() - 1)
        b = min(d[i, labels == u].mean() for u in uniq if u != labels[i])
        s[i] = (b - a) / max(a, b) if max(a, b) > 0 else 0.0
    return float(s.mean())
