"""tf-idf weighting over a book's windows and cosine similarity between windows."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp


class EmptyWindowError(ValueError):
    pass


@dataclass
class TermWeightVector:
    window_index: int
    weights: dict[str, float] = field(default_factory=dict)

    def norm(self) -> float:
        return math.sqrt(math.fsum(v * v for v in self.weights.values()))


def count_matrix(windows):
    """Window-by-term raw counts as CSR, with the sorted vocabulary."""
    if not windows:
        raise EmptyWindowError("no windows")
    vocab = sorted({t for w in windows for t in w.terms})
    col = {t: j for j, t in enumerate(vocab)}
    indptr, indices, data = [0], [], []
    for w in windows:
        if not any(n > 0 for n in w.terms.values()):
            raise EmptyWindowError(f"window {w.index} has no terms")
        items = sorted((col[t], n) for t, n in w.terms.items() if n > 0)
        indices.extend(j for j, _ in items)
        data.extend(n for _, n in items)
        indptr.append(len(indices))
    counts = sp.csr_matrix(
        (np.asarray(data, dtype=np.float64), np.asarray(indices), np.asarray(indptr)),
        shape=(len(windows), len(vocab)),
    )
    return counts, vocab


def tfidf_matrix(counts: sp.csr_matrix) -> sp.csr_matrix:
    """(count / window length) * ln(n_windows / document frequency); zeros pruned."""
    counts = sp.csr_matrix(counts, dtype=np.float64)
    n_docs = counts.shape[0]
    lengths = np.asarray(counts.sum(axis=1)).ravel()
    if np.any(lengths <= 0):
        raise EmptyWindowError("window with no terms")
    df = np.bincount(counts.indices, minlength=counts.shape[1])
    idf = np.log(n_docs / np.maximum(df, 1))
    tf = sp.diags(1.0 / lengths) @ counts
    out = sp.csr_matrix(tf @ sp.diags(idf))
    out.eliminate_zeros()
    out.sort_indices()
    return out


def tfidf_all(windows) -> list[TermWeightVector]:
    counts, vocab = count_matrix(windows)
    weights = tfidf_matrix(counts)
    out = []
    for row, w in enumerate(windows):
        lo, hi = weights.indptr[row], weights.indptr[row + 1]
        out.append(
            TermWeightVector(
                w.index,
                {vocab[j]: float(v) for j, v in zip(weights.indices[lo:hi], weights.data[lo:hi])},
            )
        )
    return out


def cosine(a: TermWeightVector, b: TermWeightVector) -> float:
    na, nb = a.norm(), b.norm()
    if na == 0.0 or nb == 0.0:
        return 0.0
    # fsum and a sorted product keep the result exactly symmetric in (a, b)
    dot = math.fsum(a.weights[t] * b.weights[t] for t in a.weights.keys() & b.weights.keys())
    na, nb = sorted((na, nb))
    return min(1.0, max(0.0, dot / (na * nb)))


def vectors_to_matrix(vectors) -> sp.csr_matrix:
    vocab = sorted({t for v in vectors for t in v.weights})
    col = {t: j for j, t in enumerate(vocab)}
    rows, cols, vals = [], [], []
    for i, v in enumerate(vectors):
        for t, x in v.weights.items():
            rows.append(i)
            cols.append(col[t])
            vals.append(x)
    return sp.csr_matrix((vals, (rows, cols)), shape=(len(vectors), len(vocab)), dtype=np.float64)


def cosine_matrix(weights) -> np.ndarray:
    """Dense pairwise cosine similarities; rows with zero norm are similar to nothing."""
    weights = sp.csr_matrix(weights, dtype=np.float64)
    norms = np.sqrt(np.asarray(weights.multiply(weights).sum(axis=1)).ravel())
    inv = np.divide(1.0, norms, out=np.zeros_like(norms), where=norms > 0)
    unit = sp.diags(inv) @ weights
    sim = np.asarray((unit @ unit.T).todense())
    np.clip(sim, 0.0, 1.0, out=sim)
    zero = norms == 0
    sim[zero, :] = 0.0
    sim[:, zero] = 0.0
    return sim
