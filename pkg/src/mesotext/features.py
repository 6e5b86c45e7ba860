"""Per-book feature vectors over the average-degree sweep, and the dataset matrix."""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace

import numpy as np

from .mesonet import format_k
from .netmeasures import NODE_MEASURES, NodeMeasureTable, aggregate

STATS = ("mean", "std", "skew")
# measurements whose distribution contributes all three statistics
DISTRIBUTION_MEASURES = tuple(m for m in NODE_MEASURES if m != "degree")
ALL_MEASUREMENTS = ("degree", *DISTRIBUTION_MEASURES, "assortativity")


class MissingDegreeError(KeyError):
    pass


@dataclass
class FeatureVector:
    book_id: str
    author: str
    names: tuple[str, ...]
    values: np.ndarray


def feature_names(k_values, measurements=ALL_MEASUREMENTS) -> tuple[str, ...]:
    names = []
    for k in sorted(float(k) for k in k_values):
        tag = f"k{format_k(k)}"
        if "degree" in measurements:
            names += [f"{tag}:degree:std", f"{tag}:degree:skew"]
        for m in DISTRIBUTION_MEASURES:
            if m in measurements:
                names += [f"{tag}:{m}:{s}" for s in STATS]
        if "assortativity" in measurements:
            names.append(f"{tag}:assortativity:value")
    return tuple(names)


def _block(table: NodeMeasureTable, measurements) -> list[float]:
    out = []
    if "degree" in measurements:
        st = aggregate(table.columns["degree"])
        out += [st.std, st.skewness]
    for m in DISTRIBUTION_MEASURES:
        if m in measurements:
            st = aggregate(table.columns[m])
            out += [st.mean, st.std, st.skewness]
    if "assortativity" in measurements:
        out.append(table.assortativity)
    return out


def book_features(
    tables, book_id="", author="", k_values=None, measurements=ALL_MEASUREMENTS
) -> FeatureVector:
    """Concatenate per-degree blocks in ascending average-degree order."""
    tables = {float(k): t for k, t in tables.items()}
    ks = sorted(tables) if k_values is None else sorted(float(k) for k in k_values)
    missing = [k for k in ks if k not in tables]
    if missing:
        raise MissingDegreeError(f"{book_id}: no measurements for <k> = {', '.join(map(format_k, missing))}")
    values = []
    for k in ks:
        values += _block(tables[k], measurements)
    values = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise ValueError(f"{book_id}: non-finite feature value")
    return FeatureVector(book_id, author, feature_names(ks, measurements), values)


@dataclass
class DatasetMatrix:
    book_ids: list[str]
    authors: list[str]
    feature_names: tuple[str, ...]
    X: np.ndarray
    mean: np.ndarray | None = None
    scale: np.ndarray | None = None

    @classmethod
    def from_vectors(cls, vectors) -> "DatasetMatrix":
        vectors = list(vectors)
        if not vectors:
            raise ValueError("no feature vectors")
        names = vectors[0].names
        for v in vectors[1:]:
            if v.names != names:
                raise ValueError(f"{v.book_id}: feature names differ from {vectors[0].book_id}")
        return cls(
            [v.book_id for v in vectors],
            [v.author for v in vectors],
            tuple(names),
            np.vstack([v.values for v in vectors]),
        )

    @property
    def y(self) -> np.ndarray:
        return np.asarray(self.authors)

    def subset(self, rows) -> "DatasetMatrix":
        rows = list(rows)
        return replace(
            self,
            book_ids=[self.book_ids[i] for i in rows],
            authors=[self.authors[i] for i in rows],
            X=self.X[rows],
        )

    def select_columns(self, prefix: str) -> "DatasetMatrix":
        keep = [i for i, n in enumerate(self.feature_names) if n.startswith(prefix)]
        return replace(self, feature_names=tuple(self.feature_names[i] for i in keep), X=self.X[:, keep])

    def write_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["book_id", "author", *self.feature_names])
            for b, a, row in zip(self.book_ids, self.authors, self.X):
                writer.writerow([b, a, *(repr(float(x)) for x in row)])

    @classmethod
    def read_csv(cls, path) -> "DatasetMatrix":
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            rows = list(reader)
        X = np.asarray([[float(x) for x in r[2:]] for r in rows], dtype=np.float64)
        return cls([r[0] for r in rows], [r[1] for r in rows], tuple(header[2:]), X.reshape(len(rows), -1))


def fit_standardizer(X):
    X = np.asarray(X, dtype=np.float64)
    if X.shape[0] < 2:
        raise ValueError("standardization needs at least two rows")
    mean = X.mean(axis=0)
    scale = X.std(axis=0)
    scale[scale <= 1e-12 * np.maximum(1.0, np.abs(mean))] = 0.0
    return mean, scale


def apply_standardizer(X, mean, scale) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    out = np.zeros_like(X, dtype=np.float64)
    ok = scale > 0
    out[..., ok] = (X[..., ok] - mean[ok]) / scale[ok]
    return out


def standardize(matrix: DatasetMatrix) -> DatasetMatrix:
    """z-score each column; zero-variance columns become all zeros."""
    mean, scale = fit_standardizer(matrix.X)
    return replace(matrix, X=apply_standardizer(matrix.X, mean, scale), mean=mean, scale=scale)
