"""Leave-one-out evaluation and the author-pair accuracy matrix."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from itertools import combinations

import numpy as np

from ..features import apply_standardizer, fit_standardizer
from .forest import DEFAULT_TREES, train_random_forest
from .svm import DEFAULT_C, train_linear_svm

CLASSIFIERS = ("svm", "rf")


def make_trainer(kind: str, seed: int = 0, feature_names=None, c_param=DEFAULT_C, n_trees=DEFAULT_TREES):
    if kind == "svm":
        return partial(train_linear_svm, c_param=c_param)
    if kind == "rf":
        names = tuple(feature_names) if feature_names is not None else None
        return partial(train_random_forest, n_trees=n_trees, seed=seed, feature_names=names)
    raise ValueError(f"unknown classifier {kind!r}")


@dataclass
class EvalReport:
    labels: list[str]
    confusion: np.ndarray
    per_fold: list[tuple[str, str, str]] = field(default_factory=list)

    @property
    def accuracy(self) -> float:
        total = self.confusion.sum()
        return float(np.trace(self.confusion) / total) if total else 0.0

    def confusion_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["true\\predicted", *self.labels])
        for lab, row in zip(self.labels, self.confusion):
            writer.writerow([lab, *map(int, row)])
        return buf.getvalue()

    def to_text(self, title: str = "") -> str:
        lines = [title] if title else []
        lines.append(f"accuracy: {self.accuracy:.4f} ({int(np.trace(self.confusion))}/{int(self.confusion.sum())})")
        lines.append(f"chance: {1.0 / len(self.labels):.4f}")
        lines.append("folds (book_id, true, predicted):")
        lines += [f"  {b}\t{t}\t{p}" for b, t, p in self.per_fold]
        return "\n".join(lines) + "\n"


def _fold(i, X, y, trainer, standardize):
    train = np.ones(len(y), dtype=bool)
    train[i] = False
    Xtr, Xte = X[train], X[i : i + 1]
    if standardize:
        mean, scale = fit_standardizer(Xtr)
        Xtr = apply_standardizer(Xtr, mean, scale)
        Xte = apply_standardizer(Xte, mean, scale)
    model = trainer(Xtr, y[train])
    return str(model.predict(Xte)[0])


def loocv(X, y, trainer, book_ids=None, standardize=True, jobs: int = 1) -> EvalReport:
    """Hold out each row once; scaling is fitted on the remaining rows only."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray([str(v) for v in y], dtype=object)
    if len(y) < 2:
        raise ValueError("leave-one-out needs at least two rows")
    book_ids = list(book_ids) if book_ids is not None else [str(i) for i in range(len(y))]
    fold = partial(_fold, X=X, y=y, trainer=trainer, standardize=standardize)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            preds = list(pool.map(fold, range(len(y))))
    else:
        preds = [fold(i) for i in range(len(y))]
    labels = sorted(set(y.tolist()) | set(preds))
    pos = {lab: k for k, lab in enumerate(labels)}
    confusion = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for t, p in zip(y, preds):
        confusion[pos[t], pos[p]] += 1
    return EvalReport(labels, confusion, list(zip(book_ids, y.tolist(), preds)))


def pairwise_matrix(dataset, trainer, jobs: int = 1):
    """LOOCV accuracy for every unordered author pair; NaN on the diagonal.

    ``dataset`` is a DatasetMatrix. Returns (authors, matrix).
    """
    authors = sorted(set(dataset.authors))
    if len(authors) < 2:
        raise ValueError("need at least two authors")
    y = np.asarray(dataset.authors)
    out = np.full((len(authors), len(authors)), np.nan)
    for (a, ia), (b, ib) in combinations(list(zip(authors, range(len(authors)))), 2):
        rows = np.nonzero((y == a) | (y == b))[0]
        rep = loocv(dataset.X[rows], y[rows], trainer, jobs=jobs)
        out[ia, ib] = out[ib, ia] = rep.accuracy
    return authors, out


def pairwise_csv(authors, matrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["author", *authors])
    for a, row in zip(authors, matrix):
        writer.writerow([a, *("" if np.isnan(v) else f"{v:.6f}" for v in row)])
    return buf.getvalue()
