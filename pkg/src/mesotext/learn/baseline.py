"""Relative frequencies of the corpus-wide most frequent words."""

from __future__ import annotations

from collections import Counter

import numpy as np

from ..features import DatasetMatrix
from ..textproc import tokenize


def frequent_words_features(raw_texts, top_n: int = 20) -> DatasetMatrix:
    """``raw_texts``: iterable of (book_id, author, text) on unprocessed text."""
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    books = [(b, a, Counter(tokenize(t))) for b, a, t in raw_texts]
    total = Counter()
    for _, _, c in books:
        total.update(c)
    if not total:
        raise ValueError("empty corpus")
    vocab = [w for w, _ in sorted(total.items(), key=lambda kv: (-kv[1], kv[0]))[:top_n]]
    X = np.zeros((len(books), len(vocab)))
    for r, (_, _, c) in enumerate(books):
        n = sum(c.values())
        if n:
            X[r] = [c[w] / n for w in vocab]
    return DatasetMatrix(
        [b for b, _, _ in books], [a for _, a, _ in books], tuple(f"freq:{w}" for w in vocab), X
    )
