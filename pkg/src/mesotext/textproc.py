"""Paragraph segmentation, stopword removal, lemmatization and sliding windows."""

from __future__ import annotations

import gzip
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

DEFAULT_DELTA = 20

_BLANK_SPLIT = re.compile(r"\n[ \t\f\v]*\n")
# maximal letter runs, apostrophes allowed between letters
_TOKEN_RE = re.compile(r"[^\W\d_]+(?:'[^\W\d_]+)*")


class TooFewParagraphsError(ValueError):
    pass


@dataclass(frozen=True)
class TokenizedText:
    book_id: str
    paragraphs: tuple[tuple[str, ...], ...]

    def __len__(self):
        return len(self.paragraphs)


@dataclass(frozen=True)
class Window:
    index: int
    delta: int
    terms: Counter

    @property
    def length(self) -> int:
        return sum(self.terms.values())


def segment_paragraphs(body: str) -> list[str]:
    body = body.replace("\r\n", "\n").replace("\r", "\n")
    out = []
    for block in _BLANK_SPLIT.split(body):
        joined = " ".join(line.strip() for line in block.split("\n") if line.strip())
        if joined:
            out.append(joined)
    return out


def tokenize(text: str) -> list[str]:
    text = text.replace("’", "'").replace("‘", "'").lower()
    return _TOKEN_RE.findall(text)


def preprocess(paragraphs, stopwords, lemma_table, book_id: str = "") -> TokenizedText:
    """Tokenize, drop stopwords, then map through ``lemma_table`` (identity fallback).

    Paragraphs left without any token are dropped.
    """
    kept = []
    for para in paragraphs:
        lemmas = tuple(lemma_table.get(tok, tok) for tok in tokenize(para) if tok not in stopwords)
        if lemmas:
            kept.append(lemmas)
    return TokenizedText(book_id=book_id, paragraphs=tuple(kept))


def build_windows(text: TokenizedText, delta: int = DEFAULT_DELTA) -> list[Window]:
    if delta < 1:
        raise ValueError(f"delta must be >= 1, got {delta}")
    n_par = len(text.paragraphs)
    if n_par < delta:
        raise TooFewParagraphsError(
            f"{text.book_id or 'text'}: {n_par} paragraphs, need at least delta={delta}"
        )
    counts = [Counter(p) for p in text.paragraphs]
    windows = []
    running = Counter()
    for c in counts[:delta]:
        running.update(c)
    windows.append(Window(0, delta, Counter(running)))
    for i in range(1, n_par - delta + 1):
        running.subtract(counts[i - 1])
        running.update(counts[i + delta - 1])
        windows.append(Window(i, delta, Counter({t: n for t, n in running.items() if n > 0})))
    return windows


def load_stopwords(path=None) -> frozenset[str]:
    """One lowercase word per line; the bundled English list when ``path`` is None."""
    if path is None:
        text = resources.files("mesotext.data").joinpath("stopwords_en.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip() and not w.startswith("#"))


def _parse_lemma_lines(lines) -> dict[str, str]:
    table = {}
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"lemma table line {lineno}: expected 'inflected<TAB>lemma'")
        table[parts[0].lower()] = parts[1].lower()
    return table


@lru_cache(maxsize=1)
def _bundled_lemmas() -> dict[str, str]:
    raw = resources.files("mesotext.data").joinpath("lemmas_en.tsv.gz").read_bytes()
    return _parse_lemma_lines(gzip.decompress(raw).decode("utf-8").splitlines())


def load_lemma_table(path=None) -> dict[str, str]:
    """``inflected<TAB>lemma`` per line (plain or .gz); bundled English table by default."""
    if path is None:
        return dict(_bundled_lemmas())
    path = Path(path)
    if path.suffix == ".gz":
        with gzip.open(path, "rt", encoding="utf-8") as fh:
            return _parse_lemma_lines(fh)
    with open(path, encoding="utf-8") as fh:
        return _parse_lemma_lines(fh)
