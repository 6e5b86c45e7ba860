"""Toy corpora with author-specific narrative flow, for smoke runs and tests.

Each author has a topic-transition habit: ``linear`` authors move steadily
through new topics (chain-like networks), ``returning`` authors revisit
earlier topics, ``episodic`` authors jump between a few recurring ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

_SYLLABLES = [c + v for c in "bcdfghklmnprstvz" for v in "aeiou"]
COMMON = ["the", "and", "of", "to", "a", "in", "was", "he", "it", "that", "his", "her", "with", "had"]


@dataclass(frozen=True)
class AuthorStyle:
    name: str
    flow: str  # linear | returning | episodic
    topic_len: float  # mean paragraphs per topic stay
    para_len: int  # mean words per paragraph
    n_topics: int = 40


def pseudo_words(rng, n):
    words = set()
    while len(words) < n:
        k = int(rng.integers(2, 4))
        words.add("".join(rng.choice(_SYLLABLES, size=k)))
    return sorted(words)


def _topic_sequence(style: AuthorStyle, n_par: int, rng) -> np.ndarray:
    seq = []
    topic = 0
    visited = [0]
    while len(seq) < n_par:
        stay = max(1, int(rng.poisson(style.topic_len)))
        seq += [topic] * stay
        if style.flow == "linear":
            topic = (topic + 1) % style.n_topics
        elif style.flow == "returning":
            topic = int(rng.choice(visited)) if rng.random() < 0.35 else (max(visited) + 1) % style.n_topics
        else:
            topic = int(rng.integers(0, min(style.n_topics, 6)))
        visited.append(topic)
    return np.asarray(seq[:n_par])


def make_book(style: AuthorStyle, n_par: int, seed: int) -> str:
    rng = np.random.default_rng(seed)
    vocab = pseudo_words(rng, style.n_topics * 30 + 200)
    general = vocab[: 200]
    topics = [vocab[200 + 30 * t : 230 + 30 * t] for t in range(style.n_topics)]
    zipf = 1.0 / np.arange(1, 31)
    zipf /= zipf.sum()
    paragraphs = []
    for t in _topic_sequence(style, n_par, rng):
        n = max(5, int(rng.poisson(style.para_len)))
        words = []
        for _ in range(n):
            r = rng.random()
            if r < 0.3:
                words.append(COMMON[int(rng.integers(len(COMMON)))])
            elif r < 0.55:
                words.append(general[int(rng.integers(len(general)))])
            else:
                words.append(topics[t][int(rng.choice(30, p=zipf))])
        text = " ".join(words)
        lines = [text[i : i + 70] for i in range(0, len(text), 70)]
        paragraphs.append("\n".join(lines))
    return "\n\n".join(p.capitalize() + "." for p in paragraphs) + "\n"


DEFAULT_STYLES = (
    AuthorStyle("Linear Author", "linear", 6.0, 40),
    AuthorStyle("Returning Author", "returning", 4.0, 60),
    AuthorStyle("Episodic Author", "episodic", 3.0, 30),
    AuthorStyle("Slow Author", "linear", 14.0, 80),
)


def write_corpus(directory, styles=DEFAULT_STYLES, books_per_author=5, n_par=120, seed=0) -> Path:
    """Write books plus ``manifest.csv`` into ``directory``; returns the manifest path."""
    from .corpus import ManifestEntry, write_manifest

    directory = Path(directory)
    (directory / "books").mkdir(parents=True, exist_ok=True)
    entries = []
    for a, style in enumerate(styles):
        for b in range(books_per_author):
            book_id = f"{style.name.split()[0].lower()}{b + 1}"
            body = make_book(style, n_par + 10 * b, seed=seed * 1000 + a * 100 + b)
            header = f"*** START OF THE PROJECT GUTENBERG EBOOK {book_id.upper()} ***\n\n"
            footer = f"\n*** END OF THE PROJECT GUTENBERG EBOOK {book_id.upper()} ***\n"
            (directory / "books" / f"{book_id}.txt").write_text(header + body + footer, encoding="utf-8")
            entries.append(ManifestEntry(book_id, style.name, f"Book {b + 1}", f"books/{book_id}.txt"))
    path = directory / "manifest.csv"
    write_manifest(entries, path)
    return path
