"""Text-to-network-to-features glue used by the CLI and the experiment scripts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .features import ALL_MEASUREMENTS, book_features
from .mesonet import MesoNetwork, from_similarity, sweep_prune
from .netmeasures import measure_network
from .textproc import TokenizedText, build_windows, preprocess, segment_paragraphs
from .vectorize import cosine_matrix, count_matrix, tfidf_matrix


@dataclass
class BookNetworks:
    text: TokenizedText
    n_windows: int
    weighted: MesoNetwork
    pruned: dict[float, MesoNetwork]


def tokenized_book(body, stopwords, lemmas, book_id="") -> TokenizedText:
    return preprocess(segment_paragraphs(body), stopwords, lemmas, book_id=book_id)


def similarity_matrix(text: TokenizedText, delta: int) -> np.ndarray:
    windows = build_windows(text, delta)
    counts, _ = count_matrix(windows)
    return cosine_matrix(tfidf_matrix(counts))


def book_networks(body, stopwords, lemmas, delta, k_values, book_id="") -> BookNetworks:
    text = tokenized_book(body, stopwords, lemmas, book_id)
    sim = similarity_matrix(text, delta)
    weighted = from_similarity(sim)
    return BookNetworks(text, sim.shape[0], weighted, sweep_prune(weighted, k_values))


def features_from_body(
    body, stopwords, lemmas, delta, k_values, book_id="", author="", measurements=ALL_MEASUREMENTS
):
    nets = book_networks(body, stopwords, lemmas, delta, k_values, book_id)
    tables = {k: measure_network(net) for k, net in nets.pruned.items()}
    return book_features(tables, book_id, author, k_values, measurements)
