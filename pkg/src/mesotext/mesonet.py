"""Complete weighted window networks and pruning to a target average degree."""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .vectorize import cosine_matrix, vectors_to_matrix

DEFAULT_K_VALUES = tuple(float(k) for k in range(5, 51, 5))


class NetworkError(ValueError):
    pass


@dataclass
class MesoNetwork:
    node_count: int
    edges: np.ndarray  # (E, 2) int, i < j
    weights: np.ndarray | None = None
    pruned: bool = False
    target_k: float | None = None

    @property
    def edge_count(self) -> int:
        return int(self.edges.shape[0])

    @property
    def average_degree(self) -> float:
        return 2.0 * self.edge_count / self.node_count if self.node_count else 0.0

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(i), int(j)) for i, j in self.edges}

    def adjacency(self) -> sp.csr_matrix:
        n = self.node_count
        i, j = self.edges[:, 0], self.edges[:, 1]
        data = np.ones(2 * len(i), dtype=np.float64)
        a = sp.csr_matrix((data, (np.concatenate([i, j]), np.concatenate([j, i]))), shape=(n, n))
        a.sum_duplicates()
        a.sort_indices()
        return a


def from_similarity(sim: np.ndarray) -> MesoNetwork:
    n = sim.shape[0]
    if n < 2:
        raise NetworkError(f"need at least two nodes, got {n}")
    iu, ju = np.triu_indices(n, k=1)
    return MesoNetwork(n, np.column_stack([iu, ju]), np.asarray(sim[iu, ju], dtype=np.float64))


def build_weighted(vectors) -> MesoNetwork:
    """Complete graph over windows weighted by tf-idf cosine similarity.

    Accepts a list of TermWeightVector or a window-by-term sparse weight matrix.
    """
    if sp.issparse(vectors):
        weights = vectors
    else:
        vectors = list(vectors)
        if len(vectors) < 2:
            raise NetworkError(f"need at least two nodes, got {len(vectors)}")
        weights = vectors_to_matrix(vectors)
    return from_similarity(cosine_matrix(weights))


def edges_for_degree(k: float, n: int) -> int:
    return int(np.floor(k * n / 2.0 + 1e-9))


def _rank_edges(net: MesoNetwork) -> np.ndarray:
    if net.pruned or net.weights is None:
        raise NetworkError("pruning needs the complete weighted network")
    # weight descending, then (i, j) ascending
    return np.lexsort((net.edges[:, 1], net.edges[:, 0], -net.weights))


def _check_k(k: float, n: int) -> None:
    if not (0 < k < n - 1):
        raise NetworkError(f"infeasible average degree {k} for N={n} (need 0 < k < {n - 1})")


def _take(net: MesoNetwork, order: np.ndarray, k: float) -> MesoNetwork:
    kept = net.edges[order[: edges_for_degree(k, net.node_count)]]
    kept = kept[np.lexsort((kept[:, 1], kept[:, 0]))]
    return MesoNetwork(net.node_count, kept, None, pruned=True, target_k=float(k))


def prune_to_avg_degree(net: MesoNetwork, k_target: float) -> MesoNetwork:
    """Keep the floor(k N / 2) heaviest edges and drop weights."""
    _check_k(k_target, net.node_count)
    return _take(net, _rank_edges(net), k_target)


def sweep_prune(net: MesoNetwork, k_values) -> dict[float, MesoNetwork]:
    k_values = list(k_values)
    if not k_values:
        return {}
    for k in k_values:
        _check_k(k, net.node_count)
    order = _rank_edges(net)
    return {float(k): _take(net, order, k) for k in k_values}


def format_k(k: float) -> str:
    return f"{k:g}"


def write_edgelist(net: MesoNetwork, path) -> None:
    buf = io.StringIO()
    buf.write(f"# nodes={net.node_count}")
    if net.target_k is not None:
        buf.write(f" target_k={format_k(net.target_k)} achieved_k={net.average_degree:.6f}")
    buf.write("\n")
    if net.weights is None:
        for i, j in net.edges:
            buf.write(f"{i} {j}\n")
    else:
        for (i, j), w in zip(net.edges, net.weights):
            buf.write(f"{i} {j} {w:.12g}\n")
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def read_edgelist(path) -> MesoNetwork:
    n = None
    target_k = None
    edges, weights = [], []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for token in line[1:].split():
                    key, _, val = token.partition("=")
                    if key == "nodes":
                        n = int(val)
                    elif key == "target_k":
                        target_k = float(val)
                continue
            parts = line.split()
            edges.append((int(parts[0]), int(parts[1])))
            if len(parts) > 2:
                weights.append(float(parts[2]))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    w = np.asarray(weights) if weights else None
    return MesoNetwork(n, arr, w, pruned=w is None, target_k=target_k)


def write_graphml(net: MesoNetwork, path) -> None:
    import networkx as nx

    g = nx.Graph()
    for v in range(net.node_count):
        g.add_node(v, order=v)
    if net.weights is None:
        g.add_edges_from((int(i), int(j)) for i, j in net.edges)
    else:
        g.add_weighted_edges_from((int(i), int(j), float(w)) for (i, j), w in zip(net.edges, net.weights))
    nx.write_graphml(g, path)
