"""Node-level topological measurements on pruned window networks.

All per-node quantities are computed from a CSR adjacency. Accessibility
enumerates self-avoiding walks exactly; concentric symmetry runs an outward
level-to-level walk on the backbone or merged neighbourhood pattern.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .mesonet import MesoNetwork

ACCESSIBILITY_H = (2, 3)
SYMMETRY_H = (2, 3, 4)
SYMMETRY_VARIANTS = ("backbone", "merged")

NODE_MEASURES = (
    "degree",
    "avg_neighbor_degree",
    "clustering",
    *(f"accessibility_h{h}" for h in ACCESSIBILITY_H),
    *(f"symmetry_{v}_h{h}" for v in SYMMETRY_VARIANTS for h in SYMMETRY_H),
)

_ZERO_TOL = 1e-14


@dataclass(frozen=True)
class DistributionStats:
    mean: float
    std: float
    skewness: float


def aggregate(values) -> DistributionStats:
    """Population mean, standard deviation and third standardized moment."""
    x = np.asarray(values, dtype=np.float64).ravel()
    if x.size == 0:
        raise ValueError("cannot aggregate an empty distribution")
    mean = float(np.mean(x))
    dev = x - mean
    var = float(np.mean(dev * dev))
    std = math.sqrt(var)
    scale = max(1.0, float(np.max(np.abs(x))))
    if std <= 1e-12 * scale:
        return DistributionStats(mean, 0.0, 0.0)
    skew = float(np.mean(dev**3)) / std**3
    return DistributionStats(mean, std, skew)


class Graph:
    """Undirected simple graph stored as sorted CSR arrays."""

    def __init__(self, adjacency):
        a = sp.csr_matrix(adjacency, dtype=np.float64)
        a = a.maximum(a.T).tocsr()
        a.setdiag(0)
        a.eliminate_zeros()
        a.data[:] = 1.0
        a.sort_indices()
        self.adj = a
        self.n = a.shape[0]
        self.indptr = a.indptr.astype(np.int64)
        self.indices = a.indices.astype(np.int64)
        self.deg = np.diff(self.indptr)
        rows = np.repeat(np.arange(self.n, dtype=np.int64), self.deg)
        self._keys = rows * self.n + self.indices
        self._level = np.full(self.n, -1, dtype=np.int64)
        self._pos = np.zeros(self.n, dtype=np.int64)

    @classmethod
    def of(cls, net) -> "Graph":
        if isinstance(net, Graph):
            return net
        if isinstance(net, MesoNetwork):
            return cls(net.adjacency())
        return cls(net)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def expand(self, nodes: np.ndarray):
        """Flattened neighbour lists: (position in ``nodes``, neighbour id)."""
        nodes = np.asarray(nodes, dtype=np.int64)
        counts = self.deg[nodes]
        total = int(counts.sum())
        rep = np.repeat(np.arange(len(nodes), dtype=np.int64), counts)
        offs = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
        nbr = self.indices[np.repeat(self.indptr[nodes], counts) + offs]
        return rep, nbr

    def adjacent(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        key = np.asarray(a, dtype=np.int64) * self.n + np.asarray(b, dtype=np.int64)
        pos = np.searchsorted(self._keys, key)
        pos = np.minimum(pos, len(self._keys) - 1)
        if len(self._keys) == 0:
            return np.zeros(key.shape, dtype=bool)
        return self._keys[pos] == key

    def levels(self, node: int, h_max: int) -> list[np.ndarray]:
        """Nodes at shortest-path distance exactly 0..h_max (sorted arrays)."""
        out = self._bfs(node, h_max)
        self._reset(out)
        return out

    def _bfs(self, node, h_max):
        level = self._level
        levels = [np.array([node], dtype=np.int64)]
        level[node] = 0
        for ell in range(1, h_max + 1):
            _, nbr = self.expand(levels[-1])
            new = np.unique(nbr[level[nbr] < 0])
            level[new] = ell
            levels.append(new)
        return levels

    def _reset(self, levels):
        for lv in levels:
            self._level[lv] = -1


def _entropy_exp(p: np.ndarray) -> float:
    p = p[p > 0]
    p = p / p.sum()
    return float(np.exp(-np.sum(p * np.log(p))))


def degrees(net) -> np.ndarray:
    return Graph.of(net).deg.astype(np.float64)


def degree_stats(net) -> DistributionStats:
    return aggregate(degrees(net))


def avg_neighbor_degree(net, node: int) -> float:
    g = Graph.of(net)
    nb = g.neighbors(node)
    if nb.size == 0:
        return 0.0
    return float(np.mean(g.deg[nb]))


def all_avg_neighbor_degree(g: Graph) -> np.ndarray:
    deg = g.deg.astype(np.float64)
    total = g.adj @ deg
    return np.divide(total, deg, out=np.zeros_like(total), where=deg > 0)


def assortativity(net, return_flag: bool = False):
    """Pearson correlation of endpoint degrees, each edge taken in both directions.

    Returns 0 when the endpoint degrees have no variance (flagged when
    ``return_flag`` is set).
    """
    g = Graph.of(net)
    rows = np.repeat(np.arange(g.n), g.deg)
    x = g.deg[rows].astype(np.float64)
    y = g.deg[g.indices].astype(np.float64)
    if x.size == 0:
        raise ValueError("assortativity needs at least one edge")
    xc = x - x.mean()
    yc = y - y.mean()
    var = float(np.sqrt(np.sum(xc * xc) * np.sum(yc * yc)))
    if var <= 1e-12 * x.size:
        return (0.0, True) if return_flag else 0.0
    r = float(np.sum(xc * yc) / var)
    r = min(1.0, max(-1.0, r))
    return (r, False) if return_flag else r


def clustering(net, node: int) -> float:
    g = Graph.of(net)
    nb = g.neighbors(node)
    d = nb.size
    if d < 2:
        return 0.0
    a, b = np.triu_indices(d, k=1)
    links = int(np.count_nonzero(g.adjacent(nb[a], nb[b])))
    return links / (d * (d - 1) / 2)


def all_clustering(g: Graph) -> np.ndarray:
    tri = np.asarray((g.adj @ g.adj).multiply(g.adj).sum(axis=1)).ravel() / 2.0
    deg = g.deg.astype(np.float64)
    pairs = deg * (deg - 1) / 2.0
    return np.divide(tri, pairs, out=np.zeros_like(tri), where=deg >= 2)


def concentric_levels(net, node: int, h_max: int) -> list[set[int]]:
    return [set(map(int, lv)) for lv in Graph.of(net).levels(node, h_max)]


def saw_endpoints(net, node: int, h: int) -> np.ndarray:
    """Probability mass of h-step self-avoiding walks ending at each node.

    The walker picks uniformly among unvisited neighbours; mass of walks that
    get stuck early is dropped, so the result sums to the completed mass.
    """
    g = Graph.of(net)
    mass = np.zeros(g.n)
    if h < 1 or g.deg[node] == 0:
        return mass
    paths = np.array([[node]], dtype=np.int64)
    w = np.ones(1)
    for _ in range(h - 1):
        rep, nbr = g.expand(paths[:, -1])
        ok = np.ones(nbr.shape, dtype=bool)
        for t in range(paths.shape[1]):
            ok &= nbr != paths[rep, t]
        rep, nbr = rep[ok], nbr[ok]
        choices = np.bincount(rep, minlength=len(paths))
        if rep.size == 0:
            return mass
        w = w[rep] / choices[rep]
        paths = np.column_stack([paths[rep], nbr])
    last = paths[:, -1]
    steps = paths.shape[1]
    blocked = np.zeros(len(paths), dtype=np.int64)
    hits = []
    for t in range(steps - 1):
        hit = np.ones(len(paths), dtype=bool) if t == steps - 2 else g.adjacent(last, paths[:, t])
        hits.append(hit)
        blocked += hit
    choices = g.deg[last] - blocked
    live = choices > 0
    u = np.zeros(len(paths))
    u[live] = w[live] / choices[live]
    mass = g.adj @ np.bincount(last, weights=u, minlength=g.n)
    for t, hit in enumerate(hits):
        mass -= np.bincount(paths[:, t], weights=u * hit, minlength=g.n)
    mass[mass < _ZERO_TOL] = 0.0
    return mass


def accessibility(net, node: int, h: int) -> float:
    """exp of the Shannon entropy of the h-step self-avoiding walk endpoints (0 if none)."""
    mass = saw_endpoints(net, node, h)
    if not np.any(mass > 0):
        return 0.0
    return _entropy_exp(mass)


def _outward_walk(g: Graph, levels, variant: str):
    """Masses reaching each level and dead-end masses per level for one root."""
    level = g._level
    h_max = len(levels) - 1
    groups = []  # per level: group id per node (merged components or identity)
    for ell, nodes in enumerate(levels):
        if variant == "merged" and nodes.size > 1:
            g._pos[nodes] = np.arange(nodes.size)
            rep, nbr = g.expand(nodes)
            intra = level[nbr] == ell
            sub = sp.csr_matrix(
                (np.ones(int(intra.sum())), (rep[intra], g._pos[nbr[intra]])),
                shape=(nodes.size, nodes.size),
            )
            _, comp = connected_components(sub, directed=False)
            groups.append(comp.astype(np.int64))
        else:
            groups.append(np.arange(nodes.size, dtype=np.int64))
    mass = np.ones(1)
    level_mass = [mass]
    dead = []
    for ell in range(h_max):
        nodes, nxt = levels[ell], levels[ell + 1]
        n_src = int(groups[ell].max()) + 1 if nodes.size else 0
        n_dst = int(groups[ell + 1].max()) + 1 if nxt.size else 0
        g._pos[nxt] = np.arange(nxt.size)
        rep, nbr = g.expand(nodes)
        out = level[nbr] == ell + 1
        src = groups[ell][rep[out]]
        dst = groups[ell + 1][g._pos[nbr[out]]]
        links = np.unique(src * max(n_dst, 1) + dst)
        src, dst = links // max(n_dst, 1), links % max(n_dst, 1)
        outdeg = np.bincount(src, minlength=n_src)
        dead.append(mass[outdeg == 0])
        nxt_mass = np.bincount(dst, weights=mass[src] / outdeg[src], minlength=n_dst)
        level_mass.append(nxt_mass)
        mass = nxt_mass
    return level_mass, dead


def _symmetry_from_walk(level_mass, dead, h: int) -> float:
    parts = [level_mass[h]] + dead[:h]
    p = np.concatenate(parts)
    n_states = p.size
    if n_states == 0 or not np.any(p > 0):
        return 0.0
    return min(1.0, _entropy_exp(p) / n_states)


def _node_symmetries(g: Graph, node: int, hs=SYMMETRY_H) -> dict[tuple[str, int], float]:
    h_max = max(hs)
    if g.deg[node] == 0:
        return {(v, h): 0.0 for v in SYMMETRY_VARIANTS for h in hs}
    levels = g._bfs(node, h_max)
    try:
        out = {}
        for variant in SYMMETRY_VARIANTS:
            level_mass, dead = _outward_walk(g, levels, variant)
            for h in hs:
                out[(variant, h)] = _symmetry_from_walk(level_mass, dead, h)
        return out
    finally:
        g._reset(levels)


def symmetry(net, node: int, h: int, variant: str = "backbone") -> float:
    """Concentric symmetry of ``node`` at distance ``h``, in (0, 1].

    The outward walk spreads probability uniformly over links to the next
    level; nodes without such links absorb their mass. The result is the
    exponential entropy of the final distribution (level-h nodes plus
    dead ends) divided by its number of states.
    """
    if variant not in SYMMETRY_VARIANTS:
        raise ValueError(f"unknown symmetry variant {variant!r}")
    return _node_symmetries(Graph.of(net), node, (h,))[(variant, h)]


@dataclass
class NodeMeasureTable:
    columns: dict[str, np.ndarray]
    assortativity: float
    assortativity_degenerate: bool = False
    isolated: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=bool))

    @property
    def node_count(self) -> int:
        return len(self.columns["degree"])

    def write(self, csv_path, scalars_path=None) -> None:
        csv_path = Path(csv_path)
        with open(csv_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["node", *self.columns, "isolated"])
            for i in range(self.node_count):
                writer.writerow(
                    [i, *(repr(float(self.columns[c][i])) for c in self.columns), int(self.isolated[i])]
                )
        if scalars_path is None:
            scalars_path = csv_path.with_suffix(".graph.txt")
        Path(scalars_path).write_text(
            f"assortativity={self.assortativity!r}\n"
            f"assortativity_degenerate={int(self.assortativity_degenerate)}\n"
            f"nodes={self.node_count}\n"
            f"isolated={int(self.isolated.sum())}\n",
            encoding="utf-8",
        )

    @classmethod
    def read(cls, csv_path, scalars_path=None) -> "NodeMeasureTable":
        csv_path = Path(csv_path)
        if scalars_path is None:
            scalars_path = csv_path.with_suffix(".graph.txt")
        with open(csv_path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            rows = [list(map(float, r)) for r in reader]
        arr = np.asarray(rows, dtype=np.float64).reshape(-1, len(header))
        names = header[1:-1]
        scalars = dict(
            line.split("=", 1) for line in Path(scalars_path).read_text("utf-8").splitlines() if "=" in line
        )
        return cls(
            columns={n: arr[:, k + 1] for k, n in enumerate(names)},
            assortativity=float(scalars["assortativity"]),
            assortativity_degenerate=bool(int(scalars.get("assortativity_degenerate", "0"))),
            isolated=arr[:, -1].astype(bool),
        )


def measure_network(net) -> NodeMeasureTable:
    """Every per-node measurement plus assortativity for one pruned network."""
    g = Graph.of(net)
    cols = {
        "degree": g.deg.astype(np.float64),
        "avg_neighbor_degree": all_avg_neighbor_degree(g),
        "clustering": all_clustering(g),
    }
    for h in ACCESSIBILITY_H:
        cols[f"accessibility_h{h}"] = np.array([accessibility(g, v, h) for v in range(g.n)])
    sym = {(v, h): np.zeros(g.n) for v in SYMMETRY_VARIANTS for h in SYMMETRY_H}
    for node in range(g.n):
        for key, val in _node_symmetries(g, node).items():
            sym[key][node] = val
    for v in SYMMETRY_VARIANTS:
        for h in SYMMETRY_H:
            cols[f"symmetry_{v}_h{h}"] = sym[(v, h)]
    if g.adj.nnz:
        r, degenerate = assortativity(g, return_flag=True)
    else:
        r, degenerate = 0.0, True
    return NodeMeasureTable(
        columns={name: cols[name] for name in NODE_MEASURES},
        assortativity=r,
        assortativity_degenerate=degenerate,
        isolated=g.deg == 0,
    )
