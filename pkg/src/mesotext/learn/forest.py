"""Random forest of Gini-split decision trees with name-keyed feature sampling.

Per-node candidate features are chosen by hashing (seed, tree, node path,
feature name), so reordering the columns (with their names) leaves every
tree unchanged.
"""

from __future__ import annotations

import hashlib
import math

import numpy as np

DEFAULT_TREES = 50

_M64 = np.uint64(0xFFFFFFFFFFFFFFFF)


def _stable_hash(text: str) -> int:
    return int.from_bytes(hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest(), "little")


def _mix(x: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer on uint64 arrays (wrapping arithmetic)."""
    x = np.asarray(x, dtype=np.uint64)
    with np.errstate(over="ignore"):
        x = x + np.uint64(0x9E3779B97F4A7C15)
        x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        x = x ^ (x >> np.uint64(31))
    return x


def _child_key(key: int, side: int) -> int:
    return int(_mix(np.array([key ^ (side + 1)], dtype=np.uint64))[0])


def _best_split(x, onehot, n_classes):
    """Lowest weighted Gini impurity over thresholds of one feature.

    Returns (impurity, threshold) or None when the feature is constant.
    """
    order = np.argsort(x, kind="stable")
    xs = x[order]
    valid = xs[1:] > xs[:-1]
    if not np.any(valid):
        return None
    cum = np.cumsum(onehot[order], axis=0)[:-1]
    total = cum[-1] + onehot[order[-1]]
    n = len(x)
    nl = np.arange(1, n, dtype=np.float64)
    nr = n - nl
    right = total - cum
    gl = 1.0 - np.sum(cum * cum, axis=1) / (nl * nl)
    gr = 1.0 - np.sum(right * right, axis=1) / (nr * nr)
    imp = (nl * gl + nr * gr) / n
    imp = np.where(valid, imp, np.inf)
    pos = int(np.argmin(imp))
    lo, hi = float(xs[pos]), float(xs[pos + 1])
    mid = 0.5 * (lo + hi)
    return float(imp[pos]), mid if mid < hi else lo


class DecisionTree:
    def __init__(self, max_features, tree_key, feature_keys, feature_names, n_classes):
        self.max_features = max_features
        self.tree_key = tree_key
        self.feature_keys = feature_keys
        self.feature_names = feature_names
        self.n_classes = n_classes

    def fit(self, X, yi):
        self.feature = []
        self.threshold = []
        self.left = []
        self.right = []
        self.value = []
        onehot = np.eye(self.n_classes)[yi]
        stack = [(np.arange(len(yi)), self.tree_key, None, 0)]
        while stack:
            idx, key, parent, side = stack.pop()
            node = len(self.feature)
            counts = onehot[idx].sum(axis=0)
            self.feature.append(-1)
            self.threshold.append(0.0)
            self.left.append(-1)
            self.right.append(-1)
            self.value.append(counts)
            if parent is not None:
                (self.left if side == 0 else self.right)[parent] = node
            if len(idx) < 2 or np.count_nonzero(counts) < 2:
                continue
            split = self._split(X[idx], onehot[idx], key)
            if split is None:
                continue
            f, thr = split
            self.feature[node] = f
            self.threshold[node] = thr
            go_left = X[idx, f] <= thr
            stack.append((idx[~go_left], _child_key(key, 1), node, 1))
            stack.append((idx[go_left], _child_key(key, 0), node, 0))
        self.feature = np.asarray(self.feature)
        self.threshold = np.asarray(self.threshold)
        self.left = np.asarray(self.left)
        self.right = np.asarray(self.right)
        self.value = np.asarray(self.value)
        return self

    def _split(self, Xn, onehot, key):
        prio = _mix(self.feature_keys ^ np.uint64(key))
        # ties in the hash are vanishingly rare; break them by name
        order = sorted(range(len(prio)), key=lambda f: (int(prio[f]), self.feature_names[f]))
        best = None
        for start in range(0, len(order), self.max_features):
            for f in order[start : start + self.max_features]:
                res = _best_split(Xn[:, f], onehot, self.n_classes)
                if res is None:
                    continue
                cand = (res[0], self.feature_names[f], res[1], f)
                if best is None or cand[:3] < best[:3]:
                    best = cand
            if best is not None:
                return best[3], best[2]
        return None

    def predict_counts(self, X):
        node = np.zeros(X.shape[0], dtype=np.int64)
        while True:
            f = self.feature[node]
            inner = f >= 0
            if not np.any(inner):
                return self.value[node]
            rows = np.nonzero(inner)[0]
            go_left = X[rows, f[inner]] <= self.threshold[node[inner]]
            node[rows] = np.where(go_left, self.left[node[inner]], self.right[node[inner]])


class RandomForest:
    kind = "random_forest"

    def __init__(self, n_trees=DEFAULT_TREES, seed=0, feature_names=None):
        self.n_trees = n_trees
        self.seed = seed
        self.feature_names = feature_names

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y)
        if not np.all(np.isfinite(X)):
            raise ValueError("non-finite feature value")
        labels = sorted(set(y.tolist()))
        if len(labels) < 2:
            raise ValueError("need at least two classes")
        self.label_set = labels
        names = list(self.feature_names) if self.feature_names is not None else [f"f{i}" for i in range(X.shape[1])]
        if len(names) != X.shape[1]:
            raise ValueError(f"{len(names)} feature names for {X.shape[1]} columns")
        keys = np.array([_stable_hash(n) for n in names], dtype=np.uint64)
        max_features = max(1, int(math.isqrt(X.shape[1])))
        lookup = {lab: i for i, lab in enumerate(labels)}
        yi = np.array([lookup[v] for v in y.tolist()])
        n = len(yi)
        self.trees = []
        for t in range(self.n_trees):
            rng = np.random.default_rng([self.seed, t])
            sample = rng.integers(0, n, size=n)
            tree_key = _stable_hash(f"{self.seed}/{t}")
            tree = DecisionTree(max_features, tree_key, keys, names, len(labels))
            self.trees.append(tree.fit(X[sample], yi[sample]))
        return self

    def predict(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        votes = np.zeros((X.shape[0], len(self.label_set)))
        for tree in self.trees:
            # each tree votes for its leaf majority, ties to the smaller label
            winner = np.argmax(tree.predict_counts(X), axis=1)
            votes[np.arange(X.shape[0]), winner] += 1
        return np.asarray(self.label_set, dtype=object)[np.argmax(votes, axis=1)]


def train_random_forest(X, y, n_trees=DEFAULT_TREES, seed=0, feature_names=None) -> RandomForest:
    return RandomForest(n_trees=n_trees, seed=seed, feature_names=feature_names).fit(X, y)
