"""One-vs-rest linear SVM trained by dual coordinate descent on the hinge loss."""

from __future__ import annotations

import numpy as np

DEFAULT_C = 1.0
DEFAULT_TOL = 1e-4
DEFAULT_MAX_ITER = 10_000


def _check_xy(X, y):
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise ValueError(f"X has shape {X.shape} but y has {y.shape[0]} labels")
    if not np.all(np.isfinite(X)):
        raise ValueError("non-finite feature value")
    labels = sorted(set(y.tolist()))
    if len(labels) < 2:
        raise ValueError("need at least two classes")
    return X, y, labels


def solve_binary(K, t, C=DEFAULT_C, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Dual coordinate descent for min 1/2 |w|^2 + C sum max(0, 1 - t_i w.x_i).

    ``K`` is the Gram matrix of the (bias-augmented) inputs and ``t`` the
    +/-1 targets. Coordinates are swept in index order; the loop stops once
    the duality gap falls below ``tol * max(1, primal)``. Returns
    (alpha, n_epochs, gap).
    """
    n = K.shape[0]
    alpha = np.zeros(n)
    f = np.zeros(n)  # f_i = w . x_i
    diag = np.diag(K).copy()
    Kt = K * t[None, :]
    gap = np.inf
    for epoch in range(1, max_iter + 1):
        for i in range(n):
            if diag[i] <= 0.0:
                continue
            g = t[i] * f[i] - 1.0
            a = alpha[i]
            if (a <= 0.0 and g >= 0.0) or (a >= C and g <= 0.0):
                continue
            new = min(max(a - g / diag[i], 0.0), C)
            if new != a:
                f += (new - a) * Kt[:, i]
                alpha[i] = new
        at = alpha * t
        wnorm2 = float(at @ f)
        primal = 0.5 * wnorm2 + C * float(np.sum(np.maximum(0.0, 1.0 - t * f)))
        dual = float(alpha.sum()) - 0.5 * wnorm2
        gap = primal - dual
        if gap <= tol * max(1.0, abs(primal)):
            return alpha, epoch, gap
    return alpha, max_iter, gap


class LinearSVM:
    kind = "linear_svm"

    def __init__(self, C=DEFAULT_C, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
        self.C = C
        self.tol = tol
        self.max_iter = max_iter

    def fit(self, X, y):
        X, y, labels = _check_xy(X, y)
        self.label_set = labels
        Xa = np.hstack([X, np.ones((X.shape[0], 1))])
        K = Xa @ Xa.T
        coefs = []
        self.n_iter_ = []
        # with two classes the second one-vs-rest problem is the first one negated
        for label in labels[:1] if len(labels) == 2 else labels:
            t = np.where(y == label, 1.0, -1.0)
            alpha, epochs, _ = solve_binary(K, t, self.C, self.tol, self.max_iter)
            coefs.append(Xa.T @ (alpha * t))
            self.n_iter_.append(epochs)
        W = np.vstack(coefs)
        self.coef_ = W[:, :-1]
        self.intercept_ = W[:, -1]
        if len(labels) == 2:
            self.coef_ = np.vstack([self.coef_[0], -self.coef_[0]])
            self.intercept_ = np.array([self.intercept_[0], -self.intercept_[0]])
        return self

    def decision_function(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        return X @ self.coef_.T + self.intercept_

    def predict(self, X):
        # argmax returns the first maximum, i.e. the lexicographically smaller label
        idx = np.argmax(self.decision_function(X), axis=1)
        return np.asarray(self.label_set, dtype=object)[idx]


def train_linear_svm(X, y, c_param=DEFAULT_C, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> LinearSVM:
    return LinearSVM(C=c_param, tol=tol, max_iter=max_iter).fit(X, y)
