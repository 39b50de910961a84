"""L2-regularized logistic regression via full-batch gradient descent.

Objective (standardized features, n rows):
    J(w, b) = mean log(1 + exp(-m_i z_i)) + l2 / (2n) * ||w||^2
with z = Xw + b and m = +/-1 labels. Step sizes come from Armijo
backtracking, so no learning-rate tuning is needed.
"""
import numpy as np

from .base import sigmoid

ARMIJO_C = 1e-4
MIN_STEP = 1e-14


def _objective(X, y, l2, w, b):
    z = X @ w + b
    # log(1 + e^z) - y z, stable for large |z|
    return float(np.mean(np.logaddexp(0.0, z) - y * z) + l2 / (2 * X.shape[0]) * w @ w)


def train(X, y, hp) -> dict:
    n, d = X.shape
    w = np.zeros(d)
    b = 0.0
    l2 = hp.logreg_l2
    loss = _objective(X, y, l2, w, b)
    for _ in range(hp.logreg_max_iter):
        p = sigmoid(X @ w + b)
        gw = X.T @ (p - y) / n + (l2 / n) * w
        gb = float(np.mean(p - y))
        grad_sq = float(gw @ gw + gb * gb)
        if np.sqrt(grad_sq) < hp.logreg_tol:
            break
        step = 1.0
        while step > MIN_STEP:
            cand = _objective(X, y, l2, w - step * gw, b - step * gb)
            if cand <= loss - ARMIJO_C * step * grad_sq:
                break
            step *= 0.5
        if step <= MIN_STEP:
            break
        w = w - step * gw
        b = b - step * gb
        loss = _objective(X, y, l2, w, b)
    return {"weights": w, "bias": b}


def score(params, X) -> np.ndarray:
    return sigmoid(X @ np.asarray(params["weights"], dtype=float) + float(params["bias"]))
