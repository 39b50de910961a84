"""RBF-kernel support vector machine trained by sequential minimal optimization.

The simplified SMO of Platt: sweep the training rows, pair each
KKT-violating multiplier with a random partner, and solve the
two-variable subproblem analytically. An error cache keeps each update
O(n). Margins are squashed through a logistic so scores live in [0, 1]
and the 0.5 threshold coincides with the sign of the margin.
"""
import numpy as np

from .base import sigmoid

ALPHA_EPS = 1e-8
MIN_ALPHA_STEP = 1e-5


def _rbf_kernel(A, B, gamma):
    sq = (
        np.sum(A * A, axis=1)[:, None]
        + np.sum(B * B, axis=1)[None, :]
        - 2.0 * (A @ B.T)
    )
    return np.exp(-gamma * np.maximum(sq, 0.0))


def train(X, y, hp) -> dict:
    n = X.shape[0]
    gamma = hp.svm_gamma if hp.svm_gamma is not None else 1.0 / X.shape[1]
    c = hp.svm_c
    tol = hp.svm_tol
    sign = 2.0 * y - 1.0  # {0,1} -> {-1,+1}
    K = _rbf_kernel(X, X, gamma)

    rng = np.random.Generator(np.random.PCG64(hp.seed & 0xFFFFFFFFFFFFFFFF))
    alpha = np.zeros(n)
    b = 0.0
    errors = -sign.copy()  # f(x) = 0 everywhere at the start

    passes = 0
    while passes < hp.svm_max_passes:
        changed = 0
        for i in range(n):
            e_i = errors[i]
            r_i = sign[i] * e_i
            if not ((r_i < -tol and alpha[i] < c) or (r_i > tol and alpha[i] > ALPHA_EPS)):
                continue
            j = int(rng.integers(n - 1))
            if j >= i:
                j += 1
            e_j = errors[j]
            a_i_old, a_j_old = alpha[i], alpha[j]
            if sign[i] != sign[j]:
                lo = max(0.0, a_j_old - a_i_old)
                hi = min(c, c + a_j_old - a_i_old)
            else:
                lo = max(0.0, a_i_old + a_j_old - c)
                hi = min(c, a_i_old + a_j_old)
            if lo >= hi:
                continue
            eta = 2.0 * K[i, j] - K[i, i] - K[j, j]
            if eta >= 0:
                continue
            a_j = np.clip(a_j_old - sign[j] * (e_i - e_j) / eta, lo, hi)
            if abs(a_j - a_j_old) < MIN_ALPHA_STEP:
                continue
            a_i = a_i_old + sign[i] * sign[j] * (a_j_old - a_j)
            d_i = (a_i - a_i_old) * sign[i]
            d_j = (a_j - a_j_old) * sign[j]
            b1 = b - e_i - d_i * K[i, i] - d_j * K[i, j]
            b2 = b - e_j - d_i * K[i, j] - d_j * K[j, j]
            if ALPHA_EPS < a_i < c - ALPHA_EPS:
                b_new = b1
            elif ALPHA_EPS < a_j < c - ALPHA_EPS:
                b_new = b2
            else:
                b_new = (b1 + b2) / 2.0
            errors += d_i * K[i] + d_j * K[j] + (b_new - b)
            alpha[i], alpha[j], b = a_i, a_j, b_new
            changed += 1
        passes = passes + 1 if changed == 0 else 0

    keep = alpha > ALPHA_EPS
    return {
        "support_vectors": X[keep].copy(),
        "dual_coef": (alpha[keep] * sign[keep]),
        "bias": float(b),
        "gamma": float(gamma),
    }


def margin(params, X) -> np.ndarray:
    sv = np.asarray(params["support_vectors"], dtype=float)
    coef = np.asarray(params["dual_coef"], dtype=float)
    if sv.size == 0:
        return np.full(X.shape[0], float(params["bias"]))
    return _rbf_kernel(X, sv, float(params["gamma"])) @ coef + float(params["bias"])


def score(params, X) -> np.ndarray:
    return sigmoid(margin(params, X))
