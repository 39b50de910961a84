"""SMOTE oversampling of the minority class.

Synthetic rows are convex combinations s = a + delta * (b - a) of a
minority row and one of its k nearest minority neighbors. Distances are
Euclidean in standardized feature space (statistics of the rows given,
i.e. the training split); interpolation happens in the original space.
Original rows are kept verbatim and come first in the output.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import SingleClass, TooFewMinority

_STD_FLOOR = 1e-12


@dataclass
class ResamplePlan:
    k_neighbors: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.k_neighbors < 1:
            raise ValueError("k_neighbors must be >= 1")


def smote(X, y, plan: ResamplePlan | None = None):
    """Upsample the minority class to exactly the majority count."""
    plan = plan or ResamplePlan()
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    classes, counts = np.unique(y, return_counts=True)
    if classes.size < 2:
        raise SingleClass("SMOTE needs two classes")
    if classes.size > 2:
        raise ValueError("SMOTE here is binary-only")

    minority_label = classes[np.argmin(counts)]
    n_min, n_maj = counts.min(), counts.max()
    if n_min == n_maj:
        return X.copy(), y.copy()
    if n_min < 2:
        raise TooFewMinority(f"minority class has {n_min} row(s); need at least 2")

    k = plan.k_neighbors
    if k > n_min - 1:
        warnings.warn(
            f"k_neighbors={k} clipped to {n_min - 1} (minority size {n_min})",
            stacklevel=2,
        )
        k = n_min - 1

    minority_rows = X[y == minority_label]
    mean = X.mean(axis=0)
    scale = X.std(axis=0)
    scale = np.where(scale < _STD_FLOOR, 1.0, scale)
    zs = (minority_rows - mean) / scale

    # k nearest minority neighbors of each minority row, self excluded
    sq = (
        np.sum(zs * zs, axis=1)[:, None]
        + np.sum(zs * zs, axis=1)[None, :]
        - 2.0 * (zs @ zs.T)
    )
    np.fill_diagonal(sq, np.inf)
    neighbors = np.argsort(sq, axis=1, kind="stable")[:, :k]

    rng = np.random.default_rng(plan.seed)
    n_syn = int(n_maj - n_min)
    synthetic = np.empty((n_syn, X.shape[1]))
    for s in range(n_syn):
        a = s % n_min  # round-robin so every minority row seeds evenly
        b = neighbors[a, rng.integers(k)]
        delta = rng.uniform()
        synthetic[s] = minority_rows[a] + delta * (minority_rows[b] - minority_rows[a])

    X_aug = np.vstack([X, synthetic])
    y_aug = np.concatenate([y, np.full(n_syn, minority_label, dtype=y.dtype)])
    return X_aug, y_aug
