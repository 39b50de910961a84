"""Shared train/predict interface for the five per-channel weak classifiers.

All kinds consume a feature matrix and binary 0/1 labels, learn a
standardization from exactly the rows they are given, and expose scores
in [0, 1] (higher = more positive). Training is deterministic for a
fixed (data, hyperparameters, seed) triple.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from ..errors import NonFinite, ShapeMismatch, SingleClass

KINDS = ("logistic_regression", "naive_bayes", "random_forest", "svm", "xgboost")

STD_FLOOR = 1e-12


@dataclass
class Hyperparameters:
    """Per-kind settings; only the fields of the fitted kind matter."""

    seed: int = 0
    standardize: bool = True
    # logistic regression: L2-regularized, full-batch gradient descent
    logreg_l2: float = 1.0
    logreg_max_iter: int = 500
    logreg_tol: float = 1e-8
    # gaussian naive bayes
    nb_var_floor: float = 1e-9
    # random forest
    rf_n_trees: int = 100
    rf_max_depth: Optional[int] = 8
    rf_max_features: Optional[int] = None  # None -> round(sqrt(n_features))
    rf_bootstrap: bool = True
    # svm with RBF kernel, trained by SMO
    svm_c: float = 1.0
    svm_gamma: Optional[float] = None  # None -> 1 / n_features
    svm_tol: float = 1e-3
    svm_max_passes: int = 10
    # gradient boosting on logistic loss
    xgb_rounds: int = 100
    xgb_max_depth: int = 3
    xgb_learning_rate: float = 0.1
    xgb_l2: float = 1.0

    def __post_init__(self):
        if self.logreg_l2 < 0 or self.nb_var_floor <= 0 or self.xgb_l2 < 0:
            raise ValueError("regularization settings must be non-negative")
        if self.rf_n_trees < 1 or self.xgb_rounds < 1:
            raise ValueError("need at least one tree / boosting round")
        if self.svm_c <= 0:
            raise ValueError("svm_c must be positive")
        if not 0 < self.xgb_learning_rate <= 1:
            raise ValueError("xgb_learning_rate must be in (0, 1]")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class TrainedModel:
    kind: str
    params: dict
    mean: np.ndarray
    scale: np.ndarray
    hp: Hyperparameters

    @property
    def n_features(self) -> int:
        return self.mean.size


def derive_seed(*parts) -> int:
    """Counter-based seed splitting: independent streams per key tuple."""
    ss = np.random.SeedSequence([int(p) & 0xFFFFFFFF for p in parts])
    return int(ss.generate_state(2, dtype=np.uint32).view(np.uint64)[0])


def _check_training_inputs(X, y):
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ShapeMismatch(f"X must be a non-empty 2-D matrix, got shape {X.shape}")
    if not np.isfinite(X).all():
        raise NonFinite("training matrix contains NaN or infinity")
    y = np.asarray(y)
    if y.shape != (X.shape[0],):
        raise ShapeMismatch("y must have one label per row of X")
    classes = np.unique(y)
    if classes.size < 2:
        raise SingleClass(f"training labels contain a single class: {classes.tolist()}")
    if not set(classes.tolist()) <= {0, 1}:
        raise ValueError(f"labels must be 0/1, got {classes.tolist()}")
    return X, y.astype(np.int64)


def fit(kind: str, X, y, hp: Hyperparameters | None = None) -> TrainedModel:
    """Train one weak classifier on 0/1 labels.

    Standardization statistics come only from the rows passed here; the
    fitted model re-applies them at prediction time.
    """
    from . import boosting, forest, logistic, naive_bayes, svm

    if kind not in KINDS:
        raise ValueError(f"unknown classifier kind {kind!r}; choose from {KINDS}")
    hp = hp or Hyperparameters()
    X, y = _check_training_inputs(X, y)

    if hp.standardize:
        mean = X.mean(axis=0)
        scale = X.std(axis=0)
        scale = np.where(scale < STD_FLOOR, 1.0, scale)
    else:
        mean = np.zeros(X.shape[1])
        scale = np.ones(X.shape[1])
    Xs = (X - mean) / scale

    trainers = {
        "logistic_regression": logistic.train,
        "naive_bayes": naive_bayes.train,
        "random_forest": forest.train,
        "svm": svm.train,
        "xgboost": boosting.train,
    }
    params = trainers[kind](Xs, y, hp)
    return TrainedModel(kind, params, mean, scale, hp)


def _standardized(model: TrainedModel, X):
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise ShapeMismatch(
            f"expected [n x {model.n_features}] features, got shape {X.shape}"
        )
    return (X - model.mean) / model.scale


def predict_score(model: TrainedModel, X) -> np.ndarray:
    """Per-row score in [0, 1]; higher means more positive-class."""
    from . import boosting, forest, logistic, naive_bayes, svm

    Xs = _standardized(model, X)
    if Xs.shape[0] == 0:
        return np.zeros(0)
    scorers = {
        "logistic_regression": logistic.score,
        "naive_bayes": naive_bayes.score,
        "random_forest": forest.score,
        "svm": svm.score,
        "xgboost": boosting.score,
    }
    return scorers[model.kind](model.params, Xs)


def predict(model: TrainedModel, X) -> np.ndarray:
    """Binary labels, thresholding the score at 0.5."""
    return (predict_score(model, X) > 0.5).astype(np.int64)


def sigmoid(z):
    out = np.empty_like(z, dtype=float)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out
