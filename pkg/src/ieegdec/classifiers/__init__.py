"""Per-channel weak classifiers sharing one train/predict interface."""
from .base import (
    KINDS,
    Hyperparameters,
    TrainedModel,
    derive_seed,
    fit,
    predict,
    predict_score,
)
from .io import load_model, model_from_dict, model_to_dict, save_model

__all__ = [
    "KINDS",
    "Hyperparameters",
    "TrainedModel",
    "derive_seed",
    "fit",
    "predict",
    "predict_score",
    "load_model",
    "model_from_dict",
    "model_to_dict",
    "save_model",
]
