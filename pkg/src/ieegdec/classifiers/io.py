"""Model (de)serialization: self-describing JSON documents.

Floats survive the round trip exactly (shortest-repr encoding), so a
saved-then-loaded model predicts bit-identically to the original.
"""
import json

import numpy as np

from .base import Hyperparameters, TrainedModel

FORMAT_VERSION = "1"


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def model_to_dict(model: TrainedModel) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": model.kind,
        "hyperparameters": _jsonable(model.hp.to_dict()),
        "standardization": {
            "mean": model.mean.tolist(),
            "scale": model.scale.tolist(),
        },
        "parameters": _jsonable(model.params),
    }


def model_from_dict(doc: dict) -> TrainedModel:
    if doc.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported model format version {doc.get('format_version')!r}")
    hp = Hyperparameters(**doc["hyperparameters"])
    params = doc["parameters"]
    # array-valued parameters come back as lists; the per-kind scorers
    # normalize with np.asarray, so only the top-level arrays need care
    return TrainedModel(
        kind=doc["kind"],
        params=params,
        mean=np.asarray(doc["standardization"]["mean"], dtype=float),
        scale=np.asarray(doc["standardization"]["scale"], dtype=float),
        hp=hp,
    )


def save_model(model: TrainedModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh)


def load_model(path) -> TrainedModel:
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))
