"""Run configuration: JSON in, validated RunConfig out.

Unknown keys are rejected at every nesting level so a typo cannot
silently change an experiment.
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from typing import Optional

from .classifiers import KINDS, Hyperparameters
from .errors import ConfigInvalid
from .evaluation import SplitPlan
from .resampling import ResamplePlan

_TOP_KEYS = {
    "positive_class",
    "alignment",
    "window_seconds",
    "feature_input",
    "classifier",
    "split",
    "resample",
    "ensemble",
    "seed",
}
_CLASSIFIER_KEYS = {"kind", "hyperparameters"}
_SPLIT_KEYS = {"n_folds", "train_frac", "val_frac", "test_frac", "stratified"}
_RESAMPLE_KEYS = {"enabled", "k_neighbors"}
_ENSEMBLE_KEYS = {"max_channels"}
# master seed governs all derived streams; per-block seeds are not accepted
_HP_KEYS = {f.name for f in dataclasses.fields(Hyperparameters)} - {"seed"}


@dataclass
class RunConfig:
    positive_class: Optional[str] = None  # None -> minority class
    alignment: str = "onset"
    window_seconds: float = 2.0
    feature_input: str = "envelope"
    classifier_kind: str = "random_forest"
    hyperparameters: Hyperparameters = field(default_factory=Hyperparameters)
    split: SplitPlan = field(default_factory=SplitPlan)
    resample: ResamplePlan = field(default_factory=ResamplePlan)
    resample_enabled: bool = True
    max_channels: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if self.alignment not in ("onset", "centered"):
            raise ConfigInvalid(f"alignment must be onset/centered, got {self.alignment!r}")
        if self.feature_input not in ("envelope", "gamma_band"):
            raise ConfigInvalid(
                f"feature_input must be envelope/gamma_band, got {self.feature_input!r}"
            )
        if self.classifier_kind not in KINDS:
            raise ConfigInvalid(f"classifier kind must be one of {KINDS}")
        if self.window_seconds <= 0:
            raise ConfigInvalid("window_seconds must be positive")
        if self.max_channels is not None and self.max_channels < 1:
            raise ConfigInvalid("max_channels must be >= 1 when set")

    def to_dict(self) -> dict:
        return {
            "positive_class": self.positive_class,
            "alignment": self.alignment,
            "window_seconds": self.window_seconds,
            "feature_input": self.feature_input,
            "classifier": {
                "kind": self.classifier_kind,
                "hyperparameters": {
                    k: v for k, v in self.hyperparameters.to_dict().items() if k != "seed"
                },
            },
            "split": {
                "n_folds": self.split.n_folds,
                "train_frac": self.split.train_frac,
                "val_frac": self.split.val_frac,
                "test_frac": self.split.test_frac,
                "stratified": self.split.stratified,
            },
            "resample": {
                "enabled": self.resample_enabled,
                "k_neighbors": self.resample.k_neighbors,
            },
            "ensemble": {"max_channels": self.max_channels},
            "seed": self.seed,
        }


def _reject_unknown(section: dict, allowed: set, where: str) -> None:
    unknown = sorted(set(section) - allowed)
    if unknown:
        raise ConfigInvalid(f"unknown key(s) in {where}: {unknown}")


def config_from_dict(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigInvalid("config must be a JSON object")
    _reject_unknown(doc, _TOP_KEYS, "config")

    classifier = doc.get("classifier", {})
    _reject_unknown(classifier, _CLASSIFIER_KEYS, "config.classifier")
    hp_doc = classifier.get("hyperparameters", {})
    _reject_unknown(hp_doc, _HP_KEYS, "config.classifier.hyperparameters")

    split_doc = doc.get("split", {})
    _reject_unknown(split_doc, _SPLIT_KEYS, "config.split")
    resample_doc = doc.get("resample", {})
    _reject_unknown(resample_doc, _RESAMPLE_KEYS, "config.resample")
    ensemble_doc = doc.get("ensemble", {})
    _reject_unknown(ensemble_doc, _ENSEMBLE_KEYS, "config.ensemble")

    try:
        hp = Hyperparameters(**hp_doc)
        split = SplitPlan(**split_doc)
        resample = ResamplePlan(
            k_neighbors=resample_doc.get("k_neighbors", 5),
        )
        return RunConfig(
            positive_class=doc.get("positive_class"),
            alignment=doc.get("alignment", "onset"),
            window_seconds=doc.get("window_seconds", 2.0),
            feature_input=doc.get("feature_input", "envelope"),
            classifier_kind=classifier.get("kind", "random_forest"),
            hyperparameters=hp,
            split=split,
            resample=resample,
            resample_enabled=resample_doc.get("enabled", True),
            max_channels=ensemble_doc.get("max_channels"),
            seed=doc.get("seed", 0),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigInvalid(str(exc)) from exc


def load_config(path) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigInvalid(f"cannot read config {path}: {exc}") from exc
    return config_from_dict(doc)
