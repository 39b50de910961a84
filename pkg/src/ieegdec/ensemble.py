"""Combined-channel model: greedy forward channel selection + majority voting.

Selection starts from the single best channel on validation F1 and, at
each step, tries adding every remaining channel; the best strictly
improving addition is kept, and the search stops at the first step with
no strict improvement. Ties anywhere break toward the lowest channel
index, so the outcome is independent of evaluation order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .classifiers import TrainedModel, model_from_dict, model_to_dict, predict_score
from .errors import Empty, MissingChannel, ShapeMismatch
from .evaluation import f1_binary


@dataclass
class ChannelModel:
    channel_index: int
    model: TrainedModel
    validation_f1: float


@dataclass
class EnsembleModel:
    selected: list[int]  # selection order
    members: list[ChannelModel]  # one per selected channel, same order
    history: list[float]  # validation F1 after each accepted step

    def __post_init__(self):
        if not self.selected:
            raise Empty("ensemble needs at least one channel")
        if len(set(self.selected)) != len(self.selected):
            raise ValueError("selected channels must be unique")
        if [m.channel_index for m in self.members] != list(self.selected):
            raise ValueError("members must match selected order")


def best_channel(channel_models: Sequence[ChannelModel]) -> ChannelModel:
    """Highest validation F1; ties go to the lowest channel index."""
    if not channel_models:
        raise Empty("no channel models")
    best = None
    for cm in channel_models:
        if (
            best is None
            or cm.validation_f1 > best.validation_f1
            or (cm.validation_f1 == best.validation_f1 and cm.channel_index < best.channel_index)
        ):
            best = cm
    return best


def majority_vote(votes, scores) -> np.ndarray:
    """Per-window majority label over the member columns.

    An exact tie goes to the label whose mean member score sits farther
    from 0.5; a still-tied window follows the first member's vote.
    """
    votes = np.asarray(votes, dtype=np.int64)
    scores = np.asarray(scores, dtype=float)
    if votes.ndim != 2 or votes.shape[1] < 1:
        raise ShapeMismatch(f"votes must be [n x members], got {votes.shape}")
    if scores.shape != votes.shape:
        raise ShapeMismatch(f"scores shape {scores.shape} != votes shape {votes.shape}")

    n, m = votes.shape
    pos = votes.sum(axis=1)
    out = (pos * 2 > m).astype(np.int64)
    ties = np.nonzero(pos * 2 == m)[0]
    for row in ties:
        v = votes[row]
        s = scores[row]
        dist_pos = abs(float(np.mean(s[v == 1])) - 0.5)
        dist_neg = abs(float(np.mean(s[v == 0])) - 0.5)
        if dist_pos > dist_neg:
            out[row] = 1
        elif dist_neg > dist_pos:
            out[row] = 0
        else:
            out[row] = v[0]
    return out


def select_from_votes(
    votes,
    scores,
    y_val,
    max_channels: Optional[int] = None,
) -> tuple[list[int], list[float]]:
    """Greedy forward selection on precomputed validation votes.

    Column c holds channel c's validation predictions. Returns the
    selection order and the F1 history after each accepted step.
    """
    votes = np.asarray(votes, dtype=np.int64)
    scores = np.asarray(scores, dtype=float)
    y_val = np.asarray(y_val)
    n_channels = votes.shape[1]
    if n_channels < 1:
        raise Empty("no channels to select from")

    singles = [f1_binary(y_val, votes[:, c]) for c in range(n_channels)]
    start = int(np.argmax(singles))  # argmax takes the lowest index on ties
    selected = [start]
    current = singles[start]
    history = [current]
    cap = n_channels if max_channels is None else min(max_channels, n_channels)

    while len(selected) < cap:
        best_candidate = None
        best_f1 = current
        for c in range(n_channels):  # ascending order implements the tie rule
            if c in selected:
                continue
            cols = selected + [c]
            f1 = f1_binary(y_val, majority_vote(votes[:, cols], scores[:, cols]))
            if f1 > best_f1:
                best_candidate, best_f1 = c, f1
        if best_candidate is None:
            break
        selected.append(best_candidate)
        current = best_f1
        history.append(current)
    return selected, history


def greedy_select(
    channel_models: Sequence[ChannelModel],
    X_val_per_channel: Mapping[int, np.ndarray],
    y_val,
    max_channels: Optional[int] = None,
) -> EnsembleModel:
    """Greedy forward selection from trained channel models.

    `X_val_per_channel[channel_index]` holds that channel's validation
    features; votes and scores are computed once up front.
    """
    if not channel_models:
        raise Empty("no channel models")
    models = sorted(channel_models, key=lambda cm: cm.channel_index)
    n_val = len(np.asarray(y_val))
    votes = np.empty((n_val, len(models)), dtype=np.int64)
    scores = np.empty((n_val, len(models)))
    for col, cm in enumerate(models):
        scores[:, col] = predict_score(cm.model, X_val_per_channel[cm.channel_index])
        votes[:, col] = (scores[:, col] > 0.5).astype(np.int64)
    cols, history = select_from_votes(votes, scores, y_val, max_channels=max_channels)
    return EnsembleModel(
        selected=[models[c].channel_index for c in cols],
        members=[models[c] for c in cols],
        history=history,
    )


def exhaustive_best_subset(votes, scores, y_val, limit: int = 12) -> tuple[float, tuple[int, ...]]:
    """Best validation F1 over every non-empty channel subset.

    Exponential; refuses more than `limit` channels. Test oracle only.
    """
    votes = np.asarray(votes, dtype=np.int64)
    n_channels = votes.shape[1]
    if n_channels > limit:
        raise ValueError(f"exhaustive search capped at {limit} channels")
    best_f1, best_subset = -1.0, ()
    for mask in range(1, 1 << n_channels):
        cols = [c for c in range(n_channels) if mask & (1 << c)]
        f1 = f1_binary(y_val, majority_vote(votes[:, cols], np.asarray(scores)[:, cols]))
        if f1 > best_f1:
            best_f1, best_subset = f1, tuple(cols)
    return best_f1, best_subset


def predict_ensemble(ensemble: EnsembleModel, features_per_channel) -> np.ndarray:
    """Majority vote of the member models over their channels' features."""
    if isinstance(features_per_channel, Mapping):
        available = features_per_channel
    else:
        available = {i: x for i, x in enumerate(features_per_channel)}
    missing = [ch for ch in ensemble.selected if ch not in available]
    if missing:
        raise MissingChannel(missing)
    n = np.asarray(available[ensemble.selected[0]]).shape[0]
    votes = np.empty((n, len(ensemble.selected)), dtype=np.int64)
    scores = np.empty((n, len(ensemble.selected)))
    for col, cm in enumerate(ensemble.members):
        scores[:, col] = predict_score(cm.model, available[cm.channel_index])
        votes[:, col] = (scores[:, col] > 0.5).astype(np.int64)
    return majority_vote(votes, scores)


def ensemble_to_dict(ensemble: EnsembleModel) -> dict:
    return {
        "format_version": "1",
        "selected": list(ensemble.selected),
        "history": list(ensemble.history),
        "members": [
            {
                "channel_index": cm.channel_index,
                "validation_f1": cm.validation_f1,
                "model": model_to_dict(cm.model),
            }
            for cm in ensemble.members
        ],
    }


def ensemble_from_dict(doc: dict) -> EnsembleModel:
    members = [
        ChannelModel(m["channel_index"], model_from_dict(m["model"]), m["validation_f1"])
        for m in doc["members"]
    ]
    return EnsembleModel(doc["selected"], members, doc["history"])


def save_ensemble(ensemble: EnsembleModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(ensemble_to_dict(ensemble), fh)


def load_ensemble(path) -> EnsembleModel:
    with open(path, "r", encoding="utf-8") as fh:
        return ensemble_from_dict(json.load(fh))
