"""Evaluation protocol: stratified 5-fold 64/16/20 splits, the three
reporting metrics, the two decoding modes, and region contributions.

Each fold's test set is one block of a K-fold partition (every trial is
tested exactly once); the remaining trials are split 80/20 into train
and validation, giving the 64/16/20 ratio overall. Counts that do not
divide evenly are apportioned per class by largest remainder.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .classifiers import Hyperparameters, derive_seed, fit, predict, predict_score
from .errors import ConfigInvalid, LengthMismatch, TooFewTrials
from .resampling import ResamplePlan, smote

MODE_BEST = "best_channel"
MODE_COMBINED = "combined"

# stream tags for counter-based seed derivation
_STREAM_FOLDS = 0
_STREAM_SMOTE = 1
_STREAM_CLF = 2


@dataclass
class SplitPlan:
    n_folds: int = 5
    train_frac: float = 0.64
    val_frac: float = 0.16
    test_frac: float = 0.20
    stratified: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.n_folds < 2:
            raise ConfigInvalid("n_folds must be >= 2")
        total = self.train_frac + self.val_frac + self.test_frac
        if abs(total - 1.0) > 1e-9:
            raise ConfigInvalid(f"split fractions sum to {total}, expected 1")
        if min(self.train_frac, self.val_frac, self.test_frac) <= 0:
            raise ConfigInvalid("split fractions must be positive")
        if abs(self.test_frac - 1.0 / self.n_folds) > 1e-9:
            raise ConfigInvalid(
                f"test_frac={self.test_frac} incompatible with {self.n_folds}-fold "
                f"testing (needs 1/n_folds)"
            )


def _fold_chunk_sizes(count: int, n_folds: int) -> np.ndarray:
    base, extra = divmod(count, n_folds)
    return np.array([base + (1 if f < extra else 0) for f in range(n_folds)])


def _train_val_counts(m: int, train_frac: float, val_frac: float) -> tuple[int, int]:
    """Largest-remainder split of m rows into train/val."""
    w = train_frac + val_frac
    t_exact = m * train_frac / w
    v_exact = m * val_frac / w
    t, v = int(np.floor(t_exact)), int(np.floor(v_exact))
    if t + v < m:  # one leftover seat goes to the larger remainder, train on a tie
        if (v_exact - v) > (t_exact - t):
            v += 1
        else:
            t += 1
    return t, v


def make_folds(labels, plan: SplitPlan | None = None):
    """(train, val, test) index triplets; the test blocks partition the trials."""
    plan = plan or SplitPlan()
    labels = np.asarray(labels)
    n = labels.size
    if n < plan.n_folds:
        raise TooFewTrials(f"{n} trials cannot fill {plan.n_folds} folds")
    rng = np.random.default_rng(plan.seed)

    if plan.stratified:
        groups = [np.nonzero(labels == cls)[0] for cls in np.unique(labels)]
        for g in groups:
            if g.size < plan.n_folds:
                raise TooFewTrials(
                    f"a class has {g.size} trials, fewer than {plan.n_folds} folds"
                )
    else:
        groups = [np.arange(n)]

    shuffled = [rng.permutation(g) for g in groups]
    folds = []
    for f in range(plan.n_folds):
        train_parts, val_parts, test_parts = [], [], []
        for order in shuffled:
            sizes = _fold_chunk_sizes(order.size, plan.n_folds)
            bounds = np.concatenate(([0], np.cumsum(sizes)))
            test_parts.append(order[bounds[f] : bounds[f + 1]])
            rest = np.concatenate([order[: bounds[f]], order[bounds[f + 1] :]])
            t, _ = _train_val_counts(rest.size, plan.train_frac, plan.val_frac)
            train_parts.append(rest[:t])
            val_parts.append(rest[t:])
        folds.append(
            (
                np.sort(np.concatenate(train_parts)),
                np.sort(np.concatenate(val_parts)),
                np.sort(np.concatenate(test_parts)),
            )
        )
    return folds


@dataclass
class ConfusionCounts:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def confusion(y_true, y_pred, positive_class=1) -> ConfusionCounts:
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    if y_true.shape != y_pred.shape:
        raise LengthMismatch(f"{y_true.shape} vs {y_pred.shape}")
    t = y_true == positive_class
    p = y_pred == positive_class
    return ConfusionCounts(
        tp=int(np.sum(t & p)),
        fp=int(np.sum(~t & p)),
        fn=int(np.sum(t & ~p)),
        tn=int(np.sum(~t & ~p)),
    )


def precision_recall_f1(c: ConfusionCounts) -> tuple[float, float, float]:
    """Precision TP/(TP+FP), recall TP/(TP+FN), their harmonic mean; 0/0 -> 0."""
    precision = c.tp / (c.tp + c.fp) if (c.tp + c.fp) > 0 else 0.0
    recall = c.tp / (c.tp + c.fn) if (c.tp + c.fn) > 0 else 0.0
    f1 = 2 * precision * recall / (precision + recall) if (precision + recall) > 0 else 0.0
    return precision, recall, f1


def f1_binary(y_true, y_pred, positive_class=1) -> float:
    return precision_recall_f1(confusion(y_true, y_pred, positive_class))[2]


@dataclass
class FoldReport:
    fold_index: int
    mode: str
    confusion: ConfusionCounts
    precision: float
    recall: float
    f1: float
    selected_channels: list[int]
    per_channel_validation_f1: list[float]
    selection_history: list[float] = field(default_factory=list)


@dataclass
class ParticipantResult:
    participant_id: str
    classifier_kind: str
    seed: int
    reports: list[FoldReport]
    n_channels: int

    def mode_f1s(self, mode: str) -> list[float]:
        return [r.f1 for r in self.reports if r.mode == mode]

    def mean_sd_f1(self, mode: str) -> tuple[float, float]:
        f1s = np.array(self.mode_f1s(mode))
        sd = float(np.std(f1s, ddof=1)) if f1s.size > 1 else 0.0
        return float(np.mean(f1s)), sd

    def selected_union(self) -> list[int]:
        """Effective channel set: union of combined-mode selections over folds."""
        out: set[int] = set()
        for r in self.reports:
            if r.mode == MODE_COMBINED:
                out.update(r.selected_channels)
        return sorted(out)


def _binarize_labels(labels, positive_class):
    labels = list(labels)
    distinct = sorted({str(l) for l in labels})
    if positive_class is None:
        counts = {d: sum(str(l) == d for l in labels) for d in distinct}
        positive_class = min(distinct, key=lambda d: (counts[d], d))
    elif str(positive_class) not in distinct:
        raise ConfigInvalid(f"positive_class {positive_class!r} not among labels {distinct}")
    y = np.array([1 if str(l) == str(positive_class) else 0 for l in labels], dtype=np.int64)
    return y, str(positive_class)


def evaluate_matrices(
    feats: Sequence[np.ndarray],
    y: np.ndarray,
    kind: str,
    *,
    hp: Hyperparameters | None = None,
    split: SplitPlan | None = None,
    resample: ResamplePlan | None = None,
    resample_enabled: bool = True,
    max_channels: Optional[int] = None,
    seed: int = 0,
    participant_id: str = "",
) -> ParticipantResult:
    """Run both decoding modes over per-channel feature matrices.

    `feats[c]` holds channel c's [n_trials x 18] matrix; `y` are 0/1
    trial labels shared by all channels. Per-(fold, channel) seeds are
    derived from `seed` so results do not depend on execution order.
    """
    from . import ensemble as ens

    hp = hp or Hyperparameters()
    split = split if split is not None else SplitPlan(seed=derive_seed(seed, 0, 0, _STREAM_FOLDS))
    resample = resample or ResamplePlan()
    y = np.asarray(y, dtype=np.int64)
    n_channels = len(feats)
    folds = make_folds(y, split)

    reports: list[FoldReport] = []
    for fold_i, (tr, va, te) in enumerate(folds):
        members = []
        votes_val = np.empty((va.size, n_channels), dtype=np.int64)
        scores_val = np.empty((va.size, n_channels))
        for ch in range(n_channels):
            X_tr, y_tr = feats[ch][tr], y[tr]
            if resample_enabled and np.ptp(np.unique(y_tr, return_counts=True)[1]) > 0:
                plan = replace(resample, seed=derive_seed(seed, fold_i, ch, _STREAM_SMOTE))
                X_tr, y_tr = smote(X_tr, y_tr, plan)
            hp_ch = replace(hp, seed=derive_seed(seed, fold_i, ch, _STREAM_CLF))
            model = fit(kind, X_tr, y_tr, hp_ch)
            scores_val[:, ch] = predict_score(model, feats[ch][va])
            votes_val[:, ch] = (scores_val[:, ch] > 0.5).astype(np.int64)
            members.append(
                ens.ChannelModel(ch, model, f1_binary(y[va], votes_val[:, ch]))
            )
        per_channel_f1 = [m.validation_f1 for m in members]

        best = ens.best_channel(members)
        best_pred = predict(best.model, feats[best.channel_index][te])
        c = confusion(y[te], best_pred)
        p, r, f1 = precision_recall_f1(c)
        reports.append(
            FoldReport(fold_i, MODE_BEST, c, p, r, f1, [best.channel_index], per_channel_f1)
        )

        selected, history = ens.select_from_votes(
            votes_val, scores_val, y[va], max_channels=max_channels
        )
        ensemble = ens.EnsembleModel(
            selected=selected, members=[members[i] for i in selected], history=history
        )
        comb_pred = ens.predict_ensemble(ensemble, {ch: feats[ch][te] for ch in selected})
        c2 = confusion(y[te], comb_pred)
        p2, r2, f2 = precision_recall_f1(c2)
        reports.append(
            FoldReport(fold_i, MODE_COMBINED, c2, p2, r2, f2, list(selected), per_channel_f1, history)
        )

    return ParticipantResult(participant_id, kind, seed, reports, n_channels)


def evaluate_participant(recording, events, config) -> ParticipantResult:
    """Segment, featurize, and score one participant under a RunConfig."""
    from .features import extract_matrix
    from .signal import segment

    per_channel = segment(
        recording,
        events,
        window_seconds=config.window_seconds,
        alignment=config.alignment,
        feature_input=config.feature_input,
    )
    matrices = [extract_matrix(ws, recording.fs) for ws in per_channel]
    y, _ = _binarize_labels(events.labels, config.positive_class)
    return evaluate_matrices(
        [m.features for m in matrices],
        y,
        config.classifier_kind,
        hp=config.hyperparameters,
        split=replace(config.split, seed=derive_seed(config.seed, 0, 0, _STREAM_FOLDS)),
        resample=config.resample,
        resample_enabled=config.resample_enabled,
        max_channels=config.max_channels,
        seed=config.seed,
        participant_id=recording.participant_id,
    )


@dataclass
class RegionHistogram:
    participant_recurrence: dict[str, int]
    channel_counts: dict[str, int]

    def ranked_regions(self) -> list[str]:
        return sorted(
            self.participant_recurrence,
            key=lambda r: (-self.participant_recurrence[r], -self.channel_counts.get(r, 0), r),
        )


UNLABELED = "unlabeled"


def region_contributions(selected_sets, channel_metas) -> RegionHistogram:
    """Region histogram over participants' effective channel sets.

    `selected_sets[p]` is participant p's selected channel indices (an
    EnsembleModel is accepted too); `channel_metas[p]` their ChannelMeta
    list. Channels without a region land in the "unlabeled" bucket.
    """
    recurrence: dict[str, int] = {}
    channels: dict[str, int] = {}
    for selected, metas in zip(selected_sets, channel_metas):
        indices = getattr(selected, "selected", selected)
        regions_here = set()
        for ch in indices:
            region = metas[ch].region or UNLABELED
            channels[region] = channels.get(region, 0) + 1
            regions_here.add(region)
        for region in regions_here:
            recurrence[region] = recurrence.get(region, 0) + 1
    return RegionHistogram(recurrence, channels)


def write_region_csv(path, histogram: RegionHistogram) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("region,participant_recurrence,channel_count\n")
        for region in histogram.ranked_regions():
            fh.write(
                f"{region},{histogram.participant_recurrence[region]},"
                f"{histogram.channel_counts.get(region, 0)}\n"
            )
