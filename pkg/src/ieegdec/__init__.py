"""Single-participant iEEG decoding toolkit.

Gamma-band envelope extraction, 18 per-window features, per-channel
weak classifiers, and a greedily selected combined-channel majority
vote, with a reproducible 5-fold 64/16/20 evaluation protocol and a
synthetic-data harness.
"""
__version__ = "0.1.0"

from .classifiers import Hyperparameters, TrainedModel, fit, predict, predict_score
from .config import RunConfig, config_from_dict, load_config
from .container import read_container, validate_container, write_container
from .ensemble import EnsembleModel, best_channel, greedy_select, majority_vote, predict_ensemble
from .evaluation import (
    ConfusionCounts,
    SplitPlan,
    confusion,
    evaluate_matrices,
    evaluate_participant,
    make_folds,
    precision_recall_f1,
    region_contributions,
)
from .features import FEATURE_NAMES, FeatureMatrix, extract_features, extract_matrix
from .resampling import ResamplePlan, smote
from .signal import (
    ChannelMeta,
    EnvelopeWindow,
    EventList,
    Recording,
    bandpass_gamma,
    hilbert_envelope,
    segment,
)
from .synth import SynthSpec, generate
