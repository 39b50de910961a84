"""The 18 per-window scalar features.

Twelve time-domain descriptors followed by six frequency-domain ones, in
a frozen canonical order (FEATURE_NAMES). Degenerate inputs (constant or
zero windows) map to finite sentinel values, never NaN, so downstream
classifiers always see finite matrices.

Spectral features share one periodogram: P(f) = |DFT(x - mean(x))|^2 / N
at the N-point DFT bins, positive frequencies only, no averaging and no
zero padding.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Empty, TooShort
from .signal import EnvelopeWindow

EPS = 1e-12

FEATURE_NAMES = (
    "average",
    "rms",
    "max_peak",
    "variance",
    "skewness",
    "kurtosis",
    "autocorrelation",
    "nonlinear_energy",
    "spikes",
    "hfd",
    "shannon_entropy",
    "renyi_entropy",
    "coastline",
    "band_power",
    "sef90",
    "hjorth_mobility",
    "hjorth_complexity",
    "spectral_entropy",
)

N_FEATURES = len(FEATURE_NAMES)


def _as_vector(x, min_len, op):
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        raise Empty(f"{op}: empty window")
    if x.size < min_len:
        raise TooShort(f"{op}: need at least {min_len} samples, got {x.size}")
    return x


def smoothing_window(n: int) -> int:
    """Moving-average length used by f_average: 5% of the window."""
    return max(1, int(round(0.05 * n)))


def f_average(x) -> float:
    """Mean of the signal after moving-average smoothing.

    The smoother is a centered moving average of length max(1, 5% of N),
    truncated at the window edges (shorter averages there).
    """
    x = _as_vector(x, 1, "average")
    n = x.size
    win = smoothing_window(n)
    cs = np.concatenate(([0.0], np.cumsum(x)))
    t = np.arange(n)
    lo = np.maximum(0, t - (win - 1) // 2)
    hi = np.minimum(n, t + win // 2 + 1)
    smoothed = (cs[hi] - cs[lo]) / (hi - lo)
    return float(smoothed.mean())


def f_rms(x) -> float:
    x = _as_vector(x, 1, "rms")
    return float(np.sqrt(np.mean(x * x)))


def f_max_peak(x) -> float:
    x = _as_vector(x, 1, "max_peak")
    return float(x.max())


def f_variance(x) -> float:
    """Population variance (denominator N)."""
    x = _as_vector(x, 2, "variance")
    return float(np.mean((x - x.mean()) ** 2))


def f_skewness(x) -> float:
    """m3 / m2^(3/2) with population central moments; 0 when m2 < EPS."""
    x = _as_vector(x, 3, "skewness")
    d = x - x.mean()
    m2 = np.mean(d * d)
    if m2 < EPS:
        return 0.0
    return float(np.mean(d**3) / m2**1.5)


def f_kurtosis(x) -> float:
    """Excess kurtosis m4 / m2^2 - 3; 0 when m2 < EPS."""
    x = _as_vector(x, 4, "kurtosis")
    d = x - x.mean()
    m2 = np.mean(d * d)
    if m2 < EPS:
        return 0.0
    return float(np.mean(d**4) / m2**2 - 3.0)


def f_autocorr(x) -> float:
    """Lag-1 autocorrelation coefficient; 0 when variance < EPS."""
    x = _as_vector(x, 2, "autocorrelation")
    d = x - x.mean()
    den = np.sum(d * d)
    if den / x.size < EPS:
        return 0.0
    return float(np.sum(d[:-1] * d[1:]) / den)


def f_nonlinear_energy(x) -> float:
    """Mean Teager energy: psi_t = x_t^2 - x_(t-1) * x_(t+1)."""
    x = _as_vector(x, 3, "nonlinear_energy")
    psi = x[1:-1] ** 2 - x[:-2] * x[2:]
    return float(psi.mean())


def f_spikes(x) -> float:
    """Count of local maxima rising above mean + 2*std; 0 if flat."""
    x = _as_vector(x, 3, "spikes")
    std = float(np.std(x))
    if std < EPS:
        return 0.0
    threshold = x.mean() + 2.0 * std
    mid = x[1:-1]
    peaks = (mid > x[:-2]) & (mid > x[2:]) & (mid > threshold)
    return float(np.count_nonzero(peaks))


def f_hfd(x, k_max: int = 10) -> float:
    """Higuchi fractal dimension over scales k = 1..k_max.

    Least-squares slope of log L(k) against log (1/k), L(k) the mean
    normalized curve length at stride k. A window with vanishing curve
    length at every scale (a constant) returns 1.0, the dimension of a
    smooth line.
    """
    x = _as_vector(x, 2 * k_max, "hfd")
    n = x.size
    lengths = np.empty(k_max)
    for k in range(1, k_max + 1):
        total = 0.0
        for m in range(k):
            stride = x[m::k]
            n_seg = stride.size - 1
            total += np.abs(np.diff(stride)).sum() * (n - 1) / (n_seg * k * k)
        lengths[k - 1] = total / k
    if np.all(lengths < EPS):
        return 1.0
    log_inv_k = np.log(1.0 / np.arange(1, k_max + 1))
    log_len = np.log(np.maximum(lengths, 1e-300))
    slope = np.polyfit(log_inv_k, log_len, 1)[0]
    return float(slope)


def _histogram_probs(x, n_bins):
    lo, hi = float(x.min()), float(x.max())
    if hi - lo < EPS:
        return None
    counts, _ = np.histogram(x, bins=n_bins, range=(lo, hi))
    return counts / x.size


def f_shannon_entropy(x, n_bins: int = 10) -> float:
    """Shannon entropy (bits) of an equal-width amplitude histogram."""
    x = _as_vector(x, 1, "shannon_entropy")
    p = _histogram_probs(x, n_bins)
    if p is None:
        return 0.0
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def f_renyi_entropy(x, alpha: float = 2.0, n_bins: int = 10) -> float:
    """Renyi entropy of order alpha over the same amplitude histogram."""
    if alpha <= 0 or alpha == 1:
        raise ValueError("renyi_entropy: alpha must be positive and != 1")
    x = _as_vector(x, 1, "renyi_entropy")
    p = _histogram_probs(x, n_bins)
    if p is None:
        return 0.0
    p = p[p > 0]
    return float(np.log2(np.sum(p**alpha)) / (1.0 - alpha))


def f_coastline(x) -> float:
    """Total variation: sum of absolute first differences."""
    x = _as_vector(x, 2, "coastline")
    return float(np.abs(np.diff(x)).sum())


def periodogram(x, fs):
    """Positive-frequency periodogram of the mean-removed window.

    Returns (freqs, power) at bins k = 1..N//2 of the N-point DFT,
    power = |DFT|^2 / N.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    spectrum = np.fft.rfft(x - x.mean())
    power = np.abs(spectrum) ** 2 / n
    k_max = n // 2
    freqs = np.arange(1, k_max + 1) * (fs / n)
    return freqs, power[1 : k_max + 1]


def f_band_power(x, fs) -> float:
    """Mean periodogram power over the positive-frequency bins."""
    x = _as_vector(x, 8, "band_power")
    _, power = periodogram(x, fs)
    return float(power.mean())


def f_sef90(x, fs) -> float:
    """Spectral edge: lowest frequency holding 90% of cumulative power."""
    x = _as_vector(x, 8, "sef90")
    freqs, power = periodogram(x, fs)
    total = power.sum()
    if total < EPS:
        return 0.0
    idx = int(np.searchsorted(np.cumsum(power), 0.9 * total))
    return float(freqs[min(idx, freqs.size - 1)])


def f_hjorth_mobility(x) -> float:
    """sqrt(var of first difference / var of signal); 0 if flat."""
    x = _as_vector(x, 3, "hjorth_mobility")
    var_x = np.var(x)
    if var_x < EPS:
        return 0.0
    return float(np.sqrt(np.var(np.diff(x)) / var_x))


def f_hjorth_complexity(x) -> float:
    """mobility(first difference) / mobility(signal); 0 if flat."""
    x = _as_vector(x, 4, "hjorth_complexity")
    mob = f_hjorth_mobility(x)
    if mob < EPS:
        return 0.0
    return float(f_hjorth_mobility(np.diff(x)) / mob)


def f_spectral_entropy(x, fs) -> float:
    """Shannon entropy of the normalized periodogram, scaled to [0, 1]."""
    x = _as_vector(x, 8, "spectral_entropy")
    _, power = periodogram(x, fs)
    total = power.sum()
    if total < EPS:
        return 0.0
    q = power / total
    q = q[q > 0]
    return float(-np.sum(q * np.log2(q)) / np.log2(power.size))


def extract_features(window, fs) -> np.ndarray:
    """All 18 features of one window, in FEATURE_NAMES order."""
    x = window.samples if isinstance(window, EnvelopeWindow) else window
    x = np.asarray(x, dtype=float)
    ops = (
        f_average,
        f_rms,
        f_max_peak,
        f_variance,
        f_skewness,
        f_kurtosis,
        f_autocorr,
        f_nonlinear_energy,
        f_spikes,
        f_hfd,
        f_shannon_entropy,
        f_renyi_entropy,
        f_coastline,
        lambda v: f_band_power(v, fs),
        lambda v: f_sef90(v, fs),
        f_hjorth_mobility,
        f_hjorth_complexity,
        lambda v: f_spectral_entropy(v, fs),
    )
    out = np.empty(N_FEATURES)
    for i, (name, op) in enumerate(zip(FEATURE_NAMES, ops)):
        try:
            out[i] = op(x)
        except Exception as exc:
            raise type(exc)(f"{name}: {exc}") from exc
    return out


@dataclass
class FeatureMatrix:
    """Per-channel stack of feature vectors with row labels."""

    channel_index: int
    features: np.ndarray  # [n_windows x N_FEATURES]
    labels: list

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=float)
        if self.features.ndim != 2 or self.features.shape[1] != N_FEATURES:
            raise ValueError(f"feature matrix must be [n x {N_FEATURES}]")
        if len(self.labels) != self.features.shape[0]:
            raise ValueError("labels and feature rows must match")

    @property
    def n_windows(self) -> int:
        return self.features.shape[0]


def extract_matrix(windows: list[EnvelopeWindow], fs) -> FeatureMatrix:
    """Feature matrix of one channel's windows."""
    if not windows:
        raise Empty("no windows to extract features from")
    rows = np.stack([extract_features(w, fs) for w in windows])
    return FeatureMatrix(windows[0].channel_index, rows, [w.label for w in windows])


def write_feature_csv(path, matrices: list[FeatureMatrix]) -> None:
    """Dump feature matrices as CSV, 17 significant digits per value."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("channel,window,label," + ",".join(FEATURE_NAMES) + "\n")
        for mat in matrices:
            for w, (row, label) in enumerate(zip(mat.features, mat.labels)):
                values = ",".join(f"{v:.17g}" for v in row)
                fh.write(f"{mat.channel_index},{w},{label},{values}\n")
