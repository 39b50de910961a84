"""Raw recordings to gamma-band envelope windows.

Processing order is fixed: band-pass the full continuous recording into
the gamma band (65-120 Hz), take the Hilbert envelope, then cut trial
windows. Filtering before cutting keeps edge transients confined to the
ends of the recording instead of the ends of every trial.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.signal import butter, filtfilt

from .errors import Empty, NyquistViolation, OutOfBounds, TooShort

GAMMA_LOW_HZ = 65.0
GAMMA_HIGH_HZ = 120.0

# butter(N=4, btype="band") yields an order-8 transfer function; the
# forward-backward pass is padded by reflection over 3x that order.
FILTER_DESIGN_ORDER = 4
FILTER_WARMUP = 3 * 2 * FILTER_DESIGN_ORDER


@dataclass
class ChannelMeta:
    name: str
    region: Optional[str] = None
    hemisphere: Optional[str] = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("channel name must be non-empty")
        if self.hemisphere not in (None, "left", "right"):
            raise ValueError(f"hemisphere must be left/right, got {self.hemisphere!r}")


@dataclass
class Recording:
    """Continuous multichannel recording, amplitudes in microvolts."""

    participant_id: str
    fs: float
    channels: list[ChannelMeta]
    data: np.ndarray  # [n_channels x n_samples]

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=float)
        if self.data.ndim != 2:
            raise ValueError(f"data must be 2-D, got shape {self.data.shape}")
        if len(self.channels) != self.data.shape[0]:
            raise ValueError(
                f"{len(self.channels)} channel entries for {self.data.shape[0]} data rows"
            )
        if self.n_channels < 1:
            raise ValueError("recording needs at least one channel")
        if self.fs <= 2 * GAMMA_HIGH_HZ:
            raise NyquistViolation(
                f"fs={self.fs} Hz cannot carry the {GAMMA_HIGH_HZ} Hz gamma edge"
            )
        names = [c.name for c in self.channels]
        if len(set(names)) != len(names):
            raise ValueError("channel names must be unique")
        if not np.isfinite(self.data).all():
            raise ValueError("recording contains non-finite samples")

    @property
    def n_channels(self) -> int:
        return self.data.shape[0]

    @property
    def n_samples(self) -> int:
        return self.data.shape[1]


@dataclass
class EventList:
    """Trial onsets (sample index) with class labels."""

    onsets: np.ndarray
    labels: list

    def __post_init__(self):
        self.onsets = np.asarray(self.onsets, dtype=np.int64)
        self.labels = list(self.labels)
        if self.onsets.ndim != 1 or len(self.labels) != self.onsets.size:
            raise ValueError("onsets and labels must be 1-D and equally long")
        if self.onsets.size and self.onsets.min() < 0:
            raise ValueError("onsets must be non-negative")
        if np.any(np.diff(self.onsets) <= 0):
            raise ValueError("onsets must be strictly increasing")

    def __len__(self) -> int:
        return self.onsets.size


@dataclass
class EnvelopeWindow:
    """One trial window of one channel after the envelope pipeline."""

    channel_index: int
    samples: np.ndarray
    label: object = None


def bandpass_gamma(signal, fs, low=GAMMA_LOW_HZ, high=GAMMA_HIGH_HZ):
    """Zero-phase 4th-order Butterworth band-pass of one channel.

    Forward-backward application (filtfilt) with reflected edge padding
    of FILTER_WARMUP samples, so the output has no group delay.
    """
    x = np.asarray(signal, dtype=float)
    if not (0 < low < high):
        raise ValueError(f"need 0 < low < high, got low={low}, high={high}")
    if high >= fs / 2:
        raise NyquistViolation(f"high={high} Hz >= Nyquist {fs / 2} Hz")
    if x.size <= FILTER_WARMUP:
        raise TooShort(
            f"signal of {x.size} samples shorter than filter warm-up {FILTER_WARMUP}"
        )
    b, a = butter(FILTER_DESIGN_ORDER, [low / (fs / 2), high / (fs / 2)], btype="band")
    return filtfilt(b, a, x, padtype="even", padlen=FILTER_WARMUP)


def hilbert_envelope(signal):
    """Magnitude of the analytic signal.

    Analytic signal from the N-point DFT: zero the negative-frequency
    bins, double the positive ones (DC and Nyquist kept as-is), invert.
    No zero padding, so Parseval-based spectral features stay exact.
    """
    x = np.asarray(signal, dtype=float)
    if x.size == 0:
        raise Empty("cannot take the envelope of an empty signal")
    if x.size < 2:
        raise TooShort("envelope needs at least 2 samples")
    n = x.size
    spectrum = np.fft.fft(x)
    gain = np.zeros(n)
    gain[0] = 1.0
    if n % 2 == 0:
        gain[1 : n // 2] = 2.0
        gain[n // 2] = 1.0
    else:
        gain[1 : (n + 1) // 2] = 2.0
    analytic = np.fft.ifft(spectrum * gain)
    return np.abs(analytic)


def window_length(window_seconds, fs) -> int:
    return int(round(window_seconds * fs))


def _window_bounds(onsets, n_window, alignment, n_samples):
    if alignment == "onset":
        starts = onsets
    elif alignment == "centered":
        starts = onsets - n_window // 2
    else:
        raise ValueError(f"alignment must be 'onset' or 'centered', got {alignment!r}")
    stops = starts + n_window
    bad = np.nonzero((starts < 0) | (stops > n_samples))[0]
    if bad.size:
        raise OutOfBounds(bad.tolist())
    return starts, stops


def segment(
    recording: Recording,
    events: EventList,
    window_seconds: float = 2.0,
    alignment: str = "onset",
    feature_input: str = "envelope",
    low: float = GAMMA_LOW_HZ,
    high: float = GAMMA_HIGH_HZ,
) -> list[list[EnvelopeWindow]]:
    """Cut one window per (channel, event) after the envelope pipeline.

    Returns a list indexed by channel, each holding the events in order.
    `feature_input="gamma_band"` keeps the band-passed oscillation
    instead of its envelope (both are supported downstream).
    """
    if feature_input not in ("envelope", "gamma_band"):
        raise ValueError(f"feature_input must be envelope/gamma_band, got {feature_input!r}")
    n_window = window_length(window_seconds, recording.fs)
    if n_window <= 0:
        raise ValueError("window_seconds too small for the sampling rate")
    starts, stops = _window_bounds(events.onsets, n_window, alignment, recording.n_samples)

    out = []
    for ch in range(recording.n_channels):
        trace = bandpass_gamma(recording.data[ch], recording.fs, low, high)
        if feature_input == "envelope":
            trace = hilbert_envelope(trace)
        out.append(
            [
                EnvelopeWindow(ch, trace[a:b].copy(), label)
                for a, b, label in zip(starts, stops, events.labels)
            ]
        )
    return out
