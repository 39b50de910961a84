"""Deterministic synthetic recordings with planted gamma-band structure.

Each channel carries 1/f-shaped background noise (pink+white mixture);
channels in the informative set additionally receive a gamma-band
sinusoidal burst spanning every positive-class trial window. Burst
amplitude is effect_size times the channel's own gamma-band RMS, scaled
by a per-(trial, channel) uniform jitter draw so per-channel evidence
quality varies independently across trials. effect_size = 0 plants no
class information anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import SpecInvalid
from .signal import ChannelMeta, EventList, Recording, bandpass_gamma, window_length

BASELINE_UV = 25.0  # background noise scale in microvolts

# seed streams
_STREAM_LABELS = 0
_STREAM_CHANNEL = 1


@dataclass
class SynthSpec:
    n_channels: int = 20
    informative_channels: tuple = (0, 1, 2, 3)
    n_trials_per_class: tuple = (100, 100)  # (positive, negative)
    fs: float = 512.0
    window_seconds: float = 2.0
    effect_size: float = 2.0
    noise_pink: float = 1.0
    noise_white: float = 0.5
    amplitude_jitter: tuple = (0.1, 1.0)
    trial_gap_seconds: float = 0.5
    class_labels: tuple = ("pos", "neg")
    regions: Optional[tuple] = None  # one label (or None) per channel
    participant_id: str = "synth-000"
    seed: int = 0

    def __post_init__(self):
        self.informative_channels = tuple(self.informative_channels)
        self.n_trials_per_class = tuple(self.n_trials_per_class)
        self.amplitude_jitter = tuple(self.amplitude_jitter)
        self.class_labels = tuple(self.class_labels)
        if self.regions is not None:
            self.regions = tuple(self.regions)
        if self.n_channels < 1:
            raise SpecInvalid("n_channels must be >= 1")
        if not all(0 <= c < self.n_channels for c in self.informative_channels):
            raise SpecInvalid("informative_channels out of range")
        if len(set(self.informative_channels)) != len(self.informative_channels):
            raise SpecInvalid("informative_channels must be unique")
        if len(self.n_trials_per_class) != 2 or min(self.n_trials_per_class) < 1:
            raise SpecInvalid("n_trials_per_class must be two positive counts")
        if self.effect_size < 0:
            raise SpecInvalid("effect_size must be >= 0")
        if self.fs <= 240:
            raise SpecInvalid("fs must exceed 240 Hz to carry the gamma band")
        if self.noise_pink < 0 or self.noise_white < 0 or self.noise_pink + self.noise_white == 0:
            raise SpecInvalid("noise mixture weights must be non-negative, not both zero")
        lo, hi = self.amplitude_jitter
        if not (0 <= lo <= hi):
            raise SpecInvalid("amplitude_jitter must satisfy 0 <= lo <= hi")
        if len(self.class_labels) != 2 or self.class_labels[0] == self.class_labels[1]:
            raise SpecInvalid("class_labels must be two distinct labels")
        if self.regions is not None and len(self.regions) != self.n_channels:
            raise SpecInvalid("regions must list one entry per channel")
        if self.window_seconds <= 0 or self.trial_gap_seconds < 0:
            raise SpecInvalid("window/gap durations invalid")


def spec_from_dict(doc: dict) -> SynthSpec:
    """SynthSpec from parsed JSON; unknown keys are rejected."""
    if not isinstance(doc, dict):
        raise SpecInvalid("synth spec must be a JSON object")
    allowed = {f.name for f in SynthSpec.__dataclass_fields__.values()}
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise SpecInvalid(f"unknown key(s) in synth spec: {unknown}")
    try:
        return SynthSpec(**doc)
    except TypeError as exc:
        raise SpecInvalid(str(exc)) from exc


def _channel_rng(spec: SynthSpec, ch: int) -> np.random.Generator:
    seq = np.random.SeedSequence([spec.seed & 0xFFFFFFFF, _STREAM_CHANNEL, ch])
    return np.random.Generator(np.random.PCG64(seq))


def _pink_noise(rng, n) -> np.ndarray:
    """Spectrally shaped white noise: amplitude ~ 1/sqrt(f), unit variance."""
    spectrum = np.fft.rfft(rng.standard_normal(n))
    freqs = np.fft.rfftfreq(n)
    weight = np.zeros_like(freqs)
    weight[1:] = 1.0 / np.sqrt(freqs[1:])
    shaped = np.fft.irfft(spectrum * weight, n)
    return shaped / shaped.std()


def generate(spec: SynthSpec) -> tuple[Recording, EventList]:
    """Build (Recording, EventList); byte-identical for equal spec+seed."""
    n_window = window_length(spec.window_seconds, spec.fs)
    gap = int(round(spec.trial_gap_seconds * spec.fs))
    pad = n_window
    n_pos, n_neg = spec.n_trials_per_class
    n_trials = n_pos + n_neg
    onsets = pad + np.arange(n_trials) * (n_window + gap)
    n_samples = 2 * pad + n_trials * (n_window + gap)

    label_rng = np.random.Generator(
        np.random.PCG64(np.random.SeedSequence([spec.seed & 0xFFFFFFFF, _STREAM_LABELS]))
    )
    pos_label, neg_label = spec.class_labels
    labels = [pos_label] * n_pos + [neg_label] * n_neg
    labels = [labels[i] for i in label_rng.permutation(n_trials)]

    data = np.empty((spec.n_channels, n_samples))
    t_window = np.arange(n_window) / spec.fs
    for ch in range(spec.n_channels):
        rng = _channel_rng(spec, ch)
        pink = _pink_noise(rng, n_samples)
        white = rng.standard_normal(n_samples)
        mix = spec.noise_pink * pink + spec.noise_white * white
        trace = BASELINE_UV * (mix / mix.std())
        if ch in spec.informative_channels:
            gamma_rms = bandpass_gamma(trace, spec.fs).std()
            lo, hi = spec.amplitude_jitter
            for onset, label in zip(onsets, labels):
                if label != pos_label:
                    continue
                carrier = rng.uniform(65.0, 120.0)
                phase = rng.uniform(0.0, 2 * np.pi)
                amp = spec.effect_size * gamma_rms * rng.uniform(lo, hi)
                trace[onset : onset + n_window] += amp * np.sin(
                    2 * np.pi * carrier * t_window + phase
                )
        data[ch] = trace

    channels = [
        ChannelMeta(
            f"ch{ch:02d}",
            region=None if spec.regions is None else spec.regions[ch],
        )
        for ch in range(spec.n_channels)
    ]
    recording = Recording(spec.participant_id, spec.fs, channels, data)
    return recording, EventList(onsets, labels)
