"""On-disk container: manifest.json + data.bin + events.csv.

data.bin stores little-endian float32 samples, row-major
[n_channels x n_samples]. The manifest pins the shape, dtype, channel
metadata and the legal label set; events.csv holds `onset_sample,label`
rows. The format is version-tagged so it can evolve.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import ContainerCorrupt
from .signal import ChannelMeta, EventList, Recording

FORMAT_VERSION = "1"
MANIFEST_NAME = "manifest.json"
DATA_NAME = "data.bin"
EVENTS_NAME = "events.csv"

_BYTES_PER_SAMPLE = 4


def write_container(out_dir, recording: Recording, events: EventList) -> None:
    os.makedirs(out_dir, exist_ok=True)
    manifest = {
        "format_version": FORMAT_VERSION,
        "participant_id": recording.participant_id,
        "fs": float(recording.fs),
        "n_channels": recording.n_channels,
        "n_samples": recording.n_samples,
        "dtype": "float32",
        "byte_order": "little",
        "order": "row-major",
        "channels": [
            {"name": c.name, "region": c.region, "hemisphere": c.hemisphere}
            for c in recording.channels
        ],
        "labels": sorted({str(l) for l in events.labels}),
    }
    with open(os.path.join(out_dir, MANIFEST_NAME), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    recording.data.astype("<f4").tofile(os.path.join(out_dir, DATA_NAME))
    with open(os.path.join(out_dir, EVENTS_NAME), "w", encoding="utf-8") as fh:
        fh.write("onset_sample,label\n")
        for onset, label in zip(events.onsets, events.labels):
            fh.write(f"{int(onset)},{label}\n")


def _read_manifest(container_dir) -> dict:
    path = os.path.join(container_dir, MANIFEST_NAME)
    if not os.path.isfile(path):
        raise ContainerCorrupt(f"missing {MANIFEST_NAME}")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ContainerCorrupt(f"unparseable {MANIFEST_NAME}: {exc}") from exc


def _read_events(container_dir) -> list[tuple[int, str]]:
    path = os.path.join(container_dir, EVENTS_NAME)
    if not os.path.isfile(path):
        raise ContainerCorrupt(f"missing {EVENTS_NAME}")
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    if not lines or lines[0] != "onset_sample,label":
        raise ContainerCorrupt("events.csv must start with header 'onset_sample,label'")
    rows = []
    for ln in lines[1:]:
        onset_str, _, label = ln.partition(",")
        try:
            rows.append((int(onset_str), label))
        except ValueError as exc:
            raise ContainerCorrupt(f"bad events.csv row {ln!r}") from exc
    return rows


def read_container(container_dir) -> tuple[Recording, EventList]:
    """Load a container, raising ContainerCorrupt on any format violation."""
    report = validate_container(container_dir)
    if not report.ok:
        raise ContainerCorrupt("; ".join(report.violations))
    manifest = _read_manifest(container_dir)
    n_channels, n_samples = manifest["n_channels"], manifest["n_samples"]
    data = np.fromfile(os.path.join(container_dir, DATA_NAME), dtype="<f4")
    data = data.reshape(n_channels, n_samples).astype(float)
    channels = [
        ChannelMeta(c["name"], region=c.get("region"), hemisphere=c.get("hemisphere"))
        for c in manifest["channels"]
    ]
    recording = Recording(manifest["participant_id"], manifest["fs"], channels, data)
    rows = _read_events(container_dir)
    events = EventList([r[0] for r in rows], [r[1] for r in rows])
    return recording, events


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


_REQUIRED_MANIFEST_KEYS = (
    "format_version",
    "participant_id",
    "fs",
    "n_channels",
    "n_samples",
    "dtype",
    "byte_order",
    "order",
    "channels",
    "labels",
)


def validate_container(container_dir) -> ValidationReport:
    """Check every container invariant, collecting violations instead of
    stopping at the first."""
    report = ValidationReport()
    add = report.violations.append
    if not os.path.isdir(container_dir):
        add(f"not a directory: {container_dir}")
        return report

    try:
        manifest = _read_manifest(container_dir)
    except ContainerCorrupt as exc:
        add(str(exc))
        return report

    for key in _REQUIRED_MANIFEST_KEYS:
        if key not in manifest:
            add(f"manifest missing key {key!r}")
    if report.violations:
        return report

    if manifest["format_version"] != FORMAT_VERSION:
        add(f"unsupported format_version {manifest['format_version']!r}")
    if manifest["dtype"] != "float32":
        add(f"unsupported dtype {manifest['dtype']!r}")
    if manifest["byte_order"] != "little":
        add(f"unsupported byte_order {manifest['byte_order']!r}")
    if manifest["order"] != "row-major":
        add(f"unsupported order {manifest['order']!r}")
    if not (isinstance(manifest["fs"], (int, float)) and manifest["fs"] > 0):
        add(f"fs must be positive, got {manifest['fs']!r}")

    n_channels, n_samples = manifest["n_channels"], manifest["n_samples"]
    if not (isinstance(n_channels, int) and n_channels >= 1):
        add(f"n_channels must be a positive integer, got {n_channels!r}")
    if not (isinstance(n_samples, int) and n_samples >= 1):
        add(f"n_samples must be a positive integer, got {n_samples!r}")
    channels = manifest["channels"]
    if isinstance(n_channels, int) and len(channels) != n_channels:
        add(f"{len(channels)} channel entries for n_channels={n_channels}")
    names = [c.get("name") for c in channels]
    if any(not n for n in names):
        add("channel names must be non-empty")
    if len(set(names)) != len(names):
        add("channel names must be unique")

    data_path = os.path.join(container_dir, DATA_NAME)
    if not os.path.isfile(data_path):
        add(f"missing {DATA_NAME}")
    elif isinstance(n_channels, int) and isinstance(n_samples, int):
        expected = n_channels * n_samples * _BYTES_PER_SAMPLE
        actual = os.path.getsize(data_path)
        if actual != expected:
            add(f"data.bin holds {actual} bytes, manifest shape implies {expected}")
        else:
            samples = np.fromfile(data_path, dtype="<f4")
            if not np.isfinite(samples).all():
                add("data.bin contains non-finite samples")

    try:
        rows = _read_events(container_dir)
    except ContainerCorrupt as exc:
        add(str(exc))
        return report
    onsets = [r[0] for r in rows]
    declared = set(manifest["labels"])
    if any(o < 0 for o in onsets):
        add("event onsets must be non-negative")
    if any(b <= a for a, b in zip(onsets, onsets[1:])):
        add("event onsets must be strictly increasing")
    if isinstance(n_samples, int):
        past_end = [i for i, o in enumerate(onsets) if o >= n_samples]
        if past_end:
            add(f"event(s) {past_end} start at or past the end of the data")
    undeclared = sorted({r[1] for r in rows} - declared)
    if undeclared:
        add(f"events use labels not declared in the manifest: {undeclared}")
    return report
