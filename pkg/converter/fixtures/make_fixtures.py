#!/usr/bin/env python3
"""Build the miniature source-dataset fixtures checked into fixtures/.

Creates one participant per dataset kind:
  audio_visual          BIDS-style layout, EDF data (uV), no electrodes.tsv
  music_reconstruction  BIDS-style layout, EDF data (mV), electrodes with regions
  ajile12               NWB-style HDF5 archive with trials + electrode locations

For every participant an expected/ entry is emitted: the float32 sample
matrix the converter must reproduce byte-exactly, plus the expected
manifest fields and events. Regenerate with: python3 make_fixtures.py
"""
import json
import os
import struct

import h5py
import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))


def edf_bytes(fs, record_seconds, n_records, labels, phys_dim, phys_min, phys_max,
              digital):
    """Minimal EDF: fixed header + signal headers + int16 records.

    `digital` is [n_signals x n_samples] int16; n_samples must equal
    n_records * fs * record_seconds.
    """
    n_signals = len(labels)
    spr = int(fs * record_seconds)

    def field(value, width):
        s = str(value)
        if len(s) > width:
            raise ValueError(f"field {s!r} exceeds {width} chars")
        return s.ljust(width).encode("ascii")

    header = b"".join([
        field("0", 8),
        field("fixture patient", 80),
        field("fixture recording", 80),
        field("01.01.20", 8),
        field("00.00.00", 8),
        field(256 * (1 + n_signals), 8),
        field("", 44),
        field(n_records, 8),
        field(record_seconds, 8),
        field(n_signals, 4),
    ])
    per_signal = [
        (labels, 16),
        (["fixture"] * n_signals, 80),       # transducer
        ([phys_dim] * n_signals, 8),
        ([phys_min] * n_signals, 8),
        ([phys_max] * n_signals, 8),
        ([-32768] * n_signals, 8),
        ([32767] * n_signals, 8),
        ([""] * n_signals, 80),              # prefiltering
        ([spr] * n_signals, 8),
        ([""] * n_signals, 32),              # reserved
    ]
    for values, width in per_signal:
        header += b"".join(field(v, width) for v in values)

    records = bytearray()
    for r in range(n_records):
        for sig in range(n_signals):
            chunk = digital[sig, r * spr : (r + 1) * spr]
            records += struct.pack(f"<{spr}h", *chunk.tolist())
    return bytes(header) + bytes(records)


def edf_physical_f32(digital, phys_min, phys_max, unit_scale):
    """The conversion the TS reader performs, in the same operation order."""
    gain = (phys_max - phys_min) / (32767.0 - (-32768.0))
    phys = (phys_min + (digital.astype(np.float64) - (-32768.0)) * gain) * unit_scale
    return phys.astype(np.float32)


def tsv(path, header, rows):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\t".join(header) + "\n")
        for row in rows:
            fh.write("\t".join(str(v) for v in row) + "\n")


def write_expected(name, data_f32, fs, channels, regions, events):
    out = os.path.join(HERE, "expected")
    os.makedirs(out, exist_ok=True)
    data_f32.astype("<f4").tofile(os.path.join(out, f"{name}.data.bin"))
    with open(os.path.join(out, f"{name}.json"), "w", encoding="utf-8") as fh:
        json.dump(
            {
                "fs": fs,
                "channels": channels,
                "regions": regions,
                "events": events,
                "n_samples": int(data_f32.shape[1]),
            },
            fh,
            indent=2,
        )


def build_audio_visual():
    rng = np.random.default_rng(1001)
    fs, seconds = 512, 10
    n = fs * seconds
    labels = ["G01", "G02"]
    t = np.arange(n) / fs
    digital = np.stack([
        (6000 * np.sin(2 * np.pi * 9 * t) + rng.integers(-2000, 2000, n)).astype(np.int16),
        (4000 * np.sin(2 * np.pi * 13 * t + 1.0) + rng.integers(-2000, 2000, n)).astype(np.int16),
    ])
    root = os.path.join(HERE, "audio_visual", "sub-01", "ieeg")
    os.makedirs(root, exist_ok=True)
    base = os.path.join(root, "sub-01_task-film")
    with open(base + "_ieeg.edf", "wb") as fh:
        fh.write(edf_bytes(fs, 1, seconds, labels, "uV", -500, 500, digital))
    with open(base + "_ieeg.json", "w", encoding="utf-8") as fh:
        json.dump({"SamplingFrequency": fs, "PowerLineFrequency": 50,
                   "iEEGReference": "average"}, fh, indent=2)
    tsv(base + "_channels.tsv", ["name", "type", "units"],
        [[l, "ECOG", "uV"] for l in labels])
    # alternating speech/music events plus one non-task row the converter skips
    rows, events = [], []
    kinds = ["speech", "music"]
    for i in range(20):
        onset = 0.25 + i * 0.45
        kind = kinds[i % 2]
        rows.append([f"{onset:.3f}", "0.4", kind])
        events.append([round(onset * fs), "Speech" if kind == "speech" else "Music"])
    rows.insert(10, ["4.99", "0.1", "break"])
    tsv(base + "_events.tsv", ["onset", "duration", "trial_type"], rows)

    expected = edf_physical_f32(digital, -500.0, 500.0, 1.0)
    write_expected("audio_visual-sub-01", expected, fs, labels, [None, None], events)


def build_music_reconstruction():
    rng = np.random.default_rng(2002)
    fs, seconds = 512, 12
    n = fs * seconds
    labels = ["ST01", "ST02"]
    t = np.arange(n) / fs
    digital = np.stack([
        (9000 * np.sin(2 * np.pi * 7 * t) + rng.integers(-3000, 3000, n)).astype(np.int16),
        (7000 * np.sin(2 * np.pi * 11 * t + 0.5) + rng.integers(-3000, 3000, n)).astype(np.int16),
    ])
    root = os.path.join(HERE, "music_reconstruction", "sub-01", "ieeg")
    os.makedirs(root, exist_ok=True)
    base = os.path.join(root, "sub-01_task-music")
    # mV physical units: the converter must normalize to uV (x1000)
    with open(base + "_ieeg.edf", "wb") as fh:
        fh.write(edf_bytes(fs, 1, seconds, labels, "mV", -0.5, 0.5, digital))
    with open(base + "_ieeg.json", "w", encoding="utf-8") as fh:
        json.dump({"SamplingFrequency": fs, "PowerLineFrequency": 60}, fh, indent=2)
    tsv(base + "_channels.tsv", ["name", "type", "units"],
        [[l, "ECOG", "mV"] for l in labels])
    tsv(os.path.join(root, "sub-01_electrodes.tsv"),
        ["name", "x", "y", "z", "region", "hemisphere"],
        [["ST01", "-42.1", "18.0", "3.5", "superior-temporal", "left"],
         ["ST02", "-44.8", "12.2", "1.0", "superior-temporal", "left"]])
    rows, events = [], []
    for i in range(20):
        onset = 0.3 + i * 0.55
        kind = "Singing" if i % 5 == 0 else "Music"  # 4 singing, 16 music
        rows.append([f"{onset:.3f}", "0.5", kind])
        events.append([round(onset * fs), kind])
    tsv(base + "_events.tsv", ["onset", "duration", "trial_type"], rows)

    expected = edf_physical_f32(digital, -0.5, 0.5, 1000.0)
    write_expected("music_reconstruction-sub-01", expected, fs, labels,
                   ["superior-temporal", "superior-temporal"], events)


def build_ajile12():
    rng = np.random.default_rng(3003)
    fs, seconds = 512.0, 8
    n = int(fs * seconds)
    n_channels = 3
    # stored directly in microvolts; conversion attribute 1e-6 declares volts
    data_uv = (40.0 * rng.standard_normal((n, n_channels))).astype(np.float32)
    root = os.path.join(HERE, "ajile12")
    os.makedirs(root, exist_ok=True)
    path = os.path.join(root, "sub-01.nwb")
    with h5py.File(path, "w") as fh:
        series = fh.create_group("acquisition/ElectricalSeries")
        d = series.create_dataset("data", data=data_uv)
        d.attrs["unit"] = "volts"
        d.attrs["conversion"] = np.float64(1e-6)
        st = series.create_dataset("starting_time", data=np.float64(0.0))
        st.attrs["rate"] = np.float64(fs)
        elec = fh.create_group("general/extracellular_ephys/electrodes")
        elec.create_dataset("id", data=np.arange(n_channels, dtype=np.int64))
        elec.create_dataset(
            "location",
            data=np.array([b"precentral gyrus", b"precentral gyrus", b"postcentral gyrus"]),
        )
        elec.create_dataset("hemisphere", data=np.array([b"left", b"left", b"left"]))
        trials = fh.create_group("intervals/trials")
        starts, labels = [], []
        cursor = 0.3
        for i in range(15):
            starts.append(cursor)
            labels.append("Move" if i % 5 < 2 else "Rest")  # 6 move, 9 rest
            cursor += 0.5
        trials.create_dataset("start_time", data=np.array(starts, dtype=np.float64))
        trials.create_dataset("label", data=np.array([l.encode() for l in labels]))

    events = [[round(s * fs), l] for s, l in zip(starts, labels)]
    expected = np.ascontiguousarray(
        (data_uv.astype(np.float64) * 1e-6 * 1e6).astype(np.float32).T
    )
    write_expected("ajile12-sub-01", expected, fs, ["elec0", "elec1", "elec2"],
                   ["precentral gyrus", "precentral gyrus", "postcentral gyrus"], events)


if __name__ == "__main__":
    build_audio_visual()
    build_music_reconstruction()
    build_ajile12()
    print("fixtures written under", HERE)
