"""Command-line driver.

Subcommands:
    synth     generate a synthetic container from a spec JSON
    features  dump the per-channel feature matrix of a container as CSV
    evaluate  run the two-mode evaluation, emitting summary.json + folds.csv
    validate  check a container against the format contract
    regions   cross-run region-contribution histogram CSV
    report    per-classifier per-mode mean/sd table across runs

Exit status 0 on success; failures print a machine-readable JSON error
object on stderr and exit nonzero.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .config import load_config
from .container import read_container, validate_container, write_container
from .errors import ConfigInvalid, ContainerCorrupt, IeegDecError, SpecInvalid
from .evaluation import (
    MODE_BEST,
    MODE_COMBINED,
    evaluate_participant,
    region_contributions,
    write_region_csv,
)
from .features import extract_matrix, write_feature_csv
from .signal import segment
from .synth import generate, spec_from_dict

SUMMARY_NAME = "summary.json"
FOLDS_NAME = "folds.csv"


def _fail(exc: Exception) -> int:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    print(json.dumps(payload), file=sys.stderr)
    return 2


def cmd_synth(args) -> int:
    with open(args.spec, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecInvalid(f"unparseable spec {args.spec}: {exc}") from exc
    recording, events = generate(spec_from_dict(doc))
    write_container(args.out, recording, events)
    print(f"wrote container: {args.out}")
    return 0


def cmd_features(args) -> int:
    recording, events = read_container(args.input)
    per_channel = segment(
        recording,
        events,
        window_seconds=args.window_seconds,
        alignment=args.alignment,
        feature_input=args.feature_input,
    )
    matrices = [extract_matrix(ws, recording.fs) for ws in per_channel]
    write_feature_csv(args.out, matrices)
    print(f"wrote features: {args.out}")
    return 0


def _summary_document(result, recording, config) -> dict:
    modes = {}
    for mode in (MODE_BEST, MODE_COMBINED):
        mean, sd = result.mean_sd_f1(mode)
        modes[mode] = {
            "per_fold_f1": result.mode_f1s(mode),
            "mean_f1": mean,
            "sd_f1": sd,
        }
    folds = [
        {
            "fold_index": r.fold_index,
            "mode": r.mode,
            "confusion": {"tp": r.confusion.tp, "fp": r.confusion.fp,
                          "fn": r.confusion.fn, "tn": r.confusion.tn},
            "precision": r.precision,
            "recall": r.recall,
            "f1": r.f1,
            "selected_channels": r.selected_channels,
            "selection_history": r.selection_history,
            "per_channel_validation_f1": r.per_channel_validation_f1,
        }
        for r in result.reports
    ]
    return {
        "format_version": "1",
        "participant_id": result.participant_id,
        "classifier": result.classifier_kind,
        "seed": result.seed,
        "config": config.to_dict(),
        "n_channels": result.n_channels,
        "channels": [
            {"name": c.name, "region": c.region, "hemisphere": c.hemisphere}
            for c in recording.channels
        ],
        "modes": modes,
        "selected_union": result.selected_union(),
        "folds": folds,
    }


def _write_folds_csv(path, result) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("fold,mode,tp,fp,fn,tn,precision,recall,f1,selected_channels\n")
        for r in result.reports:
            chans = ";".join(str(c) for c in r.selected_channels)
            fh.write(
                f"{r.fold_index},{r.mode},{r.confusion.tp},{r.confusion.fp},"
                f"{r.confusion.fn},{r.confusion.tn},{r.precision:.17g},"
                f"{r.recall:.17g},{r.f1:.17g},{chans}\n"
            )


def cmd_evaluate(args) -> int:
    recording, events = read_container(args.input)
    config = load_config(args.config)
    result = evaluate_participant(recording, events, config)
    os.makedirs(args.out, exist_ok=True)
    doc = _summary_document(result, recording, config)
    with open(os.path.join(args.out, SUMMARY_NAME), "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    _write_folds_csv(os.path.join(args.out, FOLDS_NAME), result)
    for mode in (MODE_BEST, MODE_COMBINED):
        mean, sd = result.mean_sd_f1(mode)
        print(f"{result.classifier_kind} {mode}: F1 {mean:.3f} +/- {sd:.3f}")
    return 0


def cmd_validate(args) -> int:
    report = validate_container(args.input)
    if report.ok:
        print("container valid: 0 violations")
        return 0
    for v in report.violations:
        print(f"violation: {v}")
    return 1


def _load_summary(run_dir) -> dict:
    path = os.path.join(run_dir, SUMMARY_NAME)
    if not os.path.isfile(path):
        raise ConfigInvalid(f"no {SUMMARY_NAME} in {run_dir}")
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def cmd_regions(args) -> int:
    from .signal import ChannelMeta

    selected_sets, metas = [], []
    for run_dir in args.runs:
        doc = _load_summary(run_dir)
        selected_sets.append(doc["selected_union"])
        metas.append(
            [
                ChannelMeta(c["name"], region=c.get("region"), hemisphere=c.get("hemisphere"))
                for c in doc["channels"]
            ]
        )
    write_region_csv(args.out, region_contributions(selected_sets, metas))
    print(f"wrote region histogram: {args.out}")
    return 0


def cmd_report(args) -> int:
    rows = {}
    for run_dir in args.runs:
        doc = _load_summary(run_dir)
        for mode, stats in doc["modes"].items():
            rows.setdefault((doc["classifier"], mode), []).append(stats["mean_f1"])
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("classifier,mode,n_runs,mean_f1,sd_f1\n")
        for (kind, mode) in sorted(rows):
            f1s = np.array(rows[(kind, mode)])
            sd = float(np.std(f1s, ddof=1)) if f1s.size > 1 else 0.0
            fh.write(f"{kind},{mode},{f1s.size},{float(np.mean(f1s)):.17g},{sd:.17g}\n")
    print(f"wrote report: {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ieegdec",
        description="Single-participant iEEG decoding pipeline",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic container")
    p.add_argument("--spec", required=True, help="synth spec JSON file")
    p.add_argument("--out", required=True, help="output container directory")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("features", help="dump the feature matrix as CSV")
    p.add_argument("--in", dest="input", required=True, help="container directory")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--window-seconds", type=float, default=2.0)
    p.add_argument("--alignment", choices=("onset", "centered"), default="onset")
    p.add_argument("--feature-input", choices=("envelope", "gamma_band"), default="envelope")
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("evaluate", help="run the two-mode evaluation")
    p.add_argument("--in", dest="input", required=True, help="container directory")
    p.add_argument("--config", required=True, help="run config JSON")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("validate", help="validate a container directory")
    p.add_argument("--in", dest="input", required=True, help="container directory")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("regions", help="region contributions across runs")
    p.add_argument("--runs", nargs="+", required=True, help="evaluate output directories")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_regions)

    p = sub.add_parser("report", help="mean/sd F1 table across runs")
    p.add_argument("--runs", nargs="+", required=True, help="evaluate output directories")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except IeegDecError as exc:
        return _fail(exc)
    except FileNotFoundError as exc:
        return _fail(ContainerCorrupt(str(exc)))


if __name__ == "__main__":
    sys.exit(main())
