"""Command-line interface: score, report, gen, serve.

Exit codes: 0 success, 2 input/validation error, 3 scoring-asset invariant
failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .model import ErgoKitError, FilterPolicy, InvalidSpec
from .filters import filter_outliers
from .ingest import load_dataset
from .report import build_report, report_from_scored_csv, write_report, write_scored_csv
from .scoring import score_dataset
from .synth import generate_synthetic
from .tables import AssetInvariantError, load_asset

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_ASSET = 3


def _cmd_score(args) -> int:
    try:
        asset = load_asset(args.asset)
    except AssetInvariantError as err:
        print(f"asset invariant failure: {err}", file=sys.stderr)
        return EXIT_ASSET
    except (OSError, ValueError, KeyError) as err:
        print(f"cannot load asset: {err}", file=sys.stderr)
        return EXIT_ASSET
    try:
        policy = FilterPolicy(min_confidence=args.min_confidence,
                              hampel_window=args.hampel_window,
                              hampel_k=args.hampel_k)
        dataset = load_dataset(args.manifest, lenient=args.lenient)
        if 0 < len(dataset.frames) >= policy.hampel_window:
            dataset = filter_outliers(dataset, policy)
    except ErgoKitError as err:
        print(f"validation error: {err}", file=sys.stderr)
        return EXIT_VALIDATION

    t0 = time.perf_counter()
    scored = score_dataset(dataset, asset)
    runtime = time.perf_counter() - t0

    out_dir = Path(args.out or f"{dataset.id}_scored")
    out_dir.mkdir(parents=True, exist_ok=True)
    write_scored_csv(scored, out_dir / "scored.csv")
    report = build_report(scored, runtime_s=runtime)
    write_report(report, out_dir / "report.json")
    print(json.dumps({
        "dataset": dataset.id,
        "frames": len(dataset.frames),
        "excluded": len(dataset.excluded),
        "scored": int(len(scored.frame_ids)),
        "runtime_s": round(runtime, 4),
        "out": str(out_dir),
    }))
    return EXIT_OK


def _cmd_report(args) -> int:
    try:
        report = report_from_scored_csv(args.scored, worst_k=args.worst)
    except ErgoKitError as err:
        print(f"validation error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as err:
        print(f"cannot read {args.scored}: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    json.dump(report, sys.stdout, indent=1)
    print()
    return EXIT_OK


def _cmd_gen(args) -> int:
    try:
        spec = json.loads(Path(args.spec).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as err:
        print(f"cannot read generator spec: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        manifest = generate_synthetic(spec, args.out or ".", seed=args.seed)
    except (InvalidSpec, ErgoKitError) as err:
        print(f"invalid generator spec: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    print(str(manifest))
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .server import serve

    try:
        serve(args.data, port=args.port, host=args.host)
    except Exception as err:  # startup failures must exit nonzero
        print(f"server failed: {err}", file=sys.stderr)
        return 1
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ergokit",
                                     description="Posture-risk scoring and analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="score a dataset and write scored CSV + report")
    p.add_argument("manifest")
    p.add_argument("--asset", default=None, help="scoring asset JSON (default: bundled)")
    p.add_argument("--min-confidence", type=float, default=0.0)
    p.add_argument("--hampel-window", type=int, default=11)
    p.add_argument("--hampel-k", type=float, default=3.0)
    p.add_argument("--lenient", action="store_true",
                   help="skip unparseable rows instead of failing")
    p.add_argument("--out", default=None, help="output directory")
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("report", help="rebuild a report from a scored CSV")
    p.add_argument("scored")
    p.add_argument("--worst", type=int, default=10)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("gen", help="generate a synthetic dataset")
    p.add_argument("spec")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, help="output directory")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("serve", help="run the HTTP query service")
    p.add_argument("--port", type=int, default=8077)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data", default=None, help="directory scanned for dataset manifests")
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
