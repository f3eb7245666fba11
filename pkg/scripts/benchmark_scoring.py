#!/usr/bin/env python3
"""Time the scoring and aggregation pipeline at the published dataset scale.

The release target is score + full table/gauge aggregation under one
second for 15,861 frames.
"""
import argparse
import pathlib
import sys
import time

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from ergokit.model import Dataset, Side, SCORED_JOINTS  # noqa: E402
from ergokit.synth import build_frames  # noqa: E402
from ergokit.scoring import score_dataset  # noqa: E402
from ergokit.aggregate import gauge_distribution, table_aggregate, timeline_window  # noqa: E402


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--frames", type=int, default=15_861)
    parser.add_argument("--fps", type=float, default=30.0)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    spec = {"duration_s": args.frames / args.fps, "fps": args.fps,
            "noise_deg": 1.0, "period_s": 9.0,
            "joints": {j.key: {"baseline_deg": 30, "amplitude_deg": 25}
                       for j in SCORED_JOINTS}}
    frames = build_frames(spec, seed=0)[:args.frames]
    dataset = Dataset("bench", tuple(frames), args.fps)
    dataset.columns()

    for rep in range(args.repeat):
        t0 = time.perf_counter()
        scored = score_dataset(dataset)
        t1 = time.perf_counter()
        for side in (Side.LEFT, Side.RIGHT):
            for tid in "ABC":
                table_aggregate(scored, side, tid)
        t2 = time.perf_counter()
        for joint in SCORED_JOINTS:
            gauge_distribution(scored, joint)
        t3 = time.perf_counter()
        timeline_window(scored, list(SCORED_JOINTS), 0.0,
                        args.frames / args.fps, 500)
        t4 = time.perf_counter()
        print(f"run {rep}: score {t1 - t0:.3f}s  tables {t2 - t1:.3f}s  "
              f"gauges {t3 - t2:.3f}s  timeline {t4 - t3:.3f}s  "
              f"total {t4 - t0:.3f}s  ({len(scored)} frames)")


if __name__ == "__main__":
    main()
