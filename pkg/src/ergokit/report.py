"""Scored output files and the triage report."""
from __future__ import annotations

import csv
import json
from collections import Counter
from pathlib import Path
from typing import Optional

import numpy as np

from .model import BodyPart, Dataset, SchemaMismatch, Side
from .scoring import ACTION_LEVEL_NAMES, ScoredDataset
from .ingest import format_float

SCORED_COLUMNS = (
    "frame_index", "timestamp_s", "side",
    "neck", "trunk", "legs", "upper_arm", "lower_arm", "wrist",
    "table_a", "load_score", "score_a",
    "table_b", "coupling_score", "score_b",
    "table_c", "activity_score", "grand", "action_level", "image_ref",
)

GRAND_MAX = 15


def write_scored_csv(scored: ScoredDataset, path: str | Path) -> None:
    """One row per (frame, side) with every intermediate score."""
    cols = scored.dataset.columns()
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SCORED_COLUMNS)
        for side in (Side.LEFT, Side.RIGHT):
            ss = scored.sides[side]
            for pos, fid in enumerate(scored.frame_ids):
                frame = scored.dataset.frames[fid]
                writer.writerow([
                    int(fid), format_float(float(scored.timestamps[pos])), side.value,
                    int(ss.joint["neck"][pos]), int(ss.joint["trunk"][pos]),
                    int(ss.joint["leg"][pos]), int(ss.joint["upper_arm"][pos]),
                    int(ss.joint["lower_arm"][pos]), int(ss.joint["wrist"][pos]),
                    int(ss.table_a[pos]), int(ss.load_score[pos]), int(ss.score_a[pos]),
                    int(ss.table_b[pos]), int(ss.coupling_score[pos]), int(ss.score_b[pos]),
                    int(ss.table_c[pos]), int(ss.activity_score[pos]), int(ss.grand[pos]),
                    scored.action_level_name(int(ss.action_code[pos])),
                    frame.image_ref or "",
                ])


def read_scored_csv(path: str | Path) -> list[dict]:
    rows = []
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != SCORED_COLUMNS:
            raise SchemaMismatch("<header>", 0, "not a scored CSV")
        for i, raw in enumerate(reader, start=1):
            try:
                rows.append({
                    "frame_index": int(raw["frame_index"]),
                    "timestamp_s": float(raw["timestamp_s"]),
                    "side": raw["side"],
                    "grand": int(raw["grand"]),
                    "action_level": raw["action_level"],
                    "image_ref": raw["image_ref"] or None,
                })
            except (ValueError, KeyError) as err:
                raise SchemaMismatch("<row>", i, str(err))
    return rows


def _distributions(sides: dict) -> dict:
    out = {}
    for side_name, (grands, levels) in sides.items():
        grand_hist = [0] * GRAND_MAX
        for g in grands:
            grand_hist[g - 1] += 1
        out[side_name] = {
            "grand_histogram": grand_hist,
            "action_levels": {name: int(levels.get(name, 0)) for name in ACTION_LEVEL_NAMES},
        }
    return out


def build_report(scored: ScoredDataset, runtime_s: Optional[float] = None,
                 worst_k: int = 10) -> dict:
    """Dataset summary, per-side distributions, and the worst-K frame triage."""
    ds = scored.dataset
    sides = {}
    worst: list[dict] = []
    for side in (Side.LEFT, Side.RIGHT):
        ss = scored.sides[side]
        levels = Counter(scored.action_level_name(int(c)) for c in ss.action_code)
        sides[side.value] = ([int(g) for g in ss.grand], levels)
        order = np.argsort(-ss.grand, kind="stable")[:worst_k]
        for pos in order:
            fid = int(scored.frame_ids[pos])
            worst.append({
                "frame": fid, "side": side.value,
                "grand": int(ss.grand[pos]),
                "action_level": scored.action_level_name(int(ss.action_code[pos])),
                "timestamp_s": float(scored.timestamps[pos]),
                "image_ref": ds.frames[fid].image_ref,
            })
    worst.sort(key=lambda w: (-w["grand"], w["frame"], w["side"]))
    worst = worst[:worst_k]

    dist = _distributions(sides)
    totals = Counter()
    for side_name in dist:
        totals.update(dist[side_name]["action_levels"])
    duration = float(ds.frames[-1].timestamp_s - ds.frames[0].timestamp_s) if ds.frames else 0.0
    report = {
        "dataset": {
            "id": ds.id,
            "frames": len(ds.frames),
            "excluded": len(ds.excluded),
            "scored": int(len(scored.frame_ids)),
            "fps": ds.fps,
            "duration_s": duration,
        },
        "asset": {"version": scored.asset.version, "checksum": scored.asset.checksum},
        "sides": dist,
        "action_levels_total": {name: int(totals.get(name, 0)) for name in ACTION_LEVEL_NAMES},
        "worst_frames": worst,
        "scoring_diagnostics": len(scored.diagnostics),
    }
    if runtime_s is not None:
        report["runtime_s"] = round(runtime_s, 4)
    return report


def report_from_scored_csv(path: str | Path, worst_k: int = 10) -> dict:
    """Rebuild the distribution part of a report from a scored CSV."""
    rows = read_scored_csv(path)
    sides: dict = {}
    for side_name in (Side.LEFT.value, Side.RIGHT.value):
        side_rows = [r for r in rows if r["side"] == side_name]
        levels = Counter(r["action_level"] for r in side_rows)
        sides[side_name] = ([r["grand"] for r in side_rows], levels)
    dist = _distributions(sides)
    totals = Counter()
    for side_name in dist:
        totals.update(dist[side_name]["action_levels"])
    worst = sorted(rows, key=lambda r: (-r["grand"], r["frame_index"], r["side"]))[:worst_k]
    return {
        "rows": len(rows),
        "sides": dist,
        "action_levels_total": {name: int(totals.get(name, 0)) for name in ACTION_LEVEL_NAMES},
        "worst_frames": [{"frame": r["frame_index"], "side": r["side"], "grand": r["grand"],
                          "action_level": r["action_level"], "timestamp_s": r["timestamp_s"],
                          "image_ref": r["image_ref"]} for r in worst],
    }


def write_report(report: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(report, indent=1) + "\n", encoding="utf-8")
