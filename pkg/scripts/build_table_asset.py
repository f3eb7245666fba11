#!/usr/bin/env python3
"""Regenerate the bundled scoring asset (src/ergokit/assets/reba_tables.json).

Tables are entered here in the layout of the printed worksheet (rows as
published) and permuted programmatically into the dimension order the
engine uses, so the transcription can be eyeballed against the sheet.
"""
import json
import pathlib

import numpy as np

# Worksheet layout: rows = trunk 1..5, cols = neck 1..3 x legs 1..4.
TABLE_A_SHEET = [
    # neck=1          neck=2          neck=3
    [1, 2, 3, 4,    1, 2, 3, 4,    3, 3, 5, 6],   # trunk 1
    [2, 3, 4, 5,    3, 4, 5, 6,    4, 5, 6, 7],   # trunk 2
    [2, 4, 5, 6,    4, 5, 6, 7,    5, 6, 7, 8],   # trunk 3
    [3, 5, 6, 7,    5, 6, 7, 8,    6, 7, 8, 9],   # trunk 4
    [4, 6, 7, 8,    6, 7, 8, 9,    7, 8, 9, 9],   # trunk 5
]

# Worksheet layout: rows = upper_arm 1..6, cols = lower_arm 1..2 x wrist 1..3.
TABLE_B_SHEET = [
    # la=1       la=2
    [1, 2, 2,   1, 2, 3],   # upper arm 1
    [1, 2, 3,   2, 3, 4],   # upper arm 2
    [3, 4, 5,   4, 5, 5],   # upper arm 3
    [4, 5, 5,   5, 6, 7],   # upper arm 4
    [6, 7, 8,   7, 8, 8],   # upper arm 5
    [7, 8, 8,   8, 9, 9],   # upper arm 6
]

# Worksheet layout: rows = score A 1..12, cols = score B 1..12.
TABLE_C_SHEET = [
    [1, 1, 1, 2, 3, 3, 4, 5, 6, 7, 7, 7],
    [1, 2, 2, 3, 4, 4, 5, 6, 6, 7, 7, 8],
    [2, 3, 3, 3, 4, 5, 6, 7, 7, 8, 8, 8],
    [3, 4, 4, 4, 5, 6, 7, 8, 8, 9, 9, 9],
    [4, 4, 4, 5, 6, 7, 8, 8, 9, 9, 9, 9],
    [6, 6, 6, 7, 8, 8, 9, 9, 10, 10, 10, 10],
    [7, 7, 7, 8, 9, 9, 9, 10, 10, 11, 11, 11],
    [8, 8, 8, 9, 10, 10, 10, 10, 10, 11, 11, 11],
    [9, 9, 9, 10, 10, 10, 11, 11, 11, 12, 12, 12],
    [10, 10, 10, 11, 11, 11, 11, 12, 12, 12, 12, 12],
    [11, 11, 11, 11, 12, 12, 12, 12, 12, 12, 12, 12],
    [12, 12, 12, 12, 12, 12, 12, 12, 12, 12, 12, 12],
]


def build():
    # Sheet A indexed [trunk, neck, legs] -> engine order [neck, legs, trunk].
    a_sheet = np.array(TABLE_A_SHEET).reshape(5, 3, 4)
    a = np.transpose(a_sheet, (1, 2, 0))
    assert a[2 - 1, 3 - 1, 5 - 1] == 8  # worksheet example: neck 2, legs 3, trunk 5

    # Sheet B indexed [upper_arm, lower_arm, wrist] -> [lower_arm, wrist, upper_arm].
    b_sheet = np.array(TABLE_B_SHEET).reshape(6, 2, 3)
    b = np.transpose(b_sheet, (1, 2, 0))

    c = np.array(TABLE_C_SHEET)
    assert c.shape == (12, 12)

    for name, t in (("A", a), ("B", b), ("C", c)):
        for axis in range(t.ndim):
            if not (np.diff(t, axis=axis) >= 0).all():
                raise AssertionError(f"table {name} not monotone along axis {axis}")

    asset = {
        "version": "reba-worksheet-v1",
        "tables": {
            "A": {
                "dims": [["neck", 3], ["legs", 4], ["trunk", 5]],
                "vertical_dim": "trunk",
                "cells": a.flatten().tolist(),
            },
            "B": {
                "dims": [["lower_arm", 2], ["wrist", 3], ["upper_arm", 6]],
                "vertical_dim": "upper_arm",
                "cells": b.flatten().tolist(),
            },
            "C": {
                "dims": [["score_a", 12], ["score_b", 12]],
                "vertical_dim": "score_a",
                "cells": c.flatten().tolist(),
            },
        },
        "angle_bands": {
            "trunk": {
                "valid_range": [-30.0, 120.0],
                "bands": [
                    {"lo": -30.0, "hi": -20.0, "score": 3},
                    {"lo": -20.0, "hi": -5.0, "score": 2},
                    {"lo": -5.0, "hi": 5.0, "score": 1},
                    {"lo": 5.0, "hi": 20.0, "score": 2},
                    {"lo": 20.0, "hi": 60.0, "score": 3},
                    {"lo": 60.0, "hi": 120.0, "score": 4},
                ],
                "modifiers": {"twist": 1, "side_bend": 1},
                "score_range": [1, 5],
            },
            "neck": {
                "valid_range": [-60.0, 60.0],
                "bands": [
                    {"lo": -60.0, "hi": -10.0, "score": 2},
                    {"lo": -10.0, "hi": 20.0, "score": 1},
                    {"lo": 20.0, "hi": 60.0, "score": 2},
                ],
                "modifiers": {"twist": 1, "side_bend": 1},
                "score_range": [1, 3],
            },
            "leg": {
                "valid_range": [0.0, 150.0],
                "bands": [
                    {"lo": 0.0, "hi": 30.0, "score": 1},
                    {"lo": 30.0, "hi": 60.0, "score": 2},
                    {"lo": 60.0, "hi": 150.0, "score": 3},
                ],
                "modifiers": {"unilateral_stance": 1},
                "score_range": [1, 4],
            },
            "upper_arm": {
                "valid_range": [-60.0, 180.0],
                "bands": [
                    {"lo": -60.0, "hi": -20.0, "score": 2},
                    {"lo": -20.0, "hi": 20.0, "score": 1},
                    {"lo": 20.0, "hi": 45.0, "score": 2},
                    {"lo": 45.0, "hi": 90.0, "score": 3},
                    {"lo": 90.0, "hi": 180.0, "score": 4},
                ],
                "modifiers": {"abduction": 1, "shoulder_raised": 1, "arm_supported": -1},
                "score_range": [1, 6],
            },
            "lower_arm": {
                "valid_range": [0.0, 150.0],
                "bands": [
                    {"lo": 0.0, "hi": 60.0, "score": 2},
                    # Safe band is hi-inclusive: 100.0 scores 1.
                    {"lo": 60.0, "hi": 100.0, "score": 1, "closed": True},
                    {"lo": 100.0, "hi": 150.0, "score": 2},
                ],
                "modifiers": {},
                "score_range": [1, 2],
            },
            "wrist": {
                "valid_range": [-90.0, 90.0],
                "bands": [
                    {"lo": -90.0, "hi": -15.0, "score": 2},
                    {"lo": -15.0, "hi": 15.0, "score": 1},
                    {"lo": 15.0, "hi": 90.0, "score": 2},
                ],
                "modifiers": {"twist": 1},
                "score_range": [1, 3],
            },
        },
        "load_bands": {"light_below_kg": 5.0, "heavy_above_kg": 10.0, "shock_bonus": 1},
        "coupling_scores": {"good": 0, "fair": 1, "poor": 2, "unacceptable": 3},
        "action_levels": [
            {"max_grand": 1, "level": "negligible"},
            {"max_grand": 3, "level": "low"},
            {"max_grand": 7, "level": "medium"},
            {"max_grand": 10, "level": "high"},
            {"max_grand": 15, "level": "very_high"},
        ],
        "activity": {
            "hold_tolerance_deg": 5.0,
            "hold_min_seconds": 60.0,
            "crossings_per_minute": 4,
            "rapid_change_deg": 30.0,
            "window_seconds": 60.0,
        },
    }
    return asset


def main():
    out = pathlib.Path(__file__).resolve().parents[1] / "src" / "ergokit" / "assets" / "reba_tables.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(build(), indent=1) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
