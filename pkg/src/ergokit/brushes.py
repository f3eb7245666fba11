"""Declarative brushes and the linked-selection evaluation engine.

Brushes are predicates over scored frames. Multiple ranges or cells inside
one brush union together; across brushes the BrushSet combiner applies
(intersection by default). Evaluation never yields an excluded frame
because it operates on the scored frame ids only.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

import numpy as np

from .model import JointId, SchemaMismatch, Side, UnknownTable
from .scoring import ScoredDataset
from .aggregate import gauge_distribution, heatmap_cell, table_aggregate, table_layout

EXACT_ANGLE_TOLERANCE_DEG = 0.05


@dataclass(frozen=True)
class FrameIdSet:
    """Sorted, immutable set of frame indices."""

    ids: frozenset[int]

    @classmethod
    def of(cls, ids: Iterable[int]) -> "FrameIdSet":
        return cls(frozenset(int(i) for i in ids))

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, i: int) -> bool:
        return i in self.ids

    def __and__(self, other: "FrameIdSet") -> "FrameIdSet":
        return FrameIdSet(self.ids & other.ids)

    def __or__(self, other: "FrameIdSet") -> "FrameIdSet":
        return FrameIdSet(self.ids | other.ids)

    def sorted(self) -> list[int]:
        return sorted(self.ids)

    def to_array(self) -> np.ndarray:
        return np.array(self.sorted(), dtype=np.int64)


@dataclass(frozen=True)
class ScoreBinBrush:
    id: str
    table_id: str
    side: Side
    level: int
    attribute: str
    values: tuple[int, ...]
    active: bool = True

    kind = "score_bin"


@dataclass(frozen=True)
class HeatmapCellBrush:
    id: str
    table_id: str
    side: Side
    cells: tuple[tuple[int, int], ...]   # 0-based (row, col)
    active: bool = True

    kind = "heatmap_cell"


@dataclass(frozen=True)
class AngleRangeBrush:
    id: str
    joint: JointId
    ranges: tuple[tuple[float, float], ...]
    active: bool = True

    kind = "angle_range"

    def __post_init__(self):
        for lo, hi in self.ranges:
            if lo > hi:
                raise SchemaMismatch("ranges", 0, f"angle range not ordered: [{lo}, {hi}]")


@dataclass(frozen=True)
class TimeRangeBrush:
    id: str
    ranges: tuple[tuple[float, float], ...]
    active: bool = True

    kind = "time_range"

    def __post_init__(self):
        for lo, hi in self.ranges:
            if lo > hi:
                raise SchemaMismatch("ranges", 0, f"time range not ordered: [{lo}, {hi}]")


Brush = Union[ScoreBinBrush, HeatmapCellBrush, AngleRangeBrush, TimeRangeBrush]


@dataclass(frozen=True)
class BrushSet:
    brushes: tuple[Brush, ...] = ()
    combine: str = "intersection"

    def __post_init__(self):
        if self.combine not in ("intersection", "union"):
            raise SchemaMismatch("combine", 0, f"unknown combiner {self.combine!r}")
        ids = [b.id for b in self.brushes]
        if len(set(ids)) != len(ids):
            raise SchemaMismatch("id", 0, "brush ids must be unique")


def _full_set(scored: ScoredDataset) -> FrameIdSet:
    return FrameIdSet.of(scored.frame_ids.tolist())


def _mask_to_set(scored: ScoredDataset, mask: np.ndarray) -> FrameIdSet:
    return FrameIdSet.of(scored.frame_ids[mask].tolist())


def evaluate_brush(brush: Brush, scored: ScoredDataset) -> FrameIdSet:
    """Frames matched by one brush; inactive brushes do not constrain."""
    if not brush.active:
        return _full_set(scored)
    n = len(scored.frame_ids)
    mask = np.zeros(n, dtype=bool)

    if isinstance(brush, ScoreBinBrush):
        table = scored.asset.table(brush.table_id)
        if brush.attribute not in table.dim_names:
            raise SchemaMismatch("attribute", 0,
                                 f"{brush.attribute!r} is not a dimension of table {table.table_id}")
        values = scored.sides[brush.side].attribute(brush.attribute)
        card = table.cardinality(brush.attribute)
        for v in brush.values:
            if not 1 <= v <= card:
                raise SchemaMismatch("values", 0, f"bin {v} outside [1, {card}]")
            mask |= values == v
    elif isinstance(brush, HeatmapCellBrush):
        table = scored.asset.table(brush.table_id)
        ss = scored.sides[brush.side]
        values = {name: ss.attribute(name) for name in table.dim_names}
        r, c = heatmap_cell(table, values)
        vdim, hdims = table_layout(table)
        rows = table.cardinality(vdim)
        cols = 1
        for name in hdims:
            cols *= table.cardinality(name)
        for row, col in brush.cells:
            if not (0 <= row < rows and 0 <= col < cols):
                raise SchemaMismatch("cells", 0, f"cell ({row}, {col}) outside {rows}x{cols}")
            mask |= (r == row) & (c == col)
    elif isinstance(brush, AngleRangeBrush):
        angles = scored.angles(brush.joint)
        for lo, hi in brush.ranges:
            if lo == hi:
                mask |= np.abs(angles - lo) <= EXACT_ANGLE_TOLERANCE_DEG
            else:
                mask |= (angles >= lo) & (angles <= hi)
    elif isinstance(brush, TimeRangeBrush):
        ts = scored.timestamps
        for lo, hi in brush.ranges:
            mask |= (ts >= lo) & (ts <= hi)
    else:
        raise SchemaMismatch("type", 0, f"unknown brush type {type(brush).__name__}")
    return _mask_to_set(scored, mask)


def evaluate_composite(brush_set: BrushSet, scored: ScoredDataset) -> FrameIdSet:
    """Combine active brushes by intersection (default) or union."""
    active = [b for b in brush_set.brushes if b.active]
    if not active:
        return _full_set(scored)
    results = [evaluate_brush(b, scored) for b in active]
    combined = results[0]
    for r in results[1:]:
        combined = (combined & r) if brush_set.combine == "intersection" else (combined | r)
    return combined


def linked_counts(selection: FrameIdSet, scored: ScoredDataset,
                  joints: Optional[list[JointId]] = None,
                  timeline_max_points: int = 500) -> dict:
    """Full-scope and selected-scope aggregates for every registered view."""
    from .model import EmptyWindow, SCORED_JOINTS
    from .aggregate import timeline_window
    joints = joints if joints is not None else list(SCORED_JOINTS)
    sel = selection.ids
    payload: dict = {
        "selected_count": len(selection),
        "included_count": len(scored.frame_ids),
        "tables": {}, "gauges": {}, "timeline": None,
    }
    for side in (Side.LEFT, Side.RIGHT):
        per_side = {}
        for tid in ("A", "B", "C"):
            per_side[tid] = {
                "full": table_aggregate(scored, side, tid).to_json(),
                "selected": table_aggregate(scored, side, tid, sel).to_json(),
            }
        payload["tables"][side.value] = per_side
    for joint in joints:
        payload["gauges"][joint.key] = {
            "full": gauge_distribution(scored, joint).to_json(),
            "selected": gauge_distribution(scored, joint, sel).to_json(),
        }
    if len(scored.frame_ids):
        t0 = float(scored.timestamps[0])
        t1 = float(scored.timestamps[-1]) + 1.0 / scored.dataset.fps
        full = timeline_window(scored, joints, t0, t1, timeline_max_points)
        try:
            selected = timeline_window(scored, joints, t0, t1, timeline_max_points, sel)
        except EmptyWindow:
            selected = []
        payload["timeline"] = {"t0": t0, "t1": t1,
                               "full": [s.to_json() for s in full],
                               "selected": [s.to_json() for s in selected]}
    return payload


# ---------------------------------------------------------------------------
# Canonical JSON encoding


def brush_to_json(brush: Brush) -> dict:
    if isinstance(brush, ScoreBinBrush):
        return {"id": brush.id, "type": brush.kind, "table": brush.table_id,
                "side": brush.side.value, "level": brush.level,
                "attribute": brush.attribute, "values": list(brush.values),
                "active": brush.active}
    if isinstance(brush, HeatmapCellBrush):
        return {"id": brush.id, "type": brush.kind, "table": brush.table_id,
                "side": brush.side.value, "cells": [list(c) for c in brush.cells],
                "active": brush.active}
    if isinstance(brush, AngleRangeBrush):
        return {"id": brush.id, "type": brush.kind, "joint": brush.joint.key,
                "ranges": [list(r) for r in brush.ranges], "active": brush.active}
    if isinstance(brush, TimeRangeBrush):
        return {"id": brush.id, "type": brush.kind,
                "ranges": [list(r) for r in brush.ranges], "active": brush.active}
    raise SchemaMismatch("type", 0, f"unknown brush type {type(brush).__name__}")


def brush_from_json(data: dict) -> Brush:
    try:
        kind = data["type"]
        bid = str(data["id"])
        active = bool(data.get("active", True))
        if kind == "score_bin":
            return ScoreBinBrush(bid, str(data["table"]).upper(), Side(data["side"]),
                                 int(data.get("level", 1)), str(data["attribute"]),
                                 tuple(int(v) for v in data["values"]), active)
        if kind == "heatmap_cell":
            return HeatmapCellBrush(bid, str(data["table"]).upper(), Side(data["side"]),
                                    tuple((int(r), int(c)) for r, c in data["cells"]), active)
        if kind == "angle_range":
            return AngleRangeBrush(bid, JointId.parse(data["joint"]),
                                   tuple((float(lo), float(hi)) for lo, hi in data["ranges"]),
                                   active)
        if kind == "time_range":
            return TimeRangeBrush(bid,
                                  tuple((float(lo), float(hi)) for lo, hi in data["ranges"]),
                                  active)
    except (KeyError, TypeError, ValueError) as err:
        raise SchemaMismatch("brush", 0, f"bad brush JSON: {err}")
    raise SchemaMismatch("type", 0, f"unknown brush type {kind!r}")


def brush_set_to_json(brush_set: BrushSet) -> dict:
    return {"combine": brush_set.combine,
            "brushes": [brush_to_json(b) for b in brush_set.brushes]}


def brush_set_from_json(data: dict) -> BrushSet:
    if not isinstance(data, dict):
        raise SchemaMismatch("brush_set", 0, "expected a JSON object")
    return BrushSet(tuple(brush_from_json(b) for b in data.get("brushes", [])),
                    str(data.get("combine", "intersection")))
