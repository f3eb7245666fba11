"""Aggregated structures behind the views: augmented score tables
(hierarchical marginal histograms + heatmap), gauge angular distributions,
min-max decimated timelines, and representative-frame selection.

All functions are pure over a ScoredDataset; ``selection`` narrows the
counted frames and never touches the excluded ones (those were already
dropped when scoring).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

import numpy as np

from .model import BodyPart, EmptyWindow, JointId, Side, UnknownJoint, UnknownTable
from .scoring import RISK_CLASSES, ScoredDataset, risk_class
from .tables import ScoreTable

_RISK_CODE = {name: i for i, name in enumerate(RISK_CLASSES)}


@dataclass(frozen=True)
class HistogramNode:
    """One histogram; parent_bin is None for the root of a hierarchy."""

    parent_bin: Optional[int]
    bin_counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.bin_counts)


@dataclass(frozen=True)
class HierarchicalHistogram:
    orientation: str                      # "horizontal" | "vertical"
    attributes: tuple[str, ...]           # dimension names, one per level
    levels: tuple[tuple[HistogramNode, ...], ...]

    def to_json(self) -> dict:
        return {
            "orientation": self.orientation,
            "attributes": list(self.attributes),
            "levels": [[{"parent_bin": h.parent_bin, "bin_counts": list(h.bin_counts)}
                        for h in level] for level in self.levels],
        }


@dataclass(frozen=True)
class Heatmap:
    rows: int
    cols: int
    cell_counts: np.ndarray   # [rows, cols] int
    cell_scores: np.ndarray   # [rows, cols] int, the underlying table values
    row_dim: str
    col_dims: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "rows": self.rows, "cols": self.cols,
            "row_dim": self.row_dim, "col_dims": list(self.col_dims),
            "cell_counts": self.cell_counts.tolist(),
            "cell_scores": self.cell_scores.tolist(),
        }


@dataclass(frozen=True)
class TableAggregate:
    table_id: str
    side: Side
    n: int
    histograms: tuple[HierarchicalHistogram, ...]
    heatmap: Heatmap

    def to_json(self) -> dict:
        return {
            "table": self.table_id, "side": self.side.value, "n": self.n,
            "histograms": [h.to_json() for h in self.histograms],
            "heatmap": self.heatmap.to_json(),
        }


def _selection_mask(scored: ScoredDataset, selection) -> np.ndarray:
    if selection is None:
        return np.ones(len(scored.frame_ids), dtype=bool)
    sel = np.asarray(sorted(selection), dtype=np.int64)
    return np.isin(scored.frame_ids, sel)


def table_layout(table: ScoreTable) -> tuple[str, tuple[str, ...]]:
    """(vertical dim, horizontal dims in hierarchy order) for a table."""
    horizontal = tuple(n for n in table.dim_names if n != table.vertical_dim)
    return table.vertical_dim, horizontal


def heatmap_cell(table: ScoreTable, values: dict[str, np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """(row, col) 0-based heatmap coordinates for per-frame table inputs."""
    vdim, hdims = table_layout(table)
    row = values[vdim] - 1
    col = np.zeros_like(row)
    for name in hdims:
        col = col * table.cardinality(name) + (values[name] - 1)
    return row, col


def _heatmap_scores(table: ScoreTable) -> np.ndarray:
    vdim, hdims = table_layout(table)
    order = [table.dim_names.index(vdim)] + [table.dim_names.index(h) for h in hdims]
    moved = np.transpose(table.cells, order)
    return moved.reshape(table.cardinality(vdim), -1)


def table_aggregate(scored: ScoredDataset, side: Side, table_id: str,
                    selection=None) -> TableAggregate:
    """Histogram set plus heatmap for one augmented score table."""
    table = scored.asset.table(table_id)
    mask = _selection_mask(scored, selection)
    ss = scored.sides[side]
    values = {name: ss.attribute(name)[mask] for name in table.dim_names}
    n = int(mask.sum())

    vdim, hdims = table_layout(table)
    histograms = []

    def counts(name: str, within: np.ndarray) -> tuple[int, ...]:
        card = table.cardinality(name)
        return tuple(int(c) for c in np.bincount(values[name][within] - 1, minlength=card))

    everything = np.ones(n, dtype=bool)
    # horizontal hierarchy: level 1 = first horizontal dim, level 2 split by its bins
    levels = [tuple([HistogramNode(None, counts(hdims[0], everything))])]
    if len(hdims) > 1:
        parent_card = table.cardinality(hdims[0])
        second = []
        for b in range(parent_card):
            within = values[hdims[0]] == b + 1
            second.append(HistogramNode(b, counts(hdims[1], within)))
        levels.append(tuple(second))
    histograms.append(HierarchicalHistogram("horizontal", hdims, tuple(levels)))
    histograms.append(HierarchicalHistogram(
        "vertical", (vdim,), ((HistogramNode(None, counts(vdim, everything)),),)))

    rows = table.cardinality(vdim)
    cols = 1
    for name in hdims:
        cols *= table.cardinality(name)
    r, c = heatmap_cell(table, values)
    flat = np.bincount(r * cols + c, minlength=rows * cols)
    heatmap = Heatmap(rows, cols, flat.reshape(rows, cols), _heatmap_scores(table),
                      vdim, hdims)
    return TableAggregate(table.table_id, side, n, tuple(histograms), heatmap)


# ---------------------------------------------------------------------------
# Gauges


class GaugeEntry(NamedTuple):
    frame_index: int
    angle_deg: float
    joint_score: int
    risk: str


@dataclass(frozen=True)
class GaugeSeries:
    joint: JointId
    valid_range: tuple[float, float]
    score_range: tuple[int, int]
    entries: tuple[GaugeEntry, ...]
    density_bins: tuple[int, ...]        # 1-degree bins over valid_range
    bands: tuple[dict, ...]              # angle bands with score + risk class

    def to_json(self) -> dict:
        return {
            "joint": self.joint.key,
            "valid_range": list(self.valid_range),
            "score_range": list(self.score_range),
            "entries": [{"frame": e.frame_index, "angle": e.angle_deg,
                         "score": e.joint_score, "risk": e.risk} for e in self.entries],
            "density_bins": list(self.density_bins),
            "bands": list(self.bands),
            # render variants a client may offer: plain arcs, traffic-light
            # colors, or color plus score-proportional line lengths
            "variants": ["plain", "color", "color_length"],
        }


def gauge_distribution(scored: ScoredDataset, joint: JointId,
                       selection=None) -> GaugeSeries:
    """Angular distribution with per-entry scores and traffic-light classes."""
    cfg = scored.asset.angle_bands.get(joint.body_part)
    if cfg is None:
        raise UnknownJoint(joint.key)
    mask = _selection_mask(scored, selection)
    ids = scored.frame_ids[mask]
    angles = scored.angles(joint)[mask]
    jscores = scored.joint_scores(joint)[mask]

    smin, smax = cfg.score_range
    risks = np.where(jscores <= smin, 0, np.where(jscores >= smax, 2, 1))
    risk_names = np.array(RISK_CLASSES, dtype=object)[risks]
    entries = tuple(map(GaugeEntry._make, zip(ids.tolist(), angles.tolist(),
                                              jscores.tolist(), risk_names.tolist())))

    lo, hi = cfg.valid_range
    nbins = int(np.ceil(hi - lo))
    edges = lo + np.arange(nbins + 1, dtype=float)
    edges[-1] = hi
    density, _ = np.histogram(angles, bins=edges)
    bands = tuple(
        {"lo": b.lo, "hi": b.hi, "score": b.score,
         "risk": risk_class(joint.body_part, max(min(b.score, smax), smin), scored.asset)}
        for b in cfg.bands)
    return GaugeSeries(joint, cfg.valid_range, cfg.score_range, entries,
                       tuple(int(c) for c in density), bands)


# ---------------------------------------------------------------------------
# Timeline


@dataclass(frozen=True)
class TimelineBucket:
    t_start: float
    t_end: float
    min_deg: float
    max_deg: float
    first_deg: float
    last_deg: float
    max_risk: str


@dataclass(frozen=True)
class LimitLine:
    angle_deg: float
    risky: bool


@dataclass(frozen=True)
class DownsampledSeries:
    joint: JointId
    t0: float
    t1: float
    buckets: tuple[TimelineBucket, ...]
    limits: tuple[LimitLine, ...]
    value_range: tuple[float, float]     # this joint's own axis scale

    def to_json(self) -> dict:
        return {
            "joint": self.joint.key, "t0": self.t0, "t1": self.t1,
            "buckets": [{"t0": b.t_start, "t1": b.t_end, "min": b.min_deg,
                         "max": b.max_deg, "first": b.first_deg, "last": b.last_deg,
                         "risk": b.max_risk} for b in self.buckets],
            "limits": [{"angle": l.angle_deg, "risky": l.risky} for l in self.limits],
            "value_range": list(self.value_range),
        }


def joint_limits(scored: ScoredDataset, part: BodyPart) -> tuple[LimitLine, ...]:
    """Interior band edges; risky when an adjacent band scores the part's maximum."""
    cfg = scored.asset.angle_bands[part]
    max_base = max(b.score for b in cfg.bands)
    limits = []
    for a, b in zip(cfg.bands, cfg.bands[1:]):
        limits.append(LimitLine(b.lo, a.score == max_base or b.score == max_base))
    return tuple(limits)


def timeline_window(scored: ScoredDataset, joints: Iterable[JointId],
                    t0: float, t1: float, max_points: int,
                    selection=None) -> list[DownsampledSeries]:
    """Min-max decimation of each joint's angle series over [t0, t1).

    Buckets partition the window's frames by position (near-equal counts);
    bucket spans join at the next bucket's first timestamp so concatenated
    spans reproduce [t0, t1) exactly. With few frames buckets degenerate to
    single samples and the series is lossless.
    """
    if not t0 < t1:
        raise EmptyWindow(f"need t0 < t1, got [{t0}, {t1})")
    if max_points < 2:
        raise EmptyWindow("max_points must be >= 2")
    mask = _selection_mask(scored, selection)
    ts = scored.timestamps
    in_window = (ts >= t0) & (ts < t1) & mask
    idx = np.flatnonzero(in_window)
    if idx.size == 0:
        raise EmptyWindow(f"no included frames in [{t0}, {t1})")

    n = idx.size
    n_buckets = min(max_points, n)
    bounds = np.linspace(0, n, n_buckets + 1).astype(np.int64)
    wts = ts[idx]
    out = []
    for joint in joints:
        angles = scored.angles(joint)[idx]
        jscores = scored.joint_scores(joint)[idx]
        cfg = scored.asset.angle_bands[joint.body_part]
        smin, smax = cfg.score_range
        risk_codes = np.where(jscores <= smin, 0, np.where(jscores >= smax, 2, 1))
        buckets = []
        for b in range(n_buckets):
            s, e = bounds[b], bounds[b + 1]
            seg = angles[s:e]
            t_start = t0 if b == 0 else float(wts[s])
            t_end = t1 if b == n_buckets - 1 else float(wts[bounds[b + 1]])
            buckets.append(TimelineBucket(
                t_start, t_end,
                float(seg.min()), float(seg.max()),
                float(seg[0]), float(seg[-1]),
                RISK_CLASSES[int(risk_codes[s:e].max())]))
        out.append(DownsampledSeries(
            joint, t0, t1, tuple(buckets), joint_limits(scored, joint.body_part),
            (float(angles.min()), float(angles.max()))))
    return out


# ---------------------------------------------------------------------------
# Representative frames


def representative_frames(scored: ScoredDataset, table_id: str, side: Side,
                          selection=None) -> dict[int, Optional[int]]:
    """Median-timestamp representative per score group; None without images.

    Group key is the table's derived value for A and B and the grand score
    for C. Only frames carrying an image_ref are eligible; ties on the
    median timestamp resolve to the lower frame_index.
    """
    tid = table_id.upper()
    if tid not in ("A", "B", "C"):
        raise UnknownTable(table_id)
    ss = scored.sides[side]
    key = {"A": ss.table_a, "B": ss.table_b, "C": ss.grand}[tid]
    mask = _selection_mask(scored, selection)
    has_image = scored.dataset.columns().has_image[scored.frame_ids]

    result: dict[int, Optional[int]] = {}
    for score in sorted(set(int(v) for v in key[mask])):
        in_group = mask & (key == score) & has_image
        if not in_group.any():
            result[score] = None
            continue
        ids = scored.frame_ids[in_group]
        ts = scored.timestamps[in_group]
        order = np.lexsort((ids, ts))
        result[score] = int(ids[order[(len(order) - 1) // 2]])
    return result
