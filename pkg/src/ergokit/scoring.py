"""Posture scoring: angle-band classification, table lookups and adjustments.

Two evaluation paths share one config: a readable per-frame path
(``frame_reba``) and a vectorized batch path (``score_dataset``). The test
suite holds them equal on randomized inputs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .model import (
    AngleOutsideConfiguredBands,
    BodyPart,
    Dataset,
    FrameRecord,
    JointId,
    OutOfRange,
    Side,
    UnknownJoint,
    COUPLING_ORDER,
    SCORED_JOINTS,
)
from .tables import ScoringAsset, default_asset

ACTION_LEVEL_NAMES = ("negligible", "low", "medium", "high", "very_high")
RISK_CLASSES = ("low", "medium", "high")


@dataclass(frozen=True)
class JointScore:
    joint: JointId
    score: int
    contributing_angle_deg: float
    adjustments_applied: tuple[str, ...] = ()


@dataclass(frozen=True)
class ActivityContext:
    """Per-frame activity triggers; each active one adds +1 to the grand score."""

    static_hold: bool = False
    repeated_motion: bool = False
    rapid_change: bool = False

    @property
    def score(self) -> int:
        return int(self.static_hold) + int(self.repeated_motion) + int(self.rapid_change)


NO_ACTIVITY = ActivityContext()


@dataclass(frozen=True)
class FramePostureScores:
    frame_index: int
    side: Side
    joint_scores: dict[JointId, JointScore]
    table_a: int
    load_score: int
    score_a: int
    table_b: int
    coupling_score: int
    score_b: int
    table_c: int
    activity_score: int
    grand: int
    action_level: str


def band_index(asset: ScoringAsset, part: BodyPart, angle_deg: float) -> int:
    """Index of the band containing angle_deg; first match in band order."""
    if part not in asset.angle_bands:
        raise UnknownJoint(f"no bands configured for {part}")
    cfg = asset.angle_bands[part]
    n = len(cfg.bands)
    if np.isfinite(angle_deg):
        for i, band in enumerate(cfg.bands):
            if band.contains(angle_deg, last=(i == n - 1)):
                return i
    raise AngleOutsideConfiguredBands(
        f"{part.value} angle {angle_deg} outside configured bands {cfg.valid_range}")


def joint_score_from_angle(joint: JointId, angle_deg: float,
                           flags: Iterable[str] = (),
                           asset: Optional[ScoringAsset] = None) -> JointScore:
    """Band base score plus modifier deltas, clamped to the joint's range."""
    asset = asset or default_asset()
    cfg = asset.angle_bands[joint.body_part]
    base = cfg.bands[band_index(asset, joint.body_part, angle_deg)].score
    applied = []
    score = base
    for flag in sorted(set(flags)):
        delta = cfg.modifiers.get(flag)
        if delta:
            score += delta
            applied.append(flag)
    smin, smax = cfg.score_range
    score = min(max(score, smin), smax)
    return JointScore(joint, score, angle_deg, tuple(applied))


def load_score(load_kg: float, shock_force: bool, asset: Optional[ScoringAsset] = None) -> int:
    asset = asset or default_asset()
    if load_kg < asset.load_light_below_kg:
        s = 0
    elif load_kg <= asset.load_heavy_above_kg:
        s = 1
    else:
        s = 2
    return s + (asset.shock_bonus if shock_force else 0)


def coupling_score(coupling, asset: Optional[ScoringAsset] = None) -> int:
    asset = asset or default_asset()
    return asset.coupling_scores[coupling.value]


def action_level(grand: int, asset: Optional[ScoringAsset] = None) -> str:
    asset = asset or default_asset()
    if not 1 <= grand <= asset.action_levels[-1][0]:
        raise OutOfRange(f"grand score {grand} outside [1, {asset.action_levels[-1][0]}]")
    for max_grand, level in asset.action_levels:
        if grand <= max_grand:
            return level
    raise OutOfRange(str(grand))


def risk_class(part: BodyPart, score: int, asset: Optional[ScoringAsset] = None) -> str:
    """Traffic-light class for a joint score: range minimum is low, maximum high."""
    asset = asset or default_asset()
    smin, smax = asset.angle_bands[part].score_range
    if score <= smin:
        return "low"
    if score >= smax:
        return "high"
    return "medium"


def frame_reba(frame: FrameRecord, side: Side,
               asset: Optional[ScoringAsset] = None,
               activity: ActivityContext = NO_ACTIVITY) -> FramePostureScores:
    """Score one body side of one frame through tables A, B and C."""
    asset = asset or default_asset()
    if side not in (Side.LEFT, Side.RIGHT):
        raise UnknownJoint("side must be left or right")

    def js(part: BodyPart) -> JointScore:
        j = JointId(part, Side.CENTER if part in (BodyPart.NECK, BodyPart.TRUNK) else side)
        return joint_score_from_angle(j, frame.angles[j], frame.flags(j), asset)

    scores = {p: js(p) for p in BodyPart}
    table_a = asset.table("A").lookup(
        [scores[BodyPart.NECK].score, scores[BodyPart.LEG].score, scores[BodyPart.TRUNK].score])
    ls = load_score(frame.load_kg, frame.shock_force, asset)
    score_a = table_a + ls
    table_b = asset.table("B").lookup(
        [scores[BodyPart.LOWER_ARM].score, scores[BodyPart.WRIST].score,
         scores[BodyPart.UPPER_ARM].score])
    cs = coupling_score(frame.coupling, asset)
    score_b = table_b + cs
    table_c = asset.table("C").lookup([min(score_a, 12), min(score_b, 12)])
    grand = table_c + activity.score
    return FramePostureScores(
        frame_index=frame.frame_index,
        side=side,
        joint_scores={s.joint: s for s in scores.values()},
        table_a=table_a, load_score=ls, score_a=score_a,
        table_b=table_b, coupling_score=cs, score_b=score_b,
        table_c=table_c, activity_score=activity.score, grand=grand,
        action_level=action_level(grand, asset),
    )


# ---------------------------------------------------------------------------
# Vectorized batch path


def _band_index_array(asset: ScoringAsset, part: BodyPart, angles: np.ndarray):
    """(band index array, out-of-range mask); index undefined where out."""
    cfg = asset.angle_bands[part]
    los = np.array([b.lo for b in cfg.bands])
    lo, hi = cfg.valid_range
    finite = np.isfinite(angles)
    safe = np.where(finite, angles, lo)
    idx = np.searchsorted(los, safe, side="right") - 1
    idx = np.clip(idx, 0, len(cfg.bands) - 1)
    # hi-inclusive interior bands win their upper boundary from the next band
    for i, band in enumerate(cfg.bands[:-1]):
        if band.closed:
            idx[safe == band.hi] = i
    out = ~finite | (angles < lo) | (angles > hi)
    return idx, out


def _adjusted_scores(asset: ScoringAsset, part: BodyPart, band_idx: np.ndarray,
                     flag_arrays: dict[str, np.ndarray]) -> np.ndarray:
    cfg = asset.angle_bands[part]
    scores = np.array([b.score for b in cfg.bands], dtype=np.int64)[band_idx]
    for flag, delta in cfg.modifiers.items():
        arr = flag_arrays.get(flag)
        if arr is not None:
            scores = scores + delta * arr.astype(np.int64)
    smin, smax = cfg.score_range
    return np.clip(scores, smin, smax)


def _load_score_array(asset: ScoringAsset, load: np.ndarray, shock: np.ndarray) -> np.ndarray:
    s = np.where(load < asset.load_light_below_kg, 0,
                 np.where(load <= asset.load_heavy_above_kg, 1, 2))
    return s + np.where(shock, asset.shock_bonus, 0)


def _action_codes(asset: ScoringAsset, grand: np.ndarray) -> np.ndarray:
    bounds = np.array([m for m, _ in asset.action_levels])
    return np.searchsorted(bounds, grand, side="left")


@dataclass(frozen=True)
class ActivitySeries:
    """Whole-body activity triggers per scored frame."""

    static_hold: np.ndarray
    repeated_motion: np.ndarray
    rapid_change: np.ndarray

    @property
    def score(self) -> np.ndarray:
        return (self.static_hold.astype(np.int64)
                + self.repeated_motion.astype(np.int64)
                + self.rapid_change.astype(np.int64))

    def context(self, pos: int) -> ActivityContext:
        return ActivityContext(bool(self.static_hold[pos]),
                               bool(self.repeated_motion[pos]),
                               bool(self.rapid_change[pos]))


def _window_has_event(event_times: np.ndarray, ts: np.ndarray, window_s: float,
                      min_count: int = 1) -> np.ndarray:
    """True at frames whose trailing (t-window, t] window holds >= min_count events."""
    if event_times.size == 0:
        return np.zeros(len(ts), dtype=bool)
    hi = np.searchsorted(event_times, ts, side="right")
    lo = np.searchsorted(event_times, ts - window_s, side="right")
    return (hi - lo) >= min_count


def compute_activity(asset: ScoringAsset, frame_ids: np.ndarray, ts: np.ndarray,
                     angles: dict[str, np.ndarray],
                     band_idx: dict[str, np.ndarray]) -> ActivitySeries:
    """Series pass deriving the three REBA activity triggers.

    All triggers look at a trailing window over the scored frames. Rapid
    changes and band crossings only count between frames adjacent in the
    original recording (gaps from excluded frames are not motion).
    """
    th = asset.activity
    n = len(ts)
    static = np.zeros(n, dtype=bool)
    repeated = np.zeros(n, dtype=bool)
    rapid = np.zeros(n, dtype=bool)
    if n == 0:
        return ActivitySeries(static, repeated, rapid)
    adjacent = np.zeros(n, dtype=bool)
    adjacent[1:] = np.diff(frame_ids) == 1

    for key in angles:
        a = angles[key]
        # static hold: angle stays within +/- tolerance of the hold anchor
        t_list = ts.tolist()
        a_list = a.tolist()
        anchor = a_list[0]
        start_t = t_list[0]
        tol = th.hold_tolerance_deg
        for i in range(n):
            if abs(a_list[i] - anchor) > tol:
                anchor = a_list[i]
                start_t = t_list[i]
            elif t_list[i] - start_t > th.hold_min_seconds:
                static[i] = True

        # rapid inter-frame change
        delta = np.zeros(n)
        delta[1:] = np.abs(np.diff(a))
        events = ts[(delta > th.rapid_change_deg) & adjacent]
        rapid |= _window_has_event(events, ts, th.window_seconds)

        # repeated crossings of one band boundary
        bi = band_idx[key]
        prev = bi[:-1]
        cur = bi[1:]
        lo_b = np.minimum(prev, cur)
        hi_b = np.maximum(prev, cur)
        n_bounds = int(bi.max()) + 1
        for b in range(n_bounds - 1):
            crossed = np.zeros(n, dtype=bool)
            crossed[1:] = (lo_b <= b) & (b < hi_b)
            events = ts[crossed & adjacent]
            repeated |= _window_has_event(events, ts, th.window_seconds,
                                          min_count=th.crossings_per_minute + 1)
    return ActivitySeries(static, repeated, rapid)


@dataclass(frozen=True)
class ScoringDiagnostic:
    frame_index: int
    joint: str
    reason: str
    angle_deg: float


@dataclass(frozen=True)
class SideScores:
    """Column-oriented posture scores for one body side."""

    side: Side
    joint: dict[str, np.ndarray]  # body part value -> adjusted joint score
    table_a: np.ndarray
    load_score: np.ndarray
    score_a: np.ndarray
    table_b: np.ndarray
    coupling_score: np.ndarray
    score_b: np.ndarray
    table_c: np.ndarray
    activity_score: np.ndarray
    grand: np.ndarray
    action_code: np.ndarray

    def attribute(self, name: str) -> np.ndarray:
        """Array for a table dimension name ('neck', 'score_a', ...)."""
        if name in self.joint:
            return self.joint[name]
        if name == "legs":
            return self.joint["leg"]
        if name == "score_a":
            return np.minimum(self.score_a, 12)
        if name == "score_b":
            return np.minimum(self.score_b, 12)
        raise UnknownJoint(f"unknown score attribute {name!r}")


@dataclass(frozen=True)
class ScoredDataset:
    """All posture scores for the non-excluded frames of a dataset."""

    dataset: Dataset
    asset: ScoringAsset
    frame_ids: np.ndarray       # ascending; frame_index == row position in dataset
    timestamps: np.ndarray
    sides: dict[Side, SideScores]
    activity: ActivitySeries
    diagnostics: tuple[ScoringDiagnostic, ...] = ()

    def __len__(self) -> int:
        return len(self.frame_ids)

    def angles(self, joint: JointId) -> np.ndarray:
        return self.dataset.columns().angles[joint.key][self.frame_ids]

    def joint_scores(self, joint: JointId) -> np.ndarray:
        side = Side.LEFT if joint.side is Side.CENTER else joint.side
        return self.sides[side].joint[joint.body_part.value]

    def action_level_name(self, code: int) -> str:
        return self.asset.action_levels[code][1]

    def position(self, frame_index: int) -> int:
        pos = int(np.searchsorted(self.frame_ids, frame_index))
        if pos >= len(self.frame_ids) or self.frame_ids[pos] != frame_index:
            raise OutOfRange(f"frame {frame_index} was not scored")
        return pos

    def get(self, frame_index: int, side: Side) -> FramePostureScores:
        pos = self.position(frame_index)
        return frame_reba(self.dataset.frames[frame_index], side, self.asset,
                          self.activity.context(pos))


def score_dataset(dataset: Dataset, asset: Optional[ScoringAsset] = None) -> ScoredDataset:
    """Score both sides of every non-excluded frame; deterministic.

    Frames with angles outside the configured bands are reported in
    ``diagnostics`` and skipped rather than aborting the run.
    """
    asset = asset or default_asset()
    cols = dataset.columns()
    n = len(dataset.frames)
    included = np.ones(n, dtype=bool)
    for idx in dataset.excluded:
        included[idx] = False

    band_idx: dict[str, np.ndarray] = {}
    bad = np.zeros(n, dtype=bool)
    out_masks: dict[str, np.ndarray] = {}
    for j in SCORED_JOINTS:
        bi, out = _band_index_array(asset, j.body_part, cols.angles[j.key])
        band_idx[j.key] = bi
        out_masks[j.key] = out
        bad |= out

    diagnostics = []
    for j in SCORED_JOINTS:
        for f in np.flatnonzero(out_masks[j.key] & included):
            diagnostics.append(ScoringDiagnostic(
                int(f), j.key, "angle outside configured bands",
                float(cols.angles[j.key][f])))
    scored_mask = included & ~bad
    ids = np.flatnonzero(scored_mask)
    ts = cols.timestamps[ids]

    joint_adj: dict[str, np.ndarray] = {}
    for j in SCORED_JOINTS:
        flag_arrays = {fl: cols.flags[f"{j.key}:{fl}"][ids]
                       for fl in asset.angle_bands[j.body_part].modifiers}
        joint_adj[j.key] = _adjusted_scores(asset, j.body_part, band_idx[j.key][ids], flag_arrays)

    activity = compute_activity(
        asset, ids, ts,
        {j.key: cols.angles[j.key][ids] for j in SCORED_JOINTS},
        {j.key: band_idx[j.key][ids] for j in SCORED_JOINTS})
    act = activity.score

    load = _load_score_array(asset, cols.load_kg[ids], cols.shock[ids])
    coupling_map = np.array([asset.coupling_scores[c.value] for c in COUPLING_ORDER])
    coup = coupling_map[cols.coupling_code[ids]]

    sides = {}
    for side in (Side.LEFT, Side.RIGHT):
        sfx = side.value
        joint = {
            "neck": joint_adj["neck_center"],
            "trunk": joint_adj["trunk_center"],
            "leg": joint_adj[f"leg_{sfx}"],
            "upper_arm": joint_adj[f"upper_arm_{sfx}"],
            "lower_arm": joint_adj[f"lower_arm_{sfx}"],
            "wrist": joint_adj[f"wrist_{sfx}"],
        }
        table_a = asset.table("A").lookup_array(joint["neck"], joint["leg"], joint["trunk"])
        score_a = table_a + load
        table_b = asset.table("B").lookup_array(joint["lower_arm"], joint["wrist"],
                                                joint["upper_arm"])
        score_b = table_b + coup
        table_c = asset.table("C").lookup_array(np.minimum(score_a, 12), np.minimum(score_b, 12))
        grand = table_c + act
        sides[side] = SideScores(
            side=side, joint=joint,
            table_a=table_a, load_score=load, score_a=score_a,
            table_b=table_b, coupling_score=coup, score_b=score_b,
            table_c=table_c, activity_score=act, grand=grand,
            action_code=_action_codes(asset, grand),
        )

    return ScoredDataset(dataset, asset, ids, ts, sides, activity, tuple(diagnostics))
