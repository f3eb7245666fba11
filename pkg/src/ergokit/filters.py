"""Frame validation and confidence/outlier filtering."""
from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .model import (
    Dataset,
    FilterPolicy,
    FrameRecord,
    JointId,
    UnknownJoint,
    Violation,
    WindowLargerThanDataset,
    SCORED_JOINTS,
)
from .tables import ScoringAsset, default_asset

MAD_FLOOR_DEG = 0.5


def default_ranges(asset: Optional[ScoringAsset] = None) -> dict[JointId, tuple[float, float]]:
    asset = asset or default_asset()
    return {j: asset.valid_range(j.body_part) for j in SCORED_JOINTS}


def validate_frame(frame: FrameRecord,
                   ranges: Optional[dict[JointId, tuple[float, float]]] = None) -> list[Violation]:
    """One Violation per non-finite or out-of-range angle; pure."""
    if ranges is None:
        ranges = default_ranges()
    violations = []
    for joint, angle in frame.angles.items():
        if joint not in ranges:
            raise UnknownJoint(f"no valid range supplied for {joint.key}")
        lo, hi = ranges[joint]
        if not math.isfinite(angle):
            violations.append(Violation(joint, frame.frame_index, angle, lo, hi, "non_finite"))
        elif angle < lo:
            violations.append(Violation(joint, frame.frame_index, angle, lo, hi, "below_range"))
        elif angle > hi:
            violations.append(Violation(joint, frame.frame_index, angle, lo, hi, "above_range"))
    return violations


def _hampel_flags(series: np.ndarray, window: int, k: float) -> np.ndarray:
    """Centered sliding median/MAD outlier test; windows truncate at the edges."""
    n = len(series)
    half = window // 2
    med = np.empty(n)
    mad = np.empty(n)
    if n >= window:
        view = np.lib.stride_tricks.sliding_window_view(series, window)
        med[half:n - half] = np.nanmedian(view, axis=1)
        mad[half:n - half] = np.nanmedian(np.abs(view - med[half:n - half, None]), axis=1)
    for i in list(range(min(half, n))) + list(range(max(n - half, 0), n)):
        win = series[max(0, i - half):min(n, i + half + 1)]
        med[i] = np.nanmedian(win)
        mad[i] = np.nanmedian(np.abs(win - med[i]))
    mad = np.where(mad == 0.0, MAD_FLOOR_DEG, mad)
    with np.errstate(invalid="ignore"):
        return np.abs(series - med) > k * mad


def filter_outliers(dataset: Dataset, policy: FilterPolicy) -> Dataset:
    """Flag (never delete) low-confidence frames and Hampel outliers.

    A frame is excluded iff any joint confidence falls below the policy
    threshold, or any angle deviates from its sliding-window median by
    more than hampel_k * MAD (MAD of exactly zero is replaced by a 0.5
    degree floor). Non-finite angles are not the filter's concern; scoring
    skips them with a diagnostic. The returned dataset shares the frame
    sequence and carries a recomputed excluded set.
    """
    n = len(dataset.frames)
    if n == 0:
        return dataset.with_excluded(frozenset())
    if policy.hampel_window > n:
        raise WindowLargerThanDataset(
            f"hampel_window {policy.hampel_window} exceeds frame count {n}")

    cols = dataset.columns()
    excluded = np.zeros(n, dtype=bool)
    excluded |= cols.confidence_min < policy.min_confidence
    for joint in SCORED_JOINTS:
        series = cols.angles[joint.key]
        excluded |= _hampel_flags(series, policy.hampel_window, policy.hampel_k)
    return dataset.with_excluded(frozenset(int(i) for i in np.flatnonzero(excluded)))
