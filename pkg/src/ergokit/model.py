"""Domain model: joints, per-frame records, datasets and filter policies."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np


class BodyPart(str, Enum):
    NECK = "neck"
    TRUNK = "trunk"
    LEG = "leg"
    UPPER_ARM = "upper_arm"
    LOWER_ARM = "lower_arm"
    WRIST = "wrist"


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    CENTER = "center"


# Body parts that exist once (center) vs per side.
CENTER_PARTS = (BodyPart.NECK, BodyPart.TRUNK)
SIDED_PARTS = (BodyPart.LEG, BodyPart.UPPER_ARM, BodyPart.LOWER_ARM, BodyPart.WRIST)

MODIFIER_FLAGS = (
    "twist",
    "side_bend",
    "abduction",
    "shoulder_raised",
    "arm_supported",
    "unilateral_stance",
)


class ErgoKitError(Exception):
    """Base class for all package errors."""


class UnknownJoint(ErgoKitError):
    pass


class MissingManifest(ErgoKitError):
    pass


class SchemaMismatch(ErgoKitError):
    def __init__(self, column: str, row: int, detail: str = ""):
        self.column = column
        self.row = row
        super().__init__(f"schema mismatch in column {column!r} at data row {row}"
                         + (f": {detail}" if detail else ""))


class NonMonotoneTimestamp(ErgoKitError):
    def __init__(self, row: int):
        self.row = row
        super().__init__(f"timestamp not strictly increasing at data row {row}")


class WindowLargerThanDataset(ErgoKitError):
    pass


class AngleOutsideConfiguredBands(ErgoKitError):
    pass


class IndexOutOfRange(ErgoKitError):
    def __init__(self, dim: str, value: int, cardinality: int):
        self.dim = dim
        super().__init__(f"index {value} outside [1, {cardinality}] for dimension {dim!r}")


class UnknownTable(ErgoKitError):
    pass


class EmptyWindow(ErgoKitError):
    pass


class OutOfRange(ErgoKitError):
    pass


class InvalidSpec(ErgoKitError):
    pass


class AssetInvariantError(ErgoKitError):
    """Raised when a score-table asset violates its structural invariants."""


@dataclass(frozen=True, order=True)
class JointId:
    """One scored joint: a body part resolved to a side of the body."""

    body_part: BodyPart
    side: Side

    def __post_init__(self):
        if self.body_part in CENTER_PARTS and self.side is not Side.CENTER:
            raise UnknownJoint(f"{self.body_part.value} is a center joint, got side {self.side.value}")
        if self.body_part in SIDED_PARTS and self.side is Side.CENTER:
            raise UnknownJoint(f"{self.body_part.value} must be left or right")

    @property
    def key(self) -> str:
        return f"{self.body_part.value}_{self.side.value}"

    @classmethod
    def parse(cls, text: str) -> "JointId":
        """Parse 'upper_arm_left', 'neck_center' or bare 'neck'/'trunk'."""
        t = text.strip().lower()
        for part in BodyPart:
            if t == part.value and part in CENTER_PARTS:
                return cls(part, Side.CENTER)
            for side in Side:
                if t == f"{part.value}_{side.value}":
                    return cls(part, side)
        raise UnknownJoint(f"cannot parse joint {text!r}")


def _sided(part: BodyPart) -> list[JointId]:
    if part in CENTER_PARTS:
        return [JointId(part, Side.CENTER)]
    return [JointId(part, Side.LEFT), JointId(part, Side.RIGHT)]


#: The ten scored joints, in canonical order (matches the CSV angle columns).
SCORED_JOINTS: tuple[JointId, ...] = tuple(
    j for part in (BodyPart.NECK, BodyPart.TRUNK, BodyPart.UPPER_ARM,
                   BodyPart.LOWER_ARM, BodyPart.WRIST, BodyPart.LEG)
    for j in _sided(part)
)

JOINT_BY_KEY = {j.key: j for j in SCORED_JOINTS}


class Coupling(str, Enum):
    GOOD = "good"
    FAIR = "fair"
    POOR = "poor"
    UNACCEPTABLE = "unacceptable"


@dataclass(frozen=True)
class Violation:
    """One out-of-range or non-finite angle found by frame validation."""

    joint: JointId
    frame_index: int
    angle_deg: float
    lo_deg: float
    hi_deg: float
    reason: str  # "non_finite" | "below_range" | "above_range"


@dataclass(frozen=True)
class FrameRecord:
    """One video frame's joint angles plus scoring context attributes.

    Angles are degrees. The leg joints' primary angle is knee flexion.
    ``modifiers`` maps a joint to the set of active flag names (see
    MODIFIER_FLAGS). ``confidence`` holds per-joint detection confidence
    in [0, 1]; CSV ingestion fans the per-frame mean out to every joint.
    """

    frame_index: int
    timestamp_s: float
    angles: dict[JointId, float]
    modifiers: dict[JointId, frozenset[str]]
    trunk_twist_deg: float = 0.0
    neck_twist_deg: float = 0.0
    load_kg: float = 0.0
    shock_force: bool = False
    coupling: Coupling = Coupling.GOOD
    confidence: dict[JointId, float] = field(default_factory=dict)
    image_ref: Optional[str] = None

    def knee_flexion_deg(self, side: Side) -> float:
        return self.angles[JointId(BodyPart.LEG, side)]

    def flags(self, joint: JointId) -> frozenset[str]:
        return self.modifiers.get(joint, frozenset())


@dataclass(frozen=True)
class Dataset:
    """An ordered, immutable frame sequence plus filtering state.

    ``excluded`` holds frame indices flagged by filtering; the frames
    themselves are never removed so time axes stay continuous.
    """

    id: str
    frames: tuple[FrameRecord, ...]
    fps: float
    meta: dict = field(default_factory=dict)
    excluded: frozenset[int] = frozenset()
    images_dir: Optional[str] = None

    def __post_init__(self):
        indices = [f.frame_index for f in self.frames]
        if indices != list(range(len(indices))):
            raise ErgoKitError("frame_index values must be contiguous from 0 after ingestion")
        extra = self.excluded - set(indices)
        if extra:
            raise ErgoKitError(f"excluded contains unknown frame indices: {sorted(extra)[:5]}")

    def __len__(self) -> int:
        return len(self.frames)

    @property
    def included_indices(self) -> np.ndarray:
        return np.array([f.frame_index for f in self.frames if f.frame_index not in self.excluded],
                        dtype=np.int64)

    def with_excluded(self, excluded: frozenset[int]) -> "Dataset":
        return Dataset(self.id, self.frames, self.fps, self.meta, excluded, self.images_dir)

    def columns(self) -> "DatasetColumns":
        """Columnar (numpy) view over all frames; built once, cached."""
        cache = _COLUMN_CACHE.get(id(self))
        if cache is None or cache[0] is not self.frames:
            cache = (self.frames, DatasetColumns.from_frames(self.frames))
            _COLUMN_CACHE[id(self)] = cache
        return cache[1]


# Keyed by id(dataset); entries also hold the frames tuple so a recycled id
# cannot alias a different dataset.
_COLUMN_CACHE: dict[int, tuple] = {}

COUPLING_ORDER = (Coupling.GOOD, Coupling.FAIR, Coupling.POOR, Coupling.UNACCEPTABLE)
_COUPLING_CODE = {c: i for i, c in enumerate(COUPLING_ORDER)}


@dataclass(frozen=True)
class DatasetColumns:
    """Dense arrays over frames, aligned to frame_index order."""

    timestamps: np.ndarray                 # float64 [n]
    angles: dict[str, np.ndarray]          # joint key -> float64 [n]
    flags: dict[str, np.ndarray]           # (joint key, flag) "key:flag" -> bool [n]
    trunk_twist: np.ndarray
    neck_twist: np.ndarray
    load_kg: np.ndarray
    shock: np.ndarray                      # bool [n]
    coupling_code: np.ndarray              # int8 [n], index into COUPLING_ORDER
    confidence_min: np.ndarray             # per-frame min over joints
    has_image: np.ndarray                  # bool [n]

    @classmethod
    def from_frames(cls, frames: tuple[FrameRecord, ...]) -> "DatasetColumns":
        n = len(frames)
        angles = {j.key: np.empty(n) for j in SCORED_JOINTS}
        flags: dict[str, np.ndarray] = {}
        for j in SCORED_JOINTS:
            for fl in MODIFIER_FLAGS:
                flags[f"{j.key}:{fl}"] = np.zeros(n, dtype=bool)
        ts = np.empty(n)
        ttw = np.empty(n)
        ntw = np.empty(n)
        load = np.empty(n)
        shock = np.zeros(n, dtype=bool)
        coup = np.zeros(n, dtype=np.int8)
        conf = np.ones(n)
        img = np.zeros(n, dtype=bool)
        for i, f in enumerate(frames):
            ts[i] = f.timestamp_s
            for j in SCORED_JOINTS:
                angles[j.key][i] = f.angles[j]
            for j, fset in f.modifiers.items():
                for fl in fset:
                    flags[f"{j.key}:{fl}"][i] = True
            ttw[i] = f.trunk_twist_deg
            ntw[i] = f.neck_twist_deg
            load[i] = f.load_kg
            shock[i] = f.shock_force
            coup[i] = _COUPLING_CODE[f.coupling]
            if f.confidence:
                conf[i] = min(f.confidence.values())
            img[i] = f.image_ref is not None
        return cls(ts, angles, flags, ttw, ntw, load, shock, coup, conf, img)


@dataclass(frozen=True)
class FilterPolicy:
    """Confidence threshold plus Hampel outlier test parameters."""

    min_confidence: float = 0.0
    hampel_window: int = 11
    hampel_k: float = 3.0

    def __post_init__(self):
        if not 0.0 <= self.min_confidence <= 1.0:
            raise InvalidSpec("min_confidence must be in [0, 1]")
        if self.hampel_window < 3 or self.hampel_window % 2 == 0:
            raise InvalidSpec("hampel_window must be an odd integer >= 3")
        if not self.hampel_k > 0:
            raise InvalidSpec("hampel_k must be positive")


def is_finite(x: float) -> bool:
    return isinstance(x, (int, float)) and math.isfinite(x)
