"""Dataset ingestion: canonical frames CSV, manifest loading, serialization.

Canonical frames schema (version ``frames-v1``): UTF-8 CSV, mandatory header,
30 columns in fixed order -- frame_index, timestamp_s, twelve angle columns,
eleven 0/1 modifier flags, load_kg, shock, coupling, confidence_mean,
image_ref. Floats are written with at most 4 decimal places. Trunk and neck
twist booleans are not columns; they are derived from the trunk_twist_deg /
neck_twist_deg angles at the thresholds below.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Optional

from .model import (
    BodyPart,
    Coupling,
    Dataset,
    FrameRecord,
    JointId,
    MissingManifest,
    NonMonotoneTimestamp,
    SchemaMismatch,
    Side,
    SCORED_JOINTS,
)

SCHEMA_VERSION = "frames-v1"
TRUNK_TWIST_FLAG_DEG = 10.0
NECK_TWIST_FLAG_DEG = 20.0

ANGLE_COLUMNS: tuple[tuple[str, JointId], ...] = (
    ("neck_center_deg", JointId(BodyPart.NECK, Side.CENTER)),
    ("trunk_center_deg", JointId(BodyPart.TRUNK, Side.CENTER)),
    ("upper_arm_left_deg", JointId(BodyPart.UPPER_ARM, Side.LEFT)),
    ("upper_arm_right_deg", JointId(BodyPart.UPPER_ARM, Side.RIGHT)),
    ("lower_arm_left_deg", JointId(BodyPart.LOWER_ARM, Side.LEFT)),
    ("lower_arm_right_deg", JointId(BodyPart.LOWER_ARM, Side.RIGHT)),
    ("wrist_left_deg", JointId(BodyPart.WRIST, Side.LEFT)),
    ("wrist_right_deg", JointId(BodyPart.WRIST, Side.RIGHT)),
    ("knee_left_deg", JointId(BodyPart.LEG, Side.LEFT)),
    ("knee_right_deg", JointId(BodyPart.LEG, Side.RIGHT)),
)

# (column, joint, flag) for the per-joint 0/1 modifier columns.
FLAG_COLUMNS: tuple[tuple[str, JointId, str], ...] = (
    ("trunk_side_bend", JointId(BodyPart.TRUNK, Side.CENTER), "side_bend"),
    ("neck_side_bend", JointId(BodyPart.NECK, Side.CENTER), "side_bend"),
    ("wrist_twist_left", JointId(BodyPart.WRIST, Side.LEFT), "twist"),
    ("wrist_twist_right", JointId(BodyPart.WRIST, Side.RIGHT), "twist"),
    ("upper_arm_abducted_left", JointId(BodyPart.UPPER_ARM, Side.LEFT), "abduction"),
    ("upper_arm_abducted_right", JointId(BodyPart.UPPER_ARM, Side.RIGHT), "abduction"),
    ("shoulder_raised_left", JointId(BodyPart.UPPER_ARM, Side.LEFT), "shoulder_raised"),
    ("shoulder_raised_right", JointId(BodyPart.UPPER_ARM, Side.RIGHT), "shoulder_raised"),
    ("arm_supported_left", JointId(BodyPart.UPPER_ARM, Side.LEFT), "arm_supported"),
    ("arm_supported_right", JointId(BodyPart.UPPER_ARM, Side.RIGHT), "arm_supported"),
)

COLUMNS: tuple[str, ...] = (
    ("frame_index", "timestamp_s")
    + tuple(c for c, _ in ANGLE_COLUMNS)
    + ("trunk_twist_deg", "neck_twist_deg")
    + tuple(c for c, _, _ in FLAG_COLUMNS)
    + ("unilateral_stance",)
    + ("load_kg", "shock", "coupling", "confidence_mean", "image_ref")
)


def _parse_float(token: str, column: str, row: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise SchemaMismatch(column, row, f"not a number: {token!r}")


def _parse_flag(token: str, column: str, row: int) -> bool:
    t = token.strip().lower()
    if t in ("0", "false", ""):
        return False
    if t in ("1", "true"):
        return True
    raise SchemaMismatch(column, row, f"not a 0/1 flag: {token!r}")


def _parse_row(raw: dict[str, str], row: int, fps: float) -> FrameRecord:
    try:
        frame_index = int(raw["frame_index"])
    except ValueError:
        raise SchemaMismatch("frame_index", row, f"not an integer: {raw['frame_index']!r}")
    if frame_index < 0:
        raise SchemaMismatch("frame_index", row, "negative frame index")
    ts_token = raw["timestamp_s"].strip()
    timestamp = _parse_float(ts_token, "timestamp_s", row) if ts_token else frame_index / fps

    angles = {}
    for column, joint in ANGLE_COLUMNS:
        angles[joint] = _parse_float(raw[column], column, row)
    trunk_twist = _parse_float(raw["trunk_twist_deg"], "trunk_twist_deg", row)
    neck_twist = _parse_float(raw["neck_twist_deg"], "neck_twist_deg", row)

    modifiers: dict[JointId, set[str]] = {}

    def add(joint: JointId, flag: str):
        modifiers.setdefault(joint, set()).add(flag)

    for column, joint, flag in FLAG_COLUMNS:
        if _parse_flag(raw[column], column, row):
            add(joint, flag)
    if _parse_flag(raw["unilateral_stance"], "unilateral_stance", row):
        add(JointId(BodyPart.LEG, Side.LEFT), "unilateral_stance")
        add(JointId(BodyPart.LEG, Side.RIGHT), "unilateral_stance")
    if abs(trunk_twist) >= TRUNK_TWIST_FLAG_DEG:
        add(JointId(BodyPart.TRUNK, Side.CENTER), "twist")
    if abs(neck_twist) >= NECK_TWIST_FLAG_DEG:
        add(JointId(BodyPart.NECK, Side.CENTER), "twist")

    load = _parse_float(raw["load_kg"], "load_kg", row)
    if not math.isfinite(load) or load < 0:
        raise SchemaMismatch("load_kg", row, f"load must be a non-negative number, got {raw['load_kg']!r}")
    shock = _parse_flag(raw["shock"], "shock", row)
    try:
        coupling = Coupling(raw["coupling"].strip().lower())
    except ValueError:
        raise SchemaMismatch("coupling", row, f"unknown coupling {raw['coupling']!r}")
    conf = _parse_float(raw["confidence_mean"], "confidence_mean", row)
    if not 0.0 <= conf <= 1.0:
        raise SchemaMismatch("confidence_mean", row, f"confidence {conf} outside [0, 1]")
    image_ref = raw["image_ref"].strip() or None

    return FrameRecord(
        frame_index=frame_index,
        timestamp_s=timestamp,
        angles=angles,
        modifiers={j: frozenset(v) for j, v in modifiers.items()},
        trunk_twist_deg=trunk_twist,
        neck_twist_deg=neck_twist,
        load_kg=load,
        shock_force=shock,
        coupling=coupling,
        confidence={j: conf for j in SCORED_JOINTS},
        image_ref=image_ref,
    )


def read_frames_csv(path: str | Path, fps: float, lenient: bool = False,
                    diagnostics: Optional[list] = None) -> tuple[FrameRecord, ...]:
    """Parse a canonical frames CSV.

    Strict mode raises on the first bad row; lenient mode skips bad rows,
    appending (row, column, message) tuples to ``diagnostics``.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaMismatch("<header>", 0, "empty file, header row is mandatory")
        if tuple(header) != COLUMNS:
            unexpected = [c for c in header if c not in COLUMNS]
            missing = [c for c in COLUMNS if c not in header]
            raise SchemaMismatch(
                "<header>", 0,
                f"header does not match schema {SCHEMA_VERSION}"
                f" (missing {missing[:3]}, unexpected {unexpected[:3]})")
        frames = []
        last_ts = -math.inf
        for row_num, row in enumerate(reader, start=1):
            if len(row) != len(COLUMNS):
                err = SchemaMismatch("<row>", row_num, f"expected {len(COLUMNS)} cells, got {len(row)}")
                if not lenient:
                    raise err
                if diagnostics is not None:
                    diagnostics.append((row_num, "<row>", str(err)))
                continue
            raw = dict(zip(COLUMNS, row))
            try:
                frame = _parse_row(raw, row_num, fps)
                if frame.timestamp_s <= last_ts:
                    raise NonMonotoneTimestamp(row_num)
            except (SchemaMismatch, NonMonotoneTimestamp) as err:
                if not lenient:
                    raise
                column = getattr(err, "column", "timestamp_s")
                if diagnostics is not None:
                    diagnostics.append((row_num, column, str(err)))
                continue
            last_ts = frame.timestamp_s
            frames.append(frame)
    return tuple(frames)


def _reindex(frames: tuple[FrameRecord, ...], meta: dict) -> tuple[FrameRecord, ...]:
    """Force contiguous frame_index 0..n-1, recording source gaps in meta."""
    source = [f.frame_index for f in frames]
    if source == list(range(len(source))):
        return frames
    if len(set(source)) != len(source):
        raise SchemaMismatch("frame_index", 0, "duplicate frame_index values")
    meta["source_frame_index"] = {"first": source[0] if source else None,
                                  "last": source[-1] if source else None,
                                  "count": len(source)}
    out = []
    for i, f in enumerate(frames):
        out.append(FrameRecord(
            frame_index=i, timestamp_s=f.timestamp_s, angles=f.angles,
            modifiers=f.modifiers, trunk_twist_deg=f.trunk_twist_deg,
            neck_twist_deg=f.neck_twist_deg, load_kg=f.load_kg,
            shock_force=f.shock_force, coupling=f.coupling,
            confidence=f.confidence, image_ref=f.image_ref))
    return tuple(out)


def load_dataset(manifest_path: str | Path, lenient: bool = False) -> Dataset:
    """Load a dataset from a manifest JSON {id, frames_csv, images_dir, fps, meta}."""
    manifest_path = Path(manifest_path)
    if not manifest_path.is_file():
        raise MissingManifest(f"manifest not found: {manifest_path}")
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise MissingManifest(f"manifest is not valid JSON: {manifest_path}: {err}")
    for key in ("id", "frames_csv", "fps"):
        if key not in manifest:
            raise MissingManifest(f"manifest missing key {key!r}: {manifest_path}")
    fps = float(manifest["fps"])
    if not fps > 0:
        raise MissingManifest(f"manifest fps must be positive, got {manifest['fps']}")
    frames_csv = (manifest_path.parent / manifest["frames_csv"]).resolve()
    if not frames_csv.is_file():
        raise MissingManifest(f"frames file not found: {frames_csv}")

    diagnostics: list = []
    frames = read_frames_csv(frames_csv, fps, lenient=lenient, diagnostics=diagnostics)
    meta = dict(manifest.get("meta") or {})
    meta["schema_version"] = SCHEMA_VERSION
    meta["source_rows"] = len(frames) + len(diagnostics)
    if diagnostics:
        meta["load_diagnostics"] = [
            {"row": r, "column": c, "error": m} for r, c, m in diagnostics]
    frames = _reindex(frames, meta)

    images_dir = manifest.get("images_dir")
    if images_dir:
        images_dir = str((manifest_path.parent / images_dir).resolve())
    return Dataset(id=str(manifest["id"]), frames=frames, fps=fps, meta=meta,
                   images_dir=images_dir)


def format_float(x: float) -> str:
    """<= 4 decimal places, trailing zeros trimmed."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    s = f"{x:.4f}".rstrip("0").rstrip(".")
    return s if s not in ("", "-0") else "0"


def frame_to_row(frame: FrameRecord) -> list[str]:
    row = [str(frame.frame_index), format_float(frame.timestamp_s)]
    for _, joint in ANGLE_COLUMNS:
        row.append(format_float(frame.angles[joint]))
    row.append(format_float(frame.trunk_twist_deg))
    row.append(format_float(frame.neck_twist_deg))
    for _, joint, flag in FLAG_COLUMNS:
        row.append("1" if flag in frame.flags(joint) else "0")
    row.append("1" if "unilateral_stance" in frame.flags(JointId(BodyPart.LEG, Side.LEFT)) else "0")
    row.append(format_float(frame.load_kg))
    row.append("1" if frame.shock_force else "0")
    row.append(frame.coupling.value)
    conf = min(frame.confidence.values()) if frame.confidence else 1.0
    row.append(format_float(conf))
    row.append(frame.image_ref or "")
    return row


def write_frames_csv(frames, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(COLUMNS)
        for frame in frames:
            writer.writerow(frame_to_row(frame))


def write_manifest(path: str | Path, dataset_id: str, frames_csv: str,
                   fps: float, images_dir: Optional[str] = None,
                   meta: Optional[dict] = None) -> None:
    manifest = {"id": dataset_id, "frames_csv": frames_csv,
                "images_dir": images_dir, "fps": fps, "meta": meta or {}}
    Path(path).write_text(json.dumps(manifest, indent=1) + "\n", encoding="utf-8")
