"""Deterministic synthetic recordings: sinusoidal joint waves plus spikes.

The generator spec is a JSON object. Top-level wave keys (baseline_deg,
amplitude_deg, period_s, noise_deg) apply to every joint listed in
``joints``; a dict form of ``joints`` overrides them per joint. Unlisted
joints sit at a neutral constant angle. Windows can raise modifier flags,
load, or twist angles, and drop confidence; ``injected_spikes`` writes
verbatim angle values at single frames (not clamped, so outlier-filter
fixtures can exceed valid ranges).
"""
from __future__ import annotations

import math
import struct
import zlib
from pathlib import Path
from typing import Optional

import numpy as np

from .model import (
    BodyPart,
    Coupling,
    FrameRecord,
    InvalidSpec,
    JointId,
    Side,
    MODIFIER_FLAGS,
    SCORED_JOINTS,
)
from .ingest import write_frames_csv, write_manifest
from .tables import ScoringAsset, default_asset

NEUTRAL_DEG = {
    BodyPart.NECK: 5.0,
    BodyPart.TRUNK: 0.0,
    BodyPart.LEG: 10.0,
    BodyPart.UPPER_ARM: 0.0,
    BodyPart.LOWER_ARM: 80.0,
    BodyPart.WRIST: 0.0,
}

_WAVE_KEYS = ("baseline_deg", "amplitude_deg", "period_s", "noise_deg", "phase_deg")


def _window_mask(ts: np.ndarray, t0: float, t1: float) -> np.ndarray:
    return (ts >= t0) & (ts < t1)


def build_frames(spec: dict, seed: Optional[int] = None,
                 asset: Optional[ScoringAsset] = None) -> list[FrameRecord]:
    """Materialize the frame sequence described by a generator spec."""
    asset = asset or default_asset()
    try:
        duration = float(spec["duration_s"])
        fps = float(spec["fps"])
    except KeyError as err:
        raise InvalidSpec(f"generator spec missing {err}")
    if duration < 0 or fps <= 0:
        raise InvalidSpec("duration_s must be >= 0 and fps > 0")
    n = int(round(duration * fps))
    ts = np.arange(n) / fps
    rng = np.random.default_rng(seed)

    defaults = {"baseline_deg": float(spec.get("baseline_deg", 0.0)),
                "amplitude_deg": float(spec.get("amplitude_deg", 0.0)),
                "period_s": float(spec.get("period_s", 10.0)),
                "noise_deg": float(spec.get("noise_deg", 0.0)),
                "phase_deg": 0.0}
    raw_joints = spec.get("joints", {})
    if isinstance(raw_joints, list):
        raw_joints = {name: {} for name in raw_joints}
    waves = {}
    for name, overrides in raw_joints.items():
        joint = JointId.parse(name)
        bad = set(overrides) - set(_WAVE_KEYS)
        if bad:
            raise InvalidSpec(f"unknown wave keys for {name}: {sorted(bad)}")
        waves[joint] = {**defaults, **{k: float(v) for k, v in overrides.items()}}

    angles: dict[JointId, np.ndarray] = {}
    for joint in SCORED_JOINTS:
        lo, hi = asset.valid_range(joint.body_part)
        if joint in waves:
            w = waves[joint]
            if w["period_s"] <= 0:
                raise InvalidSpec(f"period_s must be positive for {joint.key}")
            series = (w["baseline_deg"]
                      + w["amplitude_deg"] * np.sin(2 * math.pi * ts / w["period_s"]
                                                    + math.radians(w["phase_deg"])))
            if w["noise_deg"] > 0:
                series = series + rng.uniform(-w["noise_deg"], w["noise_deg"], size=n)
        else:
            series = np.full(n, NEUTRAL_DEG[joint.body_part])
        angles[joint] = np.clip(series, lo, hi)

    trunk_twist = np.zeros(n)
    neck_twist = np.zeros(n)
    for win in spec.get("twist_windows", ()):
        part = str(win["joint"]).lower()
        target = {"trunk": trunk_twist, "neck": neck_twist}.get(part)
        if target is None:
            raise InvalidSpec(f"twist_windows joint must be trunk or neck, got {part!r}")
        target[_window_mask(ts, float(win["t0"]), float(win["t1"]))] = float(win["angle_deg"])

    flags = {(j, fl): np.zeros(n, dtype=bool) for j in SCORED_JOINTS for fl in MODIFIER_FLAGS}
    for win in spec.get("flag_windows", ()):
        joint = JointId.parse(win["joint"])
        flag = str(win["flag"])
        if flag not in MODIFIER_FLAGS:
            raise InvalidSpec(f"unknown modifier flag {flag!r}")
        flags[(joint, flag)][_window_mask(ts, float(win["t0"]), float(win["t1"]))] = True

    load = np.full(n, float(spec.get("load_kg", 0.0)))
    for win in spec.get("load_windows", ()):
        load[_window_mask(ts, float(win["t0"]), float(win["t1"]))] = float(win["load_kg"])
    if (load < 0).any():
        raise InvalidSpec("load_kg must be non-negative")

    conf = np.full(n, float(spec.get("confidence_mean", 1.0)))
    for win in spec.get("confidence_windows", ()):
        conf[_window_mask(ts, float(win["t0"]), float(win["t1"]))] = float(win["value"])
    if ((conf < 0) | (conf > 1)).any():
        raise InvalidSpec("confidence must stay in [0, 1]")

    for spike in spec.get("injected_spikes", ()):
        joint = JointId.parse(spike["joint"])
        t = float(spike["t"])
        idx = int(round(t * fps))
        if not 0 <= idx < n:
            raise InvalidSpec(f"spike at t={t} outside the recording")
        angles[joint][idx] = float(spike["angle_deg"])

    try:
        coupling = Coupling(str(spec.get("coupling", "good")).lower())
    except ValueError:
        raise InvalidSpec(f"unknown coupling {spec.get('coupling')!r}")
    shock = bool(spec.get("shock", False))
    image_refs = bool(spec.get("image_refs", False))

    frames = []
    for i in range(n):
        modifiers: dict[JointId, set[str]] = {}
        for (joint, fl), arr in flags.items():
            if arr[i]:
                modifiers.setdefault(joint, set()).add(fl)
        frames.append(FrameRecord(
            frame_index=i,
            timestamp_s=round(float(ts[i]), 4),
            angles={j: round(float(angles[j][i]), 4) for j in SCORED_JOINTS},
            modifiers={j: frozenset(v) for j, v in modifiers.items()},
            trunk_twist_deg=round(float(trunk_twist[i]), 4),
            neck_twist_deg=round(float(neck_twist[i]), 4),
            load_kg=round(float(load[i]), 4),
            shock_force=shock,
            coupling=coupling,
            confidence={j: round(float(conf[i]), 4) for j in SCORED_JOINTS},
            image_ref=f"images/frame_{i:06d}.png" if image_refs else None,
        ))
    return frames


def _png_1x1(rgb=(200, 200, 200)) -> bytes:
    def chunk(typ: bytes, data: bytes) -> bytes:
        return (struct.pack(">I", len(data)) + typ + data
                + struct.pack(">I", zlib.crc32(typ + data) & 0xFFFFFFFF))

    ihdr = struct.pack(">IIBBBBB", 1, 1, 8, 2, 0, 0, 0)
    idat = zlib.compress(b"\x00" + bytes(rgb))
    return b"\x89PNG\r\n\x1a\n" + chunk(b"IHDR", ihdr) + chunk(b"IDAT", idat) + chunk(b"IEND", b"")


def generate_synthetic(spec: dict, out_dir: str | Path,
                       seed: Optional[int] = None) -> Path:
    """Write manifest + frames CSV (and stub images if requested); returns
    the manifest path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    frames = build_frames(spec, seed=seed)
    write_frames_csv(frames, out / "frames.csv")
    dataset_id = str(spec.get("id", "synthetic"))
    write_manifest(out / "manifest.json", dataset_id, "frames.csv",
                   float(spec["fps"]), images_dir=".",
                   meta={"generator": "synthetic", "seed": seed})
    if spec.get("write_images") and spec.get("image_refs"):
        img_dir = out / "images"
        img_dir.mkdir(exist_ok=True)
        png = _png_1x1()
        for f in frames:
            (out / f.image_ref).write_bytes(png)
    return out / "manifest.json"
