import numpy as np
import pytest

from ergokit.model import (
    BodyPart,
    Coupling,
    Dataset,
    FilterPolicy,
    FrameRecord,
    JointId,
    Side,
    SCORED_JOINTS,
)
from ergokit.filters import filter_outliers
from ergokit.ingest import load_dataset
from ergokit.scoring import score_dataset
from ergokit.synth import generate_synthetic
from ergokit.tables import default_asset

NEUTRAL = {
    BodyPart.NECK: 5.0,
    BodyPart.TRUNK: 0.0,
    BodyPart.LEG: 10.0,
    BodyPart.UPPER_ARM: 0.0,
    BodyPart.LOWER_ARM: 80.0,
    BodyPart.WRIST: 0.0,
}

# Deterministic cyclic task: heavy initial carry (t < 24 s) drives table C to
# ten before the repetition trigger wakes up (~25 s); after the carry the
# per-cycle peak lands on nine plus the activity point.
PAINTING_SPEC = {
    "id": "painting-demo",
    "duration_s": 120, "fps": 30, "noise_deg": 0, "period_s": 12,
    "joints": {
        "trunk": {"baseline_deg": 28, "amplitude_deg": 38},
        "neck": {"baseline_deg": 8, "amplitude_deg": 16},
        "upper_arm_right": {"baseline_deg": 45, "amplitude_deg": 48},
        "lower_arm_right": {"baseline_deg": 75, "amplitude_deg": 35},
        "wrist_right": {"baseline_deg": 5, "amplitude_deg": 18},
        "upper_arm_left": {"baseline_deg": 15, "amplitude_deg": 15},
        "lower_arm_left": {"baseline_deg": 80, "amplitude_deg": 10},
        "wrist_left": {"baseline_deg": 5, "amplitude_deg": 8},
        "leg_left": {"baseline_deg": 20, "amplitude_deg": 18},
        "leg_right": {"baseline_deg": 20, "amplitude_deg": 18, "phase_deg": 10},
    },
    "load_kg": 3,
    "load_windows": [{"t0": 0, "t1": 24, "load_kg": 12}],
    "coupling": "fair",
    "image_refs": True,
    "write_images": True,
}


def make_frame(frame_index=0, timestamp_s=None, angles=None, flags=None,
               load_kg=0.0, shock=False, coupling=Coupling.GOOD,
               confidence=1.0, image_ref=None, trunk_twist_deg=0.0,
               neck_twist_deg=0.0, fps=30.0):
    """Neutral frame with selective overrides; angles/flags keyed by joint key."""
    full = {j: NEUTRAL[j.body_part] for j in SCORED_JOINTS}
    for key, val in (angles or {}).items():
        full[JointId.parse(key)] = val
    modifiers = {}
    for key, names in (flags or {}).items():
        modifiers[JointId.parse(key)] = frozenset(names)
    return FrameRecord(
        frame_index=frame_index,
        timestamp_s=frame_index / fps if timestamp_s is None else timestamp_s,
        angles=full,
        modifiers=modifiers,
        trunk_twist_deg=trunk_twist_deg,
        neck_twist_deg=neck_twist_deg,
        load_kg=load_kg,
        shock_force=shock,
        coupling=coupling,
        confidence={j: confidence for j in SCORED_JOINTS},
        image_ref=image_ref,
    )


def make_dataset(frames, fps=30.0, dataset_id="test", excluded=frozenset()):
    return Dataset(dataset_id, tuple(frames), fps, {}, frozenset(excluded))


def random_frames(rng: np.random.Generator, n: int, asset=None, with_images=False,
                  snap_to_edges=True):
    """Random frames spanning every band, flag, load and coupling case."""
    asset = asset or default_asset()
    per_joint = {}
    for j in SCORED_JOINTS:
        lo, hi = asset.valid_range(j.body_part)
        vals = rng.uniform(lo, hi, size=n)
        if snap_to_edges:
            edges = [b.lo for b in asset.angle_bands[j.body_part].bands] + [hi]
            snap = rng.random(n) < 0.08
            vals[snap] = rng.choice(edges, size=int(snap.sum()))
        per_joint[j] = vals
    flag_draw = {}
    flag_space = [(j, fl) for j in SCORED_JOINTS
                  for fl in asset.angle_bands[j.body_part].modifiers]
    for j, fl in flag_space:
        flag_draw[(j, fl)] = rng.random(n) < 0.15
    loads = rng.uniform(0, 15, size=n)
    edge = rng.random(n)
    loads[edge < 0.05] = 5.0
    loads[(edge >= 0.05) & (edge < 0.1)] = 10.0
    shocks = rng.random(n) < 0.1
    coupling_values = [c for c in Coupling]
    couplings = rng.integers(0, len(coupling_values), size=n)

    frames = []
    for i in range(n):
        modifiers = {}
        for (j, fl), arr in flag_draw.items():
            if arr[i]:
                modifiers.setdefault(j, set()).add(fl)
        frames.append(FrameRecord(
            frame_index=i, timestamp_s=i / 30.0,
            angles={j: float(per_joint[j][i]) for j in SCORED_JOINTS},
            modifiers={j: frozenset(v) for j, v in modifiers.items()},
            load_kg=float(loads[i]), shock_force=bool(shocks[i]),
            coupling=coupling_values[couplings[i]],
            confidence={j: 1.0 for j in SCORED_JOINTS},
            image_ref=f"images/frame_{i:06d}.png" if with_images else None,
        ))
    return frames


@pytest.fixture(scope="session")
def asset():
    return default_asset()


@pytest.fixture(scope="session")
def painting_manifest(tmp_path_factory):
    # nested under a private data root so the service can scan the parent dir
    out = tmp_path_factory.mktemp("painting-data") / "painting-demo"
    return generate_synthetic(PAINTING_SPEC, out, seed=20)


@pytest.fixture(scope="session")
def painting_scored(painting_manifest):
    dataset = load_dataset(painting_manifest)
    dataset = filter_outliers(dataset, FilterPolicy())
    return score_dataset(dataset)


@pytest.fixture(scope="session")
def random_scored_5k():
    frames = random_frames(np.random.default_rng(11), 5000, with_images=True)
    return score_dataset(make_dataset(frames, dataset_id="random5k"))
