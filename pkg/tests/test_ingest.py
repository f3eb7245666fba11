import csv
import json
import math

import pytest

from ergokit.model import (
    BodyPart,
    JointId,
    MissingManifest,
    NonMonotoneTimestamp,
    SchemaMismatch,
    Side,
)
from ergokit.ingest import (
    COLUMNS,
    NECK_TWIST_FLAG_DEG,
    TRUNK_TWIST_FLAG_DEG,
    format_float,
    frame_to_row,
    load_dataset,
    read_frames_csv,
    write_frames_csv,
    write_manifest,
)
from ergokit.synth import build_frames, generate_synthetic

from conftest import make_frame


def test_canonical_schema_is_30_columns():
    assert len(COLUMNS) == 30
    assert COLUMNS[0] == "frame_index" and COLUMNS[1] == "timestamp_s"
    assert COLUMNS[-1] == "image_ref"


def _write_dataset(tmp_path, frames, fps=30.0, dataset_id="t"):
    write_frames_csv(frames, tmp_path / "frames.csv")
    write_manifest(tmp_path / "manifest.json", dataset_id, "frames.csv", fps)
    return tmp_path / "manifest.json"


def test_round_trip_is_lossless(tmp_path):
    spec = {"duration_s": 3, "fps": 30, "noise_deg": 1.5,
            "joints": {"trunk": {"baseline_deg": 20, "amplitude_deg": 30}},
            "load_kg": 6.5, "coupling": "poor", "image_refs": True}
    frames = build_frames(spec, seed=4)
    manifest = _write_dataset(tmp_path, frames)
    ds = load_dataset(manifest)
    assert len(ds.frames) == 90
    # serialize again: identical rows (all floats were already <= 4 decimals)
    second = tmp_path / "again.csv"
    write_frames_csv(ds.frames, second)
    assert second.read_text() == (tmp_path / "frames.csv").read_text()
    for a, b in zip(frames, ds.frames):
        assert a.angles == b.angles
        assert a.modifiers == b.modifiers
        assert math.isclose(a.timestamp_s, b.timestamp_s)
        assert a.load_kg == b.load_kg and a.coupling == b.coupling
        assert a.image_ref == b.image_ref


def test_empty_data_rows_ok(tmp_path):
    manifest = _write_dataset(tmp_path, [])
    ds = load_dataset(manifest)
    assert len(ds.frames) == 0


def test_missing_manifest():
    with pytest.raises(MissingManifest):
        load_dataset("/nonexistent/manifest.json")


def test_manifest_missing_keys(tmp_path):
    (tmp_path / "manifest.json").write_text(json.dumps({"id": "x"}))
    with pytest.raises(MissingManifest):
        load_dataset(tmp_path / "manifest.json")


def test_non_numeric_trunk_angle_reports_row(tmp_path):
    frames = [make_frame(i) for i in range(5)]
    manifest = _write_dataset(tmp_path, frames)
    rows = (tmp_path / "frames.csv").read_text().splitlines()
    col = COLUMNS.index("trunk_center_deg")
    cells = rows[3].split(",")
    cells[col] = "oops"
    rows[3] = ",".join(cells)
    (tmp_path / "frames.csv").write_text("\n".join(rows) + "\n")

    with pytest.raises(SchemaMismatch) as err:
        load_dataset(manifest)
    assert err.value.row == 3
    assert err.value.column == "trunk_center_deg"

    ds = load_dataset(manifest, lenient=True)
    assert len(ds.frames) == 4
    diags = ds.meta["load_diagnostics"]
    assert diags[0]["row"] == 3 and diags[0]["column"] == "trunk_center_deg"


def test_non_monotone_timestamp(tmp_path):
    frames = [make_frame(0, timestamp_s=0.0), make_frame(1, timestamp_s=2.0),
              make_frame(2, timestamp_s=1.0)]
    manifest = _write_dataset(tmp_path, frames)
    with pytest.raises(NonMonotoneTimestamp) as err:
        load_dataset(manifest)
    assert err.value.row == 3
    ds = load_dataset(manifest, lenient=True)
    assert len(ds.frames) == 2


def test_header_mismatch(tmp_path):
    (tmp_path / "frames.csv").write_text("a,b,c\n1,2,3\n")
    write_manifest(tmp_path / "manifest.json", "t", "frames.csv", 30.0)
    with pytest.raises(SchemaMismatch):
        load_dataset(tmp_path / "manifest.json")


def test_empty_timestamp_derived_from_fps(tmp_path):
    frames = [make_frame(i) for i in range(3)]
    manifest = _write_dataset(tmp_path, frames, fps=10.0)
    rows = (tmp_path / "frames.csv").read_text().splitlines()
    out = [rows[0]]
    for r in rows[1:]:
        cells = r.split(",")
        cells[1] = ""
        out.append(",".join(cells))
    (tmp_path / "frames.csv").write_text("\n".join(out) + "\n")
    ds = load_dataset(manifest)
    assert [f.timestamp_s for f in ds.frames] == [0.0, 0.1, 0.2]


def test_gapped_frame_index_reindexed(tmp_path):
    frames = [make_frame(0, timestamp_s=0.0), make_frame(1, timestamp_s=0.5),
              make_frame(2, timestamp_s=1.0)]
    manifest = _write_dataset(tmp_path, frames)
    rows = (tmp_path / "frames.csv").read_text().splitlines()
    for i, new_idx in ((2, "5"), (3, "9")):
        cells = rows[i].split(",")
        cells[0] = new_idx
        rows[i] = ",".join(cells)
    (tmp_path / "frames.csv").write_text("\n".join(rows) + "\n")
    ds = load_dataset(manifest)
    assert [f.frame_index for f in ds.frames] == [0, 1, 2]
    assert ds.meta["source_frame_index"]["last"] == 9


def test_twist_flags_derived_from_twist_angles(tmp_path):
    frames = [make_frame(0, trunk_twist_deg=TRUNK_TWIST_FLAG_DEG,
                         neck_twist_deg=NECK_TWIST_FLAG_DEG - 0.1),
              make_frame(1, trunk_twist_deg=-3.0, neck_twist_deg=-25.0)]
    manifest = _write_dataset(tmp_path, frames)
    ds = load_dataset(manifest)
    trunk = JointId(BodyPart.TRUNK, Side.CENTER)
    neck = JointId(BodyPart.NECK, Side.CENTER)
    assert "twist" in ds.frames[0].flags(trunk)
    assert "twist" not in ds.frames[0].flags(neck)
    assert "twist" not in ds.frames[1].flags(trunk)
    assert "twist" in ds.frames[1].flags(neck)


def test_bad_coupling_and_confidence(tmp_path):
    frames = [make_frame(0)]
    manifest = _write_dataset(tmp_path, frames)
    rows = (tmp_path / "frames.csv").read_text().splitlines()
    cells = rows[1].split(",")
    cells[COLUMNS.index("coupling")] = "sticky"
    (tmp_path / "frames.csv").write_text(rows[0] + "\n" + ",".join(cells) + "\n")
    with pytest.raises(SchemaMismatch) as err:
        load_dataset(manifest)
    assert err.value.column == "coupling"


def test_format_float():
    assert format_float(1.0) == "1"
    assert format_float(0.12345) == "0.1235"  # rounded to 4 places
    assert format_float(-0.00001) == "0"
    assert format_float(62.8) == "62.8"


def test_dataset1_scale_load(tmp_path):
    # scale check against the published dataset size: 15861 rows, 30 columns
    spec = {"id": "scale", "duration_s": 15861 / 30.0, "fps": 30,
            "joints": {"trunk": {"baseline_deg": 15, "amplitude_deg": 20}},
            "noise_deg": 0.4}
    manifest = generate_synthetic(spec, tmp_path, seed=1)
    with open(tmp_path / "frames.csv", newline="") as fh:
        header = next(csv.reader(fh))
    assert len(header) == 30
    ds = load_dataset(manifest)
    assert len(ds.frames) == 15861
