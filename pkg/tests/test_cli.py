import csv
import json
from collections import Counter

import pytest

from ergokit.cli import main
from ergokit.report import SCORED_COLUMNS, read_scored_csv

from conftest import PAINTING_SPEC


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(scope="module")
def scored_dir(painting_manifest, tmp_path_factory):
    out = tmp_path_factory.mktemp("scored")
    code = main(["score", str(painting_manifest), "--out", str(out)])
    assert code == 0
    return out


def test_score_writes_outputs(scored_dir):
    assert (scored_dir / "scored.csv").is_file()
    assert (scored_dir / "report.json").is_file()
    report = json.loads((scored_dir / "report.json").read_text())
    assert report["dataset"]["frames"] == 3600
    assert report["dataset"]["scored"] == 3600
    assert "runtime_s" in report
    assert len(report["asset"]["checksum"]) == 64


def test_scored_csv_shape(scored_dir):
    with open(scored_dir / "scored.csv", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = list(reader)
    assert tuple(header) == SCORED_COLUMNS
    assert len(rows) == 3600 * 2  # both sides


def test_report_totals_conserve_counts(scored_dir):
    report = json.loads((scored_dir / "report.json").read_text())
    total = sum(report["action_levels_total"].values())
    assert total == report["dataset"]["scored"] * 2
    for side in ("left", "right"):
        side_report = report["sides"][side]
        assert sum(side_report["action_levels"].values()) == report["dataset"]["scored"]
        assert sum(side_report["grand_histogram"]) == report["dataset"]["scored"]


def test_report_matches_bruteforce_recount(scored_dir):
    rows = read_scored_csv(scored_dir / "scored.csv")
    report = json.loads((scored_dir / "report.json").read_text())
    recount = Counter(r["action_level"] for r in rows)
    for name, count in report["action_levels_total"].items():
        assert count == recount.get(name, 0)


def test_worst_frames_are_high_risk(scored_dir):
    report = json.loads((scored_dir / "report.json").read_text())
    worst = report["worst_frames"]
    assert worst[0]["grand"] == 10
    assert worst[0]["action_level"] == "high"
    assert all(w["image_ref"] for w in worst)


def test_report_command_recomputes(scored_dir, capsys):
    code, out, _ = run(capsys, "report", str(scored_dir / "scored.csv"))
    assert code == 0
    recomputed = json.loads(out)
    original = json.loads((scored_dir / "report.json").read_text())
    assert recomputed["action_levels_total"] == original["action_levels_total"]
    assert recomputed["sides"] == original["sides"]


def test_gen_then_score_empty_dataset(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"id": "empty", "duration_s": 0, "fps": 30}))
    code, out, _ = run(capsys, "gen", str(spec), "--out", str(tmp_path / "d"))
    assert code == 0
    manifest = out.strip()
    code, out, _ = run(capsys, "score", manifest, "--out", str(tmp_path / "s"))
    assert code == 0
    report = json.loads((tmp_path / "s" / "report.json").read_text())
    assert report["dataset"]["frames"] == 0
    assert sum(report["action_levels_total"].values()) == 0


def test_missing_manifest_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "score", str(tmp_path / "nope.json"))
    assert code == 2
    assert "validation error" in err


def test_bad_row_strict_exits_2_lenient_passes(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"id": "t", "duration_s": 1, "fps": 10}))
    code, out, _ = run(capsys, "gen", str(spec), "--out", str(tmp_path / "d"))
    manifest = out.strip()
    frames_csv = tmp_path / "d" / "frames.csv"
    lines = frames_csv.read_text().splitlines()
    cells = lines[2].split(",")
    cells[3] = "garbage"  # trunk angle column
    lines[2] = ",".join(cells)
    frames_csv.write_text("\n".join(lines) + "\n")

    code, _, err = run(capsys, "score", manifest, "--out", str(tmp_path / "s1"))
    assert code == 2 and "row 2" in err

    code, out, _ = run(capsys, "score", manifest, "--lenient", "--out", str(tmp_path / "s2"))
    assert code == 0
    summary = json.loads(out)
    assert summary["frames"] == 9


def test_corrupt_asset_exits_3_and_names_cells(tmp_path, capsys):
    from importlib import resources
    raw = json.loads(resources.files("ergokit").joinpath("assets/reba_tables.json").read_text())
    raw["tables"]["B"]["cells"][5] = 1  # monotone violation along upper_arm
    bad = tmp_path / "bad_asset.json"
    bad.write_text(json.dumps(raw))
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"id": "t", "duration_s": 1, "fps": 10}))
    code, out, _ = run(capsys, "gen", str(spec), "--out", str(tmp_path / "d"))
    manifest = out.strip()
    code, _, err = run(capsys, "score", manifest, "--asset", str(bad))
    assert code == 3
    assert "table B" in err and "upper_arm" in err


def test_gen_invalid_spec_exits_2(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"id": "x", "duration_s": -5, "fps": 30}))
    code, _, err = run(capsys, "gen", str(spec))
    assert code == 2
    assert "invalid generator spec" in err
