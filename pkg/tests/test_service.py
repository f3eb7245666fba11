import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from ergokit.model import JointId, Side
from ergokit.aggregate import gauge_distribution, table_aggregate, timeline_window
from ergokit.brushes import BrushSet, TimeRangeBrush, brush_set_to_json, evaluate_composite
from ergokit.ingest import load_dataset
from ergokit.scoring import score_dataset
from ergokit.server import create_app

from conftest import PAINTING_SPEC


@pytest.fixture(scope="module")
def client(painting_manifest):
    app = create_app(data_dir=str(painting_manifest.parent.parent))
    with TestClient(app) as c:
        yield c


@pytest.fixture(scope="module")
def scored(painting_manifest):
    return score_dataset(load_dataset(painting_manifest))


def test_list_datasets(client):
    data = client.get("/datasets").json()
    assert len(data["datasets"]) == 1
    entry = data["datasets"][0]
    assert entry["id"] == "painting-demo"
    assert entry["frames"] == 3600


def test_summary_counts(client):
    summary = client.get("/datasets/painting-demo/summary").json()
    assert summary["dataset"]["frames"] == 3600
    assert sum(summary["action_levels_total"].values()) == 3600 * 2


def test_table_endpoint_equals_library(client, scored):
    got = client.get("/datasets/painting-demo/tables/A", params={"side": "right"}).json()
    expected = table_aggregate(scored, Side.RIGHT, "A").to_json()
    assert got["full"] == expected


def test_gauge_endpoint_equals_library(client, scored):
    got = client.get("/datasets/painting-demo/gauge/upper_arm_right").json()
    expected = gauge_distribution(scored, JointId.parse("upper_arm_right")).to_json()
    assert got["full"] == expected


def test_timeline_endpoint_bounded_buckets(client, scored):
    got = client.get("/datasets/painting-demo/timeline",
                     params={"joints": "trunk,upper_arm_right", "max_points": 50}).json()
    assert len(got["full"]) == 2
    for series in got["full"]:
        assert len(series["buckets"]) <= 50
    expected = timeline_window(scored, [JointId.parse("trunk"),
                                        JointId.parse("upper_arm_right")],
                               got["t0"], got["t1"], 50)
    assert got["full"] == [s.to_json() for s in expected]


def test_representatives_endpoint(client, scored):
    got = client.get("/datasets/painting-demo/representatives",
                     params={"table": "C", "side": "right"}).json()
    scores = [g["score"] for g in got["groups"]]
    assert 9 in scores and 10 in scores
    for group in got["groups"]:
        assert group["frame"] is not None
        assert group["image_url"].endswith(f"/frames/{group['frame']}/image")


def test_frame_image_served(client, painting_manifest):
    reps = client.get("/datasets/painting-demo/representatives").json()
    frame = reps["groups"][0]["frame"]
    resp = client.get(f"/datasets/painting-demo/frames/{frame}/image")
    assert resp.status_code == 200
    assert resp.content[:8] == b"\x89PNG\r\n\x1a\n"


def test_frame_image_404(client):
    assert client.get("/datasets/painting-demo/frames/999999/image").status_code == 404


def test_unknown_dataset_404(client):
    assert client.get("/datasets/nope/summary").status_code == 404


def test_bad_side_400(client):
    assert client.get("/datasets/painting-demo/tables/A",
                      params={"side": "middle"}).status_code == 400


def test_unknown_joint_404(client):
    assert client.get("/datasets/painting-demo/gauge/elbow_left").status_code == 404


def test_session_brush_selection_flow(client, scored):
    created = client.post("/sessions", json={"dataset_id": "painting-demo"})
    assert created.status_code == 201
    sid = created.json()["session_id"]

    brush_set = {"combine": "intersection", "brushes": [
        {"id": "t", "type": "time_range", "ranges": [[10.0, 20.0]]},
        {"id": "s", "type": "score_bin", "table": "A", "side": "right",
         "level": 1, "attribute": "trunk", "values": [3, 4]},
    ]}
    put = client.put(f"/sessions/{sid}/brushes", json=brush_set)
    assert put.status_code == 200

    selection = client.get(f"/sessions/{sid}/selection").json()
    expected = evaluate_composite(
        BrushSet((TimeRangeBrush("t", ((10.0, 20.0),)),), "intersection"), scored)
    trunk = scored.sides[Side.RIGHT].attribute("trunk")
    by_scan = {int(f) for f, tr in zip(scored.frame_ids, trunk)
               if int(f) in expected.ids and tr in (3, 4)}
    assert set(selection["frame_ids"]) == by_scan
    assert selection["count"] == put.json()["selection_count"]

    overlay = client.get("/datasets/painting-demo/tables/A",
                         params={"side": "right", "session": sid}).json()
    assert overlay["selection_count"] == len(by_scan)
    assert overlay["selected"]["n"] == len(by_scan)
    assert overlay["full"]["n"] == len(scored.frame_ids)


def test_sessions_are_isolated(client):
    s1 = client.post("/sessions", json={"dataset_id": "painting-demo"}).json()["session_id"]
    s2 = client.post("/sessions", json={"dataset_id": "painting-demo"}).json()["session_id"]
    client.put(f"/sessions/{s1}/brushes", json={
        "combine": "intersection",
        "brushes": [{"id": "t", "type": "time_range", "ranges": [[0.0, 1.0]]}]})
    sel1 = client.get(f"/sessions/{s1}/selection").json()
    sel2 = client.get(f"/sessions/{s2}/selection").json()
    assert sel1["count"] < sel2["count"]  # s2 still unconstrained
    assert sel2["brush_set"]["brushes"] == []


def test_put_bad_brush_400(client):
    sid = client.post("/sessions", json={"dataset_id": "painting-demo"}).json()["session_id"]
    resp = client.put(f"/sessions/{sid}/brushes",
                      json={"brushes": [{"type": "mystery", "id": "x"}]})
    assert resp.status_code == 400


def test_gets_are_side_effect_free(client):
    a = client.get("/datasets/painting-demo/tables/C", params={"side": "left"}).json()
    b = client.get("/datasets/painting-demo/tables/C", params={"side": "left"}).json()
    assert a == b


def test_session_snapshot_round_trip(client, tmp_path):
    from ergokit.server import SessionStore

    sid = client.post("/sessions", json={"dataset_id": "painting-demo"}).json()["session_id"]
    brush_set = {"combine": "union", "brushes": [
        {"id": "a", "type": "time_range", "ranges": [[1.0, 2.0]]},
        {"id": "b", "type": "angle_range", "joint": "wrist_left",
         "ranges": [[0.0, 10.0]], "active": False},
    ]}
    client.put(f"/sessions/{sid}/brushes", json=brush_set)

    store = client.app.state.sessions
    path = tmp_path / "sessions.json"
    store.save(path)
    fresh = SessionStore()
    assert fresh.load(path) == len(store.sessions)
    restored = fresh.get(sid)
    assert restored.brush_set.combine == "union"
    assert len(restored.brush_set.brushes) == 2
    assert restored.brush_set.brushes[1].active is False


def test_timeline_selection_overlay(client, scored):
    sid = client.post("/sessions", json={"dataset_id": "painting-demo"}).json()["session_id"]
    client.put(f"/sessions/{sid}/brushes", json={
        "combine": "intersection",
        "brushes": [{"id": "t", "type": "time_range", "ranges": [[30.0, 60.0]]}]})
    got = client.get("/datasets/painting-demo/timeline",
                     params={"joints": "trunk", "max_points": 40,
                             "session": sid}).json()
    assert got["selection_count"] > 0
    assert len(got["selected"]) == 1
    sel_buckets = got["selected"][0]["buckets"]
    assert all(b["t1"] >= 30.0 and b["t0"] <= 60.0 for b in sel_buckets)
