"""HTTP query service over loaded, scored datasets.

GETs are side-effect-free and always recompute from immutable scored
stores; brush state lives in sessions and only affects requests that name
the session. Aggregates returned here are exactly the library-level calls.
"""
from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import Body, FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import FileResponse

from .model import (
    Dataset,
    EmptyWindow,
    ErgoKitError,
    FilterPolicy,
    JointId,
    OutOfRange,
    SchemaMismatch,
    Side,
    UnknownJoint,
    UnknownTable,
    SCORED_JOINTS,
)
from .aggregate import gauge_distribution, representative_frames, table_aggregate, timeline_window
from .brushes import BrushSet, FrameIdSet, brush_set_from_json, brush_set_to_json, evaluate_composite
from .filters import filter_outliers
from .ingest import load_dataset
from .report import build_report
from .scoring import ScoredDataset, score_dataset
from .tables import ScoringAsset, default_asset


@dataclass
class DatasetEntry:
    dataset: Dataset
    scored: ScoredDataset


@dataclass
class Session:
    session_id: str
    dataset_id: str
    created_at: float
    brush_set: BrushSet = field(default_factory=BrushSet)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


class DataStore:
    def __init__(self, asset: Optional[ScoringAsset] = None,
                 policy: Optional[FilterPolicy] = None):
        self.asset = asset or default_asset()
        self.policy = policy
        self.entries: dict[str, DatasetEntry] = {}

    def add(self, dataset: Dataset) -> DatasetEntry:
        if self.policy is not None and len(dataset.frames) >= self.policy.hampel_window:
            dataset = filter_outliers(dataset, self.policy)
        entry = DatasetEntry(dataset, score_dataset(dataset, self.asset))
        self.entries[dataset.id] = entry
        return entry

    def scan(self, data_dir: str | Path) -> int:
        data_dir = Path(data_dir)
        manifests = sorted(data_dir.glob("*/manifest.json")) + sorted(data_dir.glob("*.manifest.json"))
        for manifest in manifests:
            self.add(load_dataset(manifest))
        return len(manifests)

    def get(self, dataset_id: str) -> DatasetEntry:
        if dataset_id not in self.entries:
            raise HTTPException(404, f"unknown dataset {dataset_id!r}")
        return self.entries[dataset_id]


class SessionStore:
    def __init__(self):
        self.sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, dataset_id: str) -> Session:
        session = Session(uuid.uuid4().hex, dataset_id, time.time())
        with self._lock:
            self.sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            if session_id not in self.sessions:
                raise HTTPException(404, f"unknown session {session_id!r}")
            return self.sessions[session_id]

    def snapshot(self) -> dict:
        """All sessions as canonical JSON (brush sets included)."""
        with self._lock:
            return {"sessions": [
                {"session_id": s.session_id, "dataset_id": s.dataset_id,
                 "created_at": s.created_at,
                 "brush_set": brush_set_to_json(s.brush_set)}
                for s in self.sessions.values()]}

    def restore(self, snapshot: dict) -> int:
        count = 0
        for raw in snapshot.get("sessions", []):
            session = Session(str(raw["session_id"]), str(raw["dataset_id"]),
                              float(raw.get("created_at", time.time())),
                              brush_set_from_json(raw.get("brush_set", {})))
            with self._lock:
                self.sessions[session.session_id] = session
            count += 1
        return count

    def save(self, path) -> None:
        import json
        Path(path).write_text(json.dumps(self.snapshot(), indent=1) + "\n")

    def load(self, path) -> int:
        import json
        return self.restore(json.loads(Path(path).read_text()))


def _parse_side(side: str) -> Side:
    try:
        s = Side(side.lower())
    except ValueError:
        raise HTTPException(400, f"side must be left or right, got {side!r}")
    if s is Side.CENTER:
        raise HTTPException(400, "side must be left or right")
    return s


def create_app(data_dir: Optional[str] = None,
               asset: Optional[ScoringAsset] = None,
               policy: Optional[FilterPolicy] = None) -> FastAPI:
    app = FastAPI(title="ergokit", version="0.1.0")
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])
    store = DataStore(asset=asset, policy=policy)
    sessions = SessionStore()
    app.state.store = store
    app.state.sessions = sessions
    if data_dir:
        store.scan(data_dir)

    @app.exception_handler(ErgoKitError)
    async def _domain_error(request, exc: ErgoKitError):
        from fastapi.responses import JSONResponse
        status = 400
        if isinstance(exc, (UnknownTable, UnknownJoint)):
            status = 404
        return JSONResponse({"detail": str(exc)}, status_code=status)

    def selection_for(entry: DatasetEntry, session_id: Optional[str]) -> Optional[FrameIdSet]:
        if not session_id:
            return None
        session = sessions.get(session_id)
        if session.dataset_id != entry.dataset.id:
            raise HTTPException(400, "session belongs to a different dataset")
        with session.lock:
            brush_set = session.brush_set
        return evaluate_composite(brush_set, entry.scored)

    @app.get("/datasets")
    def list_datasets():
        return {"datasets": [
            {"id": e.dataset.id, "frames": len(e.dataset.frames),
             "included": int(len(e.scored.frame_ids)),
             "excluded": len(e.dataset.excluded), "fps": e.dataset.fps}
            for e in store.entries.values()]}

    @app.get("/datasets/{dataset_id}/summary")
    def dataset_summary(dataset_id: str):
        entry = store.get(dataset_id)
        return build_report(entry.scored)

    @app.get("/datasets/{dataset_id}/tables/{table_id}")
    def table_view(dataset_id: str, table_id: str, side: str = "left",
                   session: Optional[str] = None):
        entry = store.get(dataset_id)
        s = _parse_side(side)
        selection = selection_for(entry, session)
        payload = {"full": table_aggregate(entry.scored, s, table_id).to_json()}
        if selection is not None:
            payload["selected"] = table_aggregate(entry.scored, s, table_id,
                                                  selection.ids).to_json()
            payload["selection_count"] = len(selection)
        return payload

    @app.get("/datasets/{dataset_id}/gauge/{joint}")
    def gauge_view(dataset_id: str, joint: str, session: Optional[str] = None):
        entry = store.get(dataset_id)
        jid = JointId.parse(joint)
        selection = selection_for(entry, session)
        payload = {"full": gauge_distribution(entry.scored, jid).to_json()}
        if selection is not None:
            payload["selected"] = gauge_distribution(entry.scored, jid, selection.ids).to_json()
            payload["selection_count"] = len(selection)
        return payload

    @app.get("/datasets/{dataset_id}/timeline")
    def timeline_view(dataset_id: str, joints: str,
                      t0: Optional[float] = None, t1: Optional[float] = None,
                      max_points: int = Query(500, ge=2),
                      session: Optional[str] = None):
        entry = store.get(dataset_id)
        jids = [JointId.parse(tok) for tok in joints.split(",") if tok.strip()]
        if not jids:
            raise HTTPException(400, "joints query parameter is required")
        ts = entry.scored.timestamps
        if len(ts) == 0:
            raise HTTPException(400, "dataset has no scored frames")
        w0 = float(ts[0]) if t0 is None else t0
        w1 = float(ts[-1]) + 1.0 / entry.dataset.fps if t1 is None else t1
        selection = selection_for(entry, session)
        payload = {"t0": w0, "t1": w1,
                   "full": [s.to_json() for s in
                            timeline_window(entry.scored, jids, w0, w1, max_points)]}
        if selection is not None:
            try:
                payload["selected"] = [s.to_json() for s in
                                       timeline_window(entry.scored, jids, w0, w1,
                                                       max_points, selection.ids)]
            except EmptyWindow:
                payload["selected"] = []
            payload["selection_count"] = len(selection)
        return payload

    @app.get("/datasets/{dataset_id}/representatives")
    def representatives_view(dataset_id: str, table: str = "C", side: str = "left"):
        entry = store.get(dataset_id)
        s = _parse_side(side)
        reps = representative_frames(entry.scored, table, s)
        groups = []
        for score, frame in sorted(reps.items()):
            item = {"score": score, "frame": frame}
            if frame is not None:
                record = entry.dataset.frames[frame]
                item["timestamp_s"] = record.timestamp_s
                item["image_ref"] = record.image_ref
                item["image_url"] = f"/datasets/{dataset_id}/frames/{frame}/image"
            groups.append(item)
        return {"table": table.upper(), "side": s.value, "groups": groups}

    @app.get("/datasets/{dataset_id}/frames/{frame_index}/image")
    def frame_image(dataset_id: str, frame_index: int):
        entry = store.get(dataset_id)
        if not 0 <= frame_index < len(entry.dataset.frames):
            raise HTTPException(404, "frame index out of range")
        record = entry.dataset.frames[frame_index]
        if not record.image_ref or not entry.dataset.images_dir:
            raise HTTPException(404, "frame has no image")
        root = Path(entry.dataset.images_dir).resolve()
        target = (root / record.image_ref).resolve()
        if not target.is_relative_to(root) or not target.is_file():
            raise HTTPException(404, "image file not found")
        return FileResponse(target)

    @app.post("/sessions", status_code=201)
    def create_session(body: dict = Body(...)):
        dataset_id = body.get("dataset_id")
        if not dataset_id:
            raise HTTPException(400, "dataset_id is required")
        store.get(dataset_id)
        session = sessions.create(dataset_id)
        return {"session_id": session.session_id, "dataset_id": dataset_id,
                "created_at": session.created_at}

    @app.put("/sessions/{session_id}/brushes")
    def put_brushes(session_id: str, body: dict = Body(...)):
        session = sessions.get(session_id)
        entry = store.get(session.dataset_id)
        try:
            brush_set = brush_set_from_json(body)
        except SchemaMismatch as err:
            raise HTTPException(400, str(err))
        selection = evaluate_composite(brush_set, entry.scored)  # validates against schema
        with session.lock:
            session.brush_set = brush_set
        return {"brush_set": brush_set_to_json(brush_set), "selection_count": len(selection)}

    @app.get("/sessions/{session_id}/selection")
    def get_selection(session_id: str):
        session = sessions.get(session_id)
        entry = store.get(session.dataset_id)
        with session.lock:
            brush_set = session.brush_set
        selection = evaluate_composite(brush_set, entry.scored)
        return {"count": len(selection), "frame_ids": selection.sorted(),
                "brush_set": brush_set_to_json(brush_set)}

    return app


def serve(data_dir: Optional[str], port: int = 8077, host: str = "127.0.0.1",
          policy: Optional[FilterPolicy] = None) -> None:
    import uvicorn

    app = create_app(data_dir=data_dir, policy=policy)
    uvicorn.run(app, host=host, port=port, log_level="info")
