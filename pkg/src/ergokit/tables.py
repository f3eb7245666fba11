"""Score tables and the versioned scoring asset they ship in."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

from .model import (
    AssetInvariantError,
    BodyPart,
    IndexOutOfRange,
    UnknownTable,
)

TABLE_IDS = ("A", "B", "C")


@dataclass(frozen=True)
class ScoreTable:
    """A dense lookup table with 1-based indices along named dimensions."""

    table_id: str
    dims: tuple[tuple[str, int], ...]
    cells: np.ndarray  # shape == tuple(card for _, card in dims)
    vertical_dim: str
    version: str

    @property
    def dim_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.dims)

    def cardinality(self, dim: str) -> int:
        for name, card in self.dims:
            if name == dim:
                return card
        raise UnknownTable(f"table {self.table_id} has no dimension {dim!r}")

    def lookup(self, indices) -> int:
        if len(indices) != len(self.dims):
            raise IndexOutOfRange("arity", len(indices), len(self.dims))
        pos = []
        for (name, card), idx in zip(self.dims, indices):
            if not 1 <= idx <= card:
                raise IndexOutOfRange(name, idx, card)
            pos.append(idx - 1)
        return int(self.cells[tuple(pos)])

    def lookup_array(self, *index_arrays: np.ndarray) -> np.ndarray:
        """Vectorized lookup; indices are 1-based arrays, validated."""
        for (name, card), arr in zip(self.dims, index_arrays):
            bad = (arr < 1) | (arr > card)
            if bad.any():
                i = int(np.flatnonzero(bad)[0])
                raise IndexOutOfRange(name, int(arr[i]), card)
        return self.cells[tuple(a - 1 for a in index_arrays)]

    def validate(self) -> None:
        shape = tuple(card for _, card in self.dims)
        if self.cells.shape != shape:
            raise AssetInvariantError(
                f"table {self.table_id}: cell grid shape {self.cells.shape} != dims {shape}")
        if (self.cells < 1).any():
            raise AssetInvariantError(f"table {self.table_id}: cells must be positive integers")
        for axis, (name, _) in enumerate(self.dims):
            diffs = np.diff(self.cells, axis=axis)
            if (diffs < 0).any():
                where = np.argwhere(diffs < 0)[0]
                cell = tuple(int(v) + 1 for v in where)
                raise AssetInvariantError(
                    f"table {self.table_id}: cells decrease along {name} near index {cell}")
        if self.vertical_dim not in self.dim_names:
            raise AssetInvariantError(
                f"table {self.table_id}: vertical_dim {self.vertical_dim!r} not among dims")


@dataclass(frozen=True)
class AngleBand:
    lo: float
    hi: float
    score: int
    closed: bool = False  # hi-inclusive

    def contains(self, angle: float, last: bool) -> bool:
        if self.lo <= angle < self.hi:
            return True
        return angle == self.hi and (self.closed or last)


@dataclass(frozen=True)
class JointBandConfig:
    valid_range: tuple[float, float]
    bands: tuple[AngleBand, ...]
    modifiers: dict[str, int]
    score_range: tuple[int, int]

    def validate(self, part: str) -> None:
        lo, hi = self.valid_range
        if not self.bands:
            raise AssetInvariantError(f"{part}: no angle bands")
        if self.bands[0].lo != lo or self.bands[-1].hi != hi:
            raise AssetInvariantError(f"{part}: bands do not span the valid range")
        for a, b in zip(self.bands, self.bands[1:]):
            if a.hi != b.lo:
                raise AssetInvariantError(f"{part}: gap or overlap between bands at {a.hi}")
        smin, smax = self.score_range
        for band in self.bands:
            if not smin <= band.score <= smax:
                raise AssetInvariantError(f"{part}: band score {band.score} outside {self.score_range}")


@dataclass(frozen=True)
class ActivityThresholds:
    hold_tolerance_deg: float = 5.0
    hold_min_seconds: float = 60.0
    crossings_per_minute: int = 4
    rapid_change_deg: float = 30.0
    window_seconds: float = 60.0


@dataclass(frozen=True)
class ScoringAsset:
    """Everything the scorer needs: tables, angle bands and adjustments."""

    version: str
    checksum: str
    tables: dict[str, ScoreTable]
    angle_bands: dict[BodyPart, JointBandConfig]
    load_light_below_kg: float
    load_heavy_above_kg: float
    shock_bonus: int
    coupling_scores: dict[str, int]
    action_levels: tuple[tuple[int, str], ...]  # (max_grand, level) ascending
    activity: ActivityThresholds
    source_path: Optional[str] = None

    def table(self, table_id: str) -> ScoreTable:
        tid = table_id.upper()
        if tid not in self.tables:
            raise UnknownTable(f"unknown table {table_id!r}")
        return self.tables[tid]

    def valid_range(self, part: BodyPart) -> tuple[float, float]:
        return self.angle_bands[part].valid_range

    def validate(self) -> None:
        for t in self.tables.values():
            t.validate()
        if set(self.tables) != set(TABLE_IDS):
            raise AssetInvariantError(f"asset must define tables {TABLE_IDS}")
        a = self.tables["A"]
        if a.lookup([2, 3, 5]) != 8:
            raise AssetInvariantError("table A fails the (neck=2, legs=3, trunk=5) -> 8 anchor")
        for part, cfg in self.angle_bands.items():
            cfg.validate(part.value)
        if set(self.angle_bands) != set(BodyPart):
            raise AssetInvariantError("angle_bands must cover every body part")
        levels = [m for m, _ in self.action_levels]
        if levels != sorted(levels) or levels[-1] < 15:
            raise AssetInvariantError("action levels must ascend and cover grand scores up to 15")


def _parse_table(table_id: str, raw: dict, version: str) -> ScoreTable:
    dims = tuple((str(n), int(c)) for n, c in raw["dims"])
    shape = tuple(c for _, c in dims)
    cells = np.array(raw["cells"], dtype=np.int64)
    if cells.size != int(np.prod(shape)):
        raise AssetInvariantError(
            f"table {table_id}: expected {int(np.prod(shape))} cells, got {cells.size}")
    return ScoreTable(table_id, dims, cells.reshape(shape), raw["vertical_dim"], version)


def load_asset(path: str | Path | None = None) -> ScoringAsset:
    """Load and validate a scoring asset; defaults to the bundled one."""
    if path is None:
        data = resources.files("ergokit").joinpath("assets/reba_tables.json").read_bytes()
        source = "bundled:reba_tables.json"
    else:
        data = Path(path).read_bytes()
        source = str(path)
    raw = json.loads(data)
    version = raw["version"]
    tables = {tid: _parse_table(tid, raw["tables"][tid], version) for tid in raw["tables"]}
    bands = {}
    for part_name, cfg in raw["angle_bands"].items():
        part = BodyPart(part_name)
        bands[part] = JointBandConfig(
            valid_range=tuple(cfg["valid_range"]),
            bands=tuple(AngleBand(float(b["lo"]), float(b["hi"]), int(b["score"]),
                                  bool(b.get("closed", False)))
                        for b in cfg["bands"]),
            modifiers={str(k): int(v) for k, v in cfg["modifiers"].items()},
            score_range=tuple(cfg["score_range"]),
        )
    lb = raw["load_bands"]
    asset = ScoringAsset(
        version=version,
        checksum=hashlib.sha256(data).hexdigest(),
        tables=tables,
        angle_bands=bands,
        load_light_below_kg=float(lb["light_below_kg"]),
        load_heavy_above_kg=float(lb["heavy_above_kg"]),
        shock_bonus=int(lb["shock_bonus"]),
        coupling_scores={str(k): int(v) for k, v in raw["coupling_scores"].items()},
        action_levels=tuple((int(e["max_grand"]), str(e["level"])) for e in raw["action_levels"]),
        activity=ActivityThresholds(**raw.get("activity", {})),
        source_path=source,
    )
    asset.validate()
    return asset


def table_lookup(table: ScoreTable, indices) -> int:
    """Pure lookup of one cell; indices are 1-based, one per dimension."""
    return table.lookup(indices)


_DEFAULT_ASSET: list[ScoringAsset] = []


def default_asset() -> ScoringAsset:
    if not _DEFAULT_ASSET:
        _DEFAULT_ASSET.append(load_asset())
    return _DEFAULT_ASSET[0]
