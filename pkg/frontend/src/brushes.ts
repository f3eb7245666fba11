import type { BrushJson, BrushSetJson, SideName, TableId } from "./types.js";

/** Client-side mirror of the service brush model.
 *
 * Heatmap cell clicks accumulate into one brush per (table, side): clicking
 * more cells extends the same selection rather than creating a composite.
 * Everything must serialize to the canonical brush-set JSON the service
 * accepts, so the state is kept in that shape already.
 */
export class SelectionState {
  brushes: BrushJson[] = [];
  combine: "intersection" | "union" = "intersection";
  sessionId: string | null = null;
  hover: { view: string; detail: string } | null = null;
  private counter = 0;

  toJson(): BrushSetJson {
    return { combine: this.combine, brushes: this.brushes.map((b) => ({ ...b })) };
  }

  loadJson(data: BrushSetJson): void {
    this.combine = data.combine ?? "intersection";
    this.brushes = data.brushes.map((b) => ({ ...b }));
  }

  private nextId(prefix: string): string {
    this.counter += 1;
    return `${prefix}-${this.counter}`;
  }

  clear(): void {
    this.brushes = [];
  }

  /** Toggle one heatmap cell; cells of one table view share a single brush. */
  toggleHeatmapCell(table: TableId, side: SideName, row: number, col: number): void {
    const existing = this.brushes.find(
      (b) => b.type === "heatmap_cell" && b.table === table && b.side === side);
    if (!existing) {
      this.brushes.push({ id: this.nextId("cells"), type: "heatmap_cell",
                          table, side, cells: [[row, col]], active: true });
      return;
    }
    const brush = existing as Extract<BrushJson, { type: "heatmap_cell" }>;
    const idx = brush.cells.findIndex(([r, c]) => r === row && c === col);
    if (idx >= 0) {
      brush.cells.splice(idx, 1);
      if (brush.cells.length === 0) {
        this.brushes = this.brushes.filter((b) => b !== brush);
      }
    } else {
      brush.cells.push([row, col]);
    }
  }

  /** Toggle one histogram bin value; bins of one attribute share a brush. */
  toggleScoreBin(table: TableId, side: SideName, level: number, attribute: string,
                 value: number): void {
    const existing = this.brushes.find(
      (b) => b.type === "score_bin" && b.table === table && b.side === side
        && b.attribute === attribute);
    if (!existing) {
      this.brushes.push({ id: this.nextId("bin"), type: "score_bin", table, side,
                          level, attribute, values: [value], active: true });
      return;
    }
    const brush = existing as Extract<BrushJson, { type: "score_bin" }>;
    const idx = brush.values.indexOf(value);
    if (idx >= 0) {
      brush.values.splice(idx, 1);
      if (brush.values.length === 0) {
        this.brushes = this.brushes.filter((b) => b !== brush);
      }
    } else {
      brush.values.push(value);
    }
  }

  /** Angle brush from the gauge; multiple ranges live inside one brush. */
  setAngleBrush(joint: string, ranges: [number, number][]): string {
    const existing = this.brushes.find(
      (b) => b.type === "angle_range" && b.joint === joint);
    if (existing && existing.type === "angle_range") {
      existing.ranges = ranges;
      return existing.id;
    }
    const id = this.nextId("angle");
    this.brushes.push({ id, type: "angle_range", joint, ranges, active: true });
    return id;
  }

  /** Each timeline range brush is its own entry so several can coexist. */
  addTimeBrush(t0: number, t1: number): string {
    const id = this.nextId("time");
    const lo = Math.min(t0, t1);
    const hi = Math.max(t0, t1);
    this.brushes.push({ id, type: "time_range", ranges: [[lo, hi]], active: true });
    return id;
  }

  updateTimeBrush(id: string, t0: number, t1: number): void {
    const brush = this.brushes.find((b) => b.id === id);
    if (brush && brush.type === "time_range") {
      brush.ranges = [[Math.min(t0, t1), Math.max(t0, t1)]];
    }
  }

  timeBrushes(): Extract<BrushJson, { type: "time_range" }>[] {
    return this.brushes.filter((b) => b.type === "time_range") as
      Extract<BrushJson, { type: "time_range" }>[];
  }

  removeBrush(id: string): void {
    this.brushes = this.brushes.filter((b) => b.id !== id);
  }
}

/** Time brush around a clicked key frame: +/- halfWindow seconds, floored at 0. */
export function timeRangeAroundFrame(timestamp: number, halfWindow = 2):
    [number, number] {
  return [Math.max(0, timestamp - halfWindow), timestamp + halfWindow];
}

/** Angle ranges covering every gauge band whose entries share a score class. */
export function ringClickRanges(bands: { lo: number; hi: number; score: number }[],
                                score: number): [number, number][] {
  const ranges = bands.filter((b) => b.score === score)
    .map((b) => [b.lo, b.hi] as [number, number]);
  ranges.sort((a, b) => a[0] - b[0]);
  const merged: [number, number][] = [];
  for (const r of ranges) {
    const last = merged[merged.length - 1];
    if (last && r[0] <= last[1]) {
      last[1] = Math.max(last[1], r[1]);
    } else {
      merged.push([r[0], r[1]]);
    }
  }
  return merged;
}
