import { ServiceClient } from "./api.js";
import { SelectionState } from "./brushes.js";
import { LatestWins } from "./latest.js";
import type {
  GaugeJson,
  OverlayJson,
  RepresentativesJson,
  SideName,
  TableAggregateJson,
  TableId,
  TimelineResponseJson,
} from "./types.js";

export interface ViewData {
  tables: Record<SideName, Record<TableId, OverlayJson<TableAggregateJson> | null>>;
  gauges: Record<string, OverlayJson<GaugeJson> | null>;
  timeline: TimelineResponseJson | null;
  representatives: RepresentativesJson | null;
  selectionCount: number | null;
}

export const TABLE_IDS: TableId[] = ["A", "B", "C"];

/** Data + interaction hub: owns the session, pushes brush edits to the
 *  service, and refreshes every view from service overlays. Highlighted
 *  totals always come from the service payloads; the client never counts
 *  raw frames itself. */
export class AppState {
  selection = new SelectionState();
  data: ViewData = {
    tables: { left: { A: null, B: null, C: null }, right: { A: null, B: null, C: null } },
    gauges: {},
    timeline: null,
    representatives: null,
    selectionCount: null,
  };
  movementsTable: TableId = "C";
  movementsSide: SideName = "right";
  timelineJoints: string[] = ["trunk", "upper_arm_right", "upper_arm_left"];
  timelineMaxPoints = 480;
  onChange: (() => void) | null = null;
  errors: string[] = [];

  private guards = new Map<string, LatestWins>();

  constructor(public client: ServiceClient, public datasetId: string,
              public gaugeJoints: string[]) {}

  private guard(view: string): LatestWins {
    let g = this.guards.get(view);
    if (!g) {
      g = new LatestWins();
      this.guards.set(view, g);
    }
    return g;
  }

  async init(): Promise<void> {
    this.selection.sessionId = await this.client.createSession(this.datasetId);
    await this.refreshAll();
  }

  /** Push the brush set, then refresh every view's overlay. */
  async applySelection(): Promise<void> {
    if (!this.selection.sessionId) return;
    const result = await this.client.putBrushes(this.selection.sessionId,
                                                this.selection.toJson());
    this.data.selectionCount = result.selection_count;
    await this.refreshAll();
  }

  async refreshAll(): Promise<void> {
    await Promise.all([
      ...TABLE_IDS.flatMap((tid) =>
        (["left", "right"] as SideName[]).map((side) => this.refreshTable(tid, side))),
      ...this.gaugeJoints.map((j) => this.refreshGauge(j)),
      this.refreshTimeline(),
      this.refreshRepresentatives(),
    ]);
    this.onChange?.();
  }

  private async refreshTable(tid: TableId, side: SideName): Promise<void> {
    try {
      const result = await this.guard(`table-${tid}-${side}`).run(
        () => this.client.table(this.datasetId, tid, side, this.selection.sessionId));
      if (result !== null) this.data.tables[side][tid] = result;
    } catch (err) {
      this.pushError(`table ${tid} ${side}: ${err}`);
    }
  }

  private async refreshGauge(joint: string): Promise<void> {
    try {
      const result = await this.guard(`gauge-${joint}`).run(
        () => this.client.gauge(this.datasetId, joint, this.selection.sessionId));
      if (result !== null) this.data.gauges[joint] = result;
    } catch (err) {
      this.pushError(`gauge ${joint}: ${err}`);
    }
  }

  async refreshTimeline(): Promise<void> {
    try {
      const result = await this.guard("timeline").run(
        () => this.client.timeline(this.datasetId, this.timelineJoints,
                                   this.timelineMaxPoints, undefined, undefined,
                                   this.selection.sessionId));
      if (result !== null) this.data.timeline = result;
    } catch (err) {
      this.pushError(`timeline: ${err}`);
    }
  }

  async refreshRepresentatives(): Promise<void> {
    try {
      const result = await this.guard("reps").run(
        () => this.client.representatives(this.datasetId, this.movementsTable,
                                          this.movementsSide));
      if (result !== null) this.data.representatives = result;
    } catch (err) {
      this.pushError(`representatives: ${err}`);
    }
  }

  private pushError(message: string): void {
    this.errors.push(message);
    if (this.errors.length > 5) this.errors.shift();
    this.onChange?.();
  }

  // -- interactions ----------------------------------------------------------

  async clickHeatmapCell(table: TableId, side: SideName, row: number,
                         col: number): Promise<void> {
    this.selection.toggleHeatmapCell(table, side, row, col);
    await this.applySelection();
  }

  async clickHistogramBin(table: TableId, side: SideName, level: number,
                          attribute: string, value: number): Promise<void> {
    this.selection.toggleScoreBin(table, side, level, attribute, value);
    await this.applySelection();
  }

  async clickGaugeRing(joint: string, ranges: [number, number][]): Promise<void> {
    this.selection.setAngleBrush(joint, ranges);
    await this.applySelection();
  }

  async addTimelineBrush(t0: number, t1: number): Promise<string> {
    const id = this.selection.addTimeBrush(t0, t1);
    await this.applySelection();
    return id;
  }

  async moveTimelineBrush(id: string, t0: number, t1: number): Promise<void> {
    this.selection.updateTimeBrush(id, t0, t1);
    await this.applySelection();
  }

  async clickRepresentative(timestamp: number): Promise<void> {
    const [t0, t1] = await import("./brushes.js").then(
      (m) => m.timeRangeAroundFrame(timestamp));
    await this.addTimelineBrush(t0, t1);
  }

  async clearSelection(): Promise<void> {
    this.selection.clear();
    await this.applySelection();
  }

  async switchMovements(table: TableId, side: SideName): Promise<void> {
    this.movementsTable = table;
    this.movementsSide = side;
    await this.refreshRepresentatives();
    this.onChange?.();
  }
}
