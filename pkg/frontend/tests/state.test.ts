import { describe, expect, it } from "vitest";

import { ServiceClient } from "../src/api.js";
import { AppState } from "../src/state.js";
import { LatestWins } from "../src/latest.js";
import { MockService, evaluate } from "./mock_service.js";

function makeState(): { state: AppState; mock: MockService } {
  const mock = new MockService();
  const client = new ServiceClient("http://mock", mock.fetch);
  const state = new AppState(client, "mock", ["upper_arm_right"]);
  state.timelineJoints = ["upper_arm_right"];
  return { state, mock };
}

describe("linked highlighting through the service", () => {
  it("two heatmap cells update every view with totals from the service payloads", async () => {
    const { state, mock } = makeState();
    await state.init();
    expect(state.data.tables.left.A?.full.n).toBe(100);

    // the published interaction: pick two cells of one heatmap
    await state.clickHeatmapCell("A", "left", 0, 0);
    await state.clickHeatmapCell("A", "left", 1, 5);
    expect(state.selection.brushes).toHaveLength(1);

    const expected = evaluate(state.selection.toJson(), mock.frames).size;
    expect(expected).toBeGreaterThan(0);
    expect(state.data.selectionCount).toBe(expected);

    // every view's overlay totals equal the service's linked counts;
    // the client never recounts frames itself
    const table = state.data.tables.left.A!;
    expect(table.selected?.n).toBe(expected);
    expect(table.selection_count).toBe(expected);
    const heatSum = table.selected!.heatmap.cell_counts.flat()
      .reduce((a, b) => a + b, 0);
    expect(heatSum).toBe(expected);
    const gauge = state.data.gauges["upper_arm_right"]!;
    expect(gauge.selected?.entries).toHaveLength(expected);
    expect(state.data.timeline?.selected?.[0].buckets.length).toBe(expected);
  });

  it("selection equal to the full set yields overlays identical to the base", async () => {
    const { state } = makeState();
    await state.init();
    // a brush covering everything
    state.selection.addTimeBrush(-1, 1e9);
    await state.applySelection();
    const table = state.data.tables.left.A!;
    expect(table.selected).toEqual(table.full);
    const gauge = state.data.gauges["upper_arm_right"]!;
    expect(gauge.selected).toEqual(gauge.full);
  });
});

describe("session round-trips", () => {
  it("two disjoint timeline brushes persist and round-trip through the session API", async () => {
    const { state, mock } = makeState();
    await state.init();
    await state.addTimelineBrush(1.0, 2.5);
    await state.addTimelineBrush(6.0, 8.0);
    expect(state.selection.timeBrushes()).toHaveLength(2);

    const sid = state.selection.sessionId!;
    const stored = await state.client.selection(sid);
    expect(stored.brush_set).toEqual(state.selection.toJson());

    // reload into a fresh client state: same selection on the service side
    const { state: fresh } = { state: new AppState(state.client, "mock", []) };
    fresh.selection.sessionId = sid;
    fresh.selection.loadJson(stored.brush_set);
    await fresh.applySelection();
    const again = await state.client.selection(sid);
    expect(again.frame_ids).toEqual(stored.frame_ids);
    expect(again.count).toBe(evaluate(stored.brush_set, mock.frames).size);
  });

  it("a representative-frame click lands a time brush around its moment", async () => {
    const { state } = makeState();
    await state.init();
    await state.clickRepresentative(100);
    const brushes = state.selection.timeBrushes();
    expect(brushes).toHaveLength(1);
    expect(brushes[0].ranges).toEqual([[98, 102]]);
  });

  it("gauge ring click issues an angle brush covering the class intervals", async () => {
    const { state } = makeState();
    await state.init();
    const gauge = state.data.gauges["upper_arm_right"]!.full;
    await state.clickGaugeRing("upper_arm_right",
                               [[-60, -20], [20, 45]]);
    const brush = state.selection.brushes.find((b) => b.type === "angle_range");
    expect(brush && brush.type === "angle_range" ? brush.ranges : [])
      .toEqual([[-60, -20], [20, 45]]);
    expect(gauge.bands.length).toBeGreaterThan(0);
  });
});

describe("latest-wins refresh", () => {
  it("drops stale responses", async () => {
    const guard = new LatestWins();
    let release1: (v: string) => void = () => {};
    const slow = guard.run(() => new Promise<string>((res) => { release1 = res; }));
    const fast = guard.run(() => Promise.resolve("fresh"));
    expect(await fast).toBe("fresh");
    release1("stale");
    expect(await slow).toBeNull();
  });

  it("fetch failures surface inline and leave the view usable", async () => {
    const { state, mock } = makeState();
    await state.init();
    const originalFetch = mock.fetch;
    mock.fetch = async () => new Response("boom", { status: 500 });
    await state.refreshTimeline();
    expect(state.errors.length).toBeGreaterThan(0);
    mock.fetch = originalFetch;
    // old data is still present
    expect(state.data.timeline).not.toBeNull();
  });
});
