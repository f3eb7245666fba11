import { describe, expect, it } from "vitest";

import { SelectionState, ringClickRanges, timeRangeAroundFrame } from "../src/brushes.js";
import type { BrushSetJson } from "../src/types.js";

describe("selection state", () => {
  it("accumulates heatmap cells into one brush per table view", () => {
    const state = new SelectionState();
    state.toggleHeatmapCell("A", "left", 2, 3);
    state.toggleHeatmapCell("A", "left", 4, 7);
    expect(state.brushes).toHaveLength(1);
    const brush = state.brushes[0];
    expect(brush.type).toBe("heatmap_cell");
    if (brush.type === "heatmap_cell") {
      expect(brush.cells).toEqual([[2, 3], [4, 7]]);
    }
    // a different table view gets its own brush
    state.toggleHeatmapCell("B", "left", 0, 0);
    expect(state.brushes).toHaveLength(2);
  });

  it("toggling a picked cell removes it; empty brush disappears", () => {
    const state = new SelectionState();
    state.toggleHeatmapCell("C", "right", 1, 1);
    state.toggleHeatmapCell("C", "right", 1, 1);
    expect(state.brushes).toHaveLength(0);
  });

  it("score bins share a brush per attribute", () => {
    const state = new SelectionState();
    state.toggleScoreBin("A", "left", 1, "neck", 2);
    state.toggleScoreBin("A", "left", 1, "neck", 3);
    state.toggleScoreBin("A", "left", 2, "legs", 1);
    expect(state.brushes).toHaveLength(2);
    const neck = state.brushes.find((b) => b.type === "score_bin" && b.attribute === "neck");
    expect(neck && neck.type === "score_bin" ? neck.values : []).toEqual([2, 3]);
  });

  it("several time brushes coexist and update independently", () => {
    const state = new SelectionState();
    const a = state.addTimeBrush(5, 10);
    const b = state.addTimeBrush(50, 40);      // reversed input is normalized
    expect(state.timeBrushes()).toHaveLength(2);
    state.updateTimeBrush(a, 6, 11);
    const brushes = state.timeBrushes();
    expect(brushes.find((x) => x.id === a)?.ranges).toEqual([[6, 11]]);
    expect(brushes.find((x) => x.id === b)?.ranges).toEqual([[40, 50]]);
  });

  it("serializes to the canonical brush-set JSON and round-trips", () => {
    const state = new SelectionState();
    state.toggleHeatmapCell("A", "left", 2, 3);
    state.addTimeBrush(1, 2);
    state.setAngleBrush("upper_arm_right", [[62, 66.8]]);
    state.combine = "union";
    const json = state.toJson();
    expect(json.combine).toBe("union");
    expect(json.brushes.map((b) => b.type).sort())
      .toEqual(["angle_range", "heatmap_cell", "time_range"]);

    const restored = new SelectionState();
    restored.loadJson(JSON.parse(JSON.stringify(json)) as BrushSetJson);
    expect(restored.toJson()).toEqual(json);
  });
});

describe("interaction helpers", () => {
  it("key-frame click becomes +/- 2 s time range", () => {
    expect(timeRangeAroundFrame(100)).toEqual([98, 102]);
    expect(timeRangeAroundFrame(1)).toEqual([0, 3]);   // floored at zero
    expect(timeRangeAroundFrame(30, 5)).toEqual([25, 35]);
  });

  it("ring click covers every band of the score class, merged when adjacent", () => {
    const bands = [
      { lo: 0, hi: 60, score: 2 },
      { lo: 60, hi: 100, score: 1 },
      { lo: 100, hi: 150, score: 2 },
    ];
    expect(ringClickRanges(bands, 2)).toEqual([[0, 60], [100, 150]]);
    expect(ringClickRanges(bands, 1)).toEqual([[60, 100]]);
    const touching = [
      { lo: -20, hi: 20, score: 1 },
      { lo: 20, hi: 45, score: 2 },
      { lo: 45, hi: 90, score: 2 },
    ];
    expect(ringClickRanges(touching, 2)).toEqual([[20, 90]]);
  });
});
