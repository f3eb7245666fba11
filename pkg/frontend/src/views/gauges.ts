import type { AppState } from "../state.js";
import type { PaletteName } from "../colors.js";
import { buildGaugeVM } from "../geometry.js";
import { gaugeMirrored } from "../layout.js";
import { ringClickRanges } from "../brushes.js";
import { clear, el, svg } from "../dom.js";

/** Radial gauge row: one gauge per sided arm joint, mirror-opposed arcs for
 *  the left/right pair, outer-ring click selects a whole score class. */

const SIZE = 128;
const R = 46;

export type GaugeVariant = "plain" | "color" | "color_length";

export function renderGauge(container: HTMLElement, state: AppState, joint: string,
                            palette: PaletteName, variant: GaugeVariant): void {
  clear(container);
  const overlay = state.data.gauges[joint];
  if (!overlay) {
    container.append(el("div", { class: "view-error" }, "no data yet"));
    return;
  }
  const selectedFrames = overlay.selected
    ? new Set(overlay.selected.entries.map((e) => e.frame)) : undefined;
  const vm = buildGaugeVM(overlay.full, gaugeMirrored(joint), SIZE / 2, SIZE / 2,
                          R, palette, variant, selectedFrames);
  const root = svg("svg", { viewBox: `0 0 ${SIZE} ${SIZE}`, class: "gauge-svg" });
  for (const line of vm.lines) {
    root.append(svg("line", {
      x1: line.x1, y1: line.y1, x2: line.x2, y2: line.y2,
      stroke: line.color, class: "gauge-line",
    }));
  }
  for (const arc of vm.bandArcs) {
    const path = svg("path", {
      d: arc.path, stroke: arc.color, class: "gauge-ring", fill: "none",
    });
    path.addEventListener("click", () => {
      const ranges = ringClickRanges(overlay.full.bands, arc.score);
      void state.clickGaugeRing(joint, ranges);
    });
    path.append(svg("title", {},
                    `score ${arc.score}: ${arc.lo}° to ${arc.hi}° (click to select)`));
    root.append(path);
  }
  const selLabel = overlay.selected
    ? ` · ${overlay.selected.entries.length}/${overlay.full.entries.length}` : "";
  container.append(
    el("div", { class: "gauge-label" }, joint.replace(/_/g, " ") + selLabel),
    root);
}
