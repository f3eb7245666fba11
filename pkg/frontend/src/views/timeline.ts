import type { AppState } from "../state.js";
import type { PaletteName } from "../colors.js";
import type { MagnifierSpec } from "../magnifier.js";
import { buildTimelineVM, dragToTimeRange } from "../timeline_model.js";
import { clear, el, svg } from "../dom.js";

/** Timeline panel: one lane per joint with its own vertical axis, min-max
 *  envelopes, green/red limit lines, draggable range brushes with a numeric
 *  readout, optional risk-colored background, and the magnifier controls. */

const WIDTH = 960;
const HEIGHT = 300;

export interface TimelineUiState {
  magnifier: MagnifierSpec | null;
  stripes: boolean;
  activeBrushId: string | null;
}

export const timelineUi: TimelineUiState = {
  magnifier: null,
  stripes: false,
  activeBrushId: null,
};

function envelopePath(points: { x: number; yMin: number; yMax: number }[]): string {
  if (points.length === 0) return "";
  const upper = points.map((p, i) => `${i === 0 ? "M" : "L"} ${p.x.toFixed(1)} ${p.yMax.toFixed(1)}`);
  const lower = [...points].reverse()
    .map((p) => `L ${p.x.toFixed(1)} ${p.yMin.toFixed(1)}`);
  return `${upper.join(" ")} ${lower.join(" ")} Z`;
}

function centerlinePath(points: { x: number; yLast: number }[]): string {
  return points.map((p, i) => `${i === 0 ? "M" : "L"} ${p.x.toFixed(1)} ${p.yLast.toFixed(1)}`)
    .join(" ");
}

export function renderTimeline(container: HTMLElement, state: AppState,
                               palette: PaletteName): void {
  clear(container);
  const data = state.data.timeline;
  if (!data) {
    container.append(el("div", { class: "view-error" }, "no data yet"));
    return;
  }
  const vm = buildTimelineVM(data.full, data.selected ?? null, data.t0, data.t1,
                             WIDTH, HEIGHT, timelineUi.magnifier,
                             state.selection.timeBrushes(), timelineUi.activeBrushId,
                             palette, timelineUi.stripes);

  const root = svg("svg", { viewBox: `0 0 ${WIDTH} ${HEIGHT + 24}`, class: "timeline-svg" });

  for (const lane of vm.lanes) {
    if (timelineUi.stripes) {
      for (const stripe of lane.stripes) {
        root.append(svg("rect", { x: stripe.x, y: lane.yTop, width: stripe.w,
                                  height: lane.yBottom - lane.yTop,
                                  fill: stripe.color, class: "lane-stripe" }));
      }
    }
    root.append(svg("rect", { x: 0, y: lane.yTop, width: WIDTH,
                              height: lane.yBottom - lane.yTop, class: "lane-frame" }));
    for (const limit of lane.limits) {
      root.append(svg("line", { x1: 0, x2: WIDTH, y1: limit.y, y2: limit.y,
                                stroke: limit.color, class: "limit-line" }));
    }
    root.append(svg("path", { d: envelopePath(lane.points), class: "lane-envelope" }));
    root.append(svg("path", { d: centerlinePath(lane.points), class: "lane-centerline" }));
    // split vertical axis: each lane labels its own value range
    root.append(svg("text", { x: 4, y: lane.yTop + 11, class: "lane-label" },
                    `${lane.joint.replace(/_/g, " ")}`));
    root.append(svg("text", { x: 4, y: lane.yTop + 23, class: "lane-axis" },
                    `${lane.scale.domain[1].toFixed(0)}°`));
    root.append(svg("text", { x: 4, y: lane.yBottom - 4, class: "lane-axis" },
                    `${lane.scale.domain[0].toFixed(0)}°`));
  }

  if (vm.selectedLanes) {
    for (const lane of vm.selectedLanes) {
      root.append(svg("path", { d: centerlinePath(lane.points),
                                class: "lane-centerline-selected" }));
    }
  }

  for (const brush of vm.brushes) {
    const rect = svg("rect", {
      x: Math.min(brush.x0, brush.x1), y: 0,
      width: Math.abs(brush.x1 - brush.x0), height: HEIGHT,
      class: brush.active ? "time-brush active" : "time-brush",
      "data-brush": brush.id,
    });
    rect.addEventListener("pointerdown", (ev) => {
      timelineUi.activeBrushId = brush.id;
      beginDrag(ev as PointerEvent, root, state, brush.id, brush.t1 - brush.t0);
    });
    root.append(rect);
    if (brush.active) {
      root.append(svg("text", { x: Math.min(brush.x0, brush.x1) + 4, y: HEIGHT + 16,
                                class: "brush-readout" }, brush.label));
    }
  }

  // drag on empty space creates a new brush through the inverse time mapping
  let dragStart: number | null = null;
  root.addEventListener("pointerdown", (ev) => {
    if ((ev.target as Element).classList?.contains("time-brush")) return;
    dragStart = toLocalX(root, ev as PointerEvent);
  });
  root.addEventListener("pointerup", (ev) => {
    if (dragStart === null) return;
    const xEnd = toLocalX(root, ev as PointerEvent);
    if (Math.abs(xEnd - dragStart) > 3) {
      const [t0, t1] = dragToTimeRange(vm.scale, dragStart, xEnd);
      void state.addTimelineBrush(t0, t1).then((id) => {
        timelineUi.activeBrushId = id;
      });
    }
    dragStart = null;
  });

  container.append(
    el("header", { class: "view-head" },
       el("span", {}, "Timeline"),
       controls(state, data.t0, data.t1)),
    root);
}

function toLocalX(root: SVGElement, ev: PointerEvent): number {
  const box = (root as unknown as SVGGraphicsElement).getBoundingClientRect();
  return ((ev.clientX - box.left) / Math.max(box.width, 1)) * WIDTH;
}

function beginDrag(ev: PointerEvent, root: SVGElement, state: AppState,
                   brushId: string, span: number): void {
  const startX = toLocalX(root, ev);
  const move = (e: Event) => {
    const x = toLocalX(root, e as PointerEvent);
    const data = state.data.timeline;
    if (!data) return;
    const vm = buildTimelineVM(data.full, null, data.t0, data.t1, WIDTH, HEIGHT,
                               timelineUi.magnifier, [], null);
    const tCenter = vm.scale.toT(Math.max(0, Math.min(x, WIDTH)));
    void state.moveTimelineBrush(brushId, tCenter - span / 2, tCenter + span / 2);
  };
  const up = () => {
    root.removeEventListener("pointermove", move);
    root.removeEventListener("pointerup", up);
  };
  root.addEventListener("pointermove", move);
  root.addEventListener("pointerup", up);
}

function controls(state: AppState, t0: number, t1: number): HTMLElement {
  const wrap = el("span", { class: "timeline-controls" });

  const f0 = el("input", { type: "number", step: "0.5", value: String(t0.toFixed(1)) });
  const f1 = el("input", { type: "number", step: "0.5",
                           value: String(((t0 + t1) / 2).toFixed(1)) });
  const frac = el("input", { type: "range", min: "0.05", max: "0.95", step: "0.05",
                             value: "0.5", title: "view-width share of the focus range" });
  const apply = el("button", { class: "switch" }, "magnify");
  apply.addEventListener("click", () => {
    const a = parseFloat(f0.value);
    const b = parseFloat(f1.value);
    timelineUi.magnifier = Number.isFinite(a) && Number.isFinite(b) && b > a
      ? { focus0: a, focus1: b, widthFraction: parseFloat(frac.value) }
      : null;
    state.onChange?.();
  });
  const resetBtn = el("button", { class: "switch" }, "reset");
  resetBtn.addEventListener("click", () => {
    timelineUi.magnifier = null;
    state.onChange?.();
  });
  const stripesBtn = el("button", { class: "switch" }, "risk bg");
  stripesBtn.addEventListener("click", () => {
    timelineUi.stripes = !timelineUi.stripes;
    state.onChange?.();
  });
  wrap.append("focus ", f0, "–", f1, frac, apply, resetBtn, stripesBtn);
  return wrap;
}
