import type { TimelineSeriesJson, RiskClass } from "./types.js";
import { magnifierScale, type MagnifierSpec, type TimeScale } from "./magnifier.js";
import { valueScale, type ValueScale } from "./geometry.js";
import { riskColor, type PaletteName } from "./colors.js";

/** Pure view model for the timeline panel: per-joint lanes with their own
 *  vertical scales, min-max envelopes, limit lines and brush rectangles. */

export interface LanePointVM {
  x: number;
  yMin: number;
  yMax: number;
  yFirst: number;
  yLast: number;
  risk: RiskClass;
}

export interface LaneVM {
  joint: string;
  yTop: number;
  yBottom: number;
  scale: ValueScale;
  points: LanePointVM[];
  limits: { y: number; angle: number; color: string }[];
  /** risk-colored background stripes (optional rendering) */
  stripes: { x: number; w: number; color: string }[];
}

export interface BrushRectVM {
  id: string;
  x0: number;
  x1: number;
  t0: number;
  t1: number;
  active: boolean;
  label: string;
}

export interface TimelineVM {
  scale: TimeScale;
  lanes: LaneVM[];
  brushes: BrushRectVM[];
  selectedLanes: LaneVM[] | null;
}

export function buildLanes(series: TimelineSeriesJson[], scale: TimeScale,
                           height: number, palette: PaletteName,
                           withStripes: boolean): LaneVM[] {
  const laneGap = 8;
  const laneH = series.length > 0
    ? (height - laneGap * (series.length - 1)) / series.length : height;
  return series.map((s, lane) => {
    const yTop = lane * (laneH + laneGap);
    const yBottom = yTop + laneH;
    const vs = valueScale(s.value_range, yTop, yBottom);
    const points = s.buckets.map((b) => ({
      x: scale.toX((b.t0 + b.t1) / 2),
      yMin: vs.toY(b.min),
      yMax: vs.toY(b.max),
      yFirst: vs.toY(b.first),
      yLast: vs.toY(b.last),
      risk: b.risk,
    }));
    const limits = s.limits.map((l) => ({
      y: vs.toY(Math.min(Math.max(l.angle, vs.domain[0]), vs.domain[1])),
      angle: l.angle,
      color: l.risky ? riskColor("high", palette) : riskColor("low", palette),
    }));
    const stripes = withStripes
      ? s.buckets.map((b) => ({
          x: scale.toX(b.t0),
          w: Math.max(0, scale.toX(b.t1) - scale.toX(b.t0)),
          color: riskColor(b.risk, palette),
        }))
      : [];
    return { joint: s.joint, yTop, yBottom, scale: vs, points, limits, stripes };
  });
}

export function buildBrushRects(brushes: { id: string; ranges: [number, number][];
                                           active?: boolean }[],
                                scale: TimeScale, activeId: string | null):
    BrushRectVM[] {
  const rects: BrushRectVM[] = [];
  for (const b of brushes) {
    for (const [t0, t1] of b.ranges) {
      rects.push({
        id: b.id,
        x0: scale.toX(t0),
        x1: scale.toX(t1),
        t0,
        t1,
        active: b.id === activeId,
        label: `${t0.toFixed(2)} s – ${t1.toFixed(2)} s`,
      });
    }
  }
  return rects;
}

export function buildTimelineVM(series: TimelineSeriesJson[],
                                selected: TimelineSeriesJson[] | null,
                                t0: number, t1: number, width: number,
                                height: number,
                                magnifier: MagnifierSpec | null,
                                brushes: { id: string; ranges: [number, number][];
                                           active?: boolean }[],
                                activeBrushId: string | null,
                                palette: PaletteName = "traffic",
                                stripes = false): TimelineVM {
  const scale = magnifierScale(t0, t1, width, magnifier);
  const lanes = buildLanes(series, scale, height, palette, stripes);
  const selectedLanes = selected && selected.length
    ? buildLanes(selected, scale, height, palette, false) : null;
  return { scale, lanes, brushes: buildBrushRects(brushes, scale, activeBrushId),
           selectedLanes };
}

/** Drag in pixel space becomes a data-space brush via the inverse mapping,
 *  clamped to the window. Works across magnified and compressed regions. */
export function dragToTimeRange(scale: TimeScale, xStart: number, xEnd: number):
    [number, number] {
  const [t0, t1] = scale.domain;
  const a = scale.toT(Math.max(0, Math.min(xStart, scale.width)));
  const b = scale.toT(Math.max(0, Math.min(xEnd, scale.width)));
  const lo = Math.max(t0, Math.min(a, b));
  const hi = Math.min(t1, Math.max(a, b));
  return [lo, hi];
}
