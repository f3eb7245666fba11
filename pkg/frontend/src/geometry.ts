import type { GaugeJson, HeatmapJson, RiskClass } from "./types.js";
import { riskColor, heatmapFill, type PaletteName } from "./colors.js";

/** Pure view-model builders; the DOM painters consume their output. */

// -- gauges -------------------------------------------------------------------

export interface GaugeLineVM {
  x1: number; y1: number; x2: number; y2: number;
  color: string;
  frame: number;
}

export interface GaugeArcVM {
  path: string;
  color: string;
  score: number;
  lo: number; hi: number;
}

export interface GaugeVM {
  joint: string;
  lines: GaugeLineVM[];
  /** density arcs used instead of raw lines above the overplotting cutoff */
  binned: boolean;
  bandArcs: GaugeArcVM[];
  mirrored: boolean;
}

const GAUGE_SWEEP = 240;       // degrees of screen arc for the valid range
const GAUGE_START = -210;      // screen angle of the range minimum (right side)
export const GAUGE_BIN_CUTOFF = 2000;

/** Screen angle for a joint angle; left-side gauges mirror across vertical. */
export function gaugeScreenAngle(angle: number, lo: number, hi: number,
                                 mirrored: boolean): number {
  const u = (angle - lo) / (hi - lo);
  const theta = GAUGE_START + u * GAUGE_SWEEP;
  return mirrored ? 180 - theta : theta;
}

export function polar(cx: number, cy: number, r: number, thetaDeg: number):
    [number, number] {
  const rad = (thetaDeg * Math.PI) / 180;
  return [cx + r * Math.cos(rad), cy + r * Math.sin(rad)];
}

function arcPath(cx: number, cy: number, r: number, a0: number, a1: number,
                 mirrored: boolean): string {
  const [x0, y0] = polar(cx, cy, r, a0);
  const [x1, y1] = polar(cx, cy, r, a1);
  const large = Math.abs(a1 - a0) > 180 ? 1 : 0;
  const sweep = mirrored ? 0 : 1;
  return `M ${x0.toFixed(2)} ${y0.toFixed(2)} A ${r} ${r} 0 ${large} ${sweep} ` +
    `${x1.toFixed(2)} ${y1.toFixed(2)}`;
}

export function buildGaugeVM(gauge: GaugeJson, mirrored: boolean,
                             cx: number, cy: number, radius: number,
                             palette: PaletteName = "traffic",
                             variant: "plain" | "color" | "color_length" = "color_length",
                             highlight?: Set<number>): GaugeVM {
  const [lo, hi] = gauge.valid_range;
  const [smin, smax] = gauge.score_range;
  const lines: GaugeLineVM[] = [];
  const binned = gauge.entries.length > GAUGE_BIN_CUTOFF;
  if (!binned) {
    for (const e of gauge.entries) {
      const theta = gaugeScreenAngle(e.angle, lo, hi, mirrored);
      const frac = smax > smin ? (e.score - smin) / (smax - smin) : 1;
      const len = variant === "color_length" ? radius * (0.45 + 0.5 * frac) : radius * 0.95;
      const [x1, y1] = polar(cx, cy, radius * 0.22, theta);
      const [x2, y2] = polar(cx, cy, len, theta);
      const dim = highlight && !highlight.has(e.frame);
      const color = variant === "plain" ? (dim ? "#d8d8d8" : "#5a5a5a")
        : dim ? "#e0e0e0" : riskColor(e.risk, palette);
      lines.push({ x1, y1, x2, y2, color, frame: e.frame });
    }
  } else {
    // one line per occupied 1-degree density bin, alpha by count
    const maxCount = Math.max(...gauge.density_bins, 1);
    gauge.density_bins.forEach((count, i) => {
      if (count === 0) return;
      const angle = lo + i + 0.5;
      const theta = gaugeScreenAngle(Math.min(angle, hi), lo, hi, mirrored);
      const [x1, y1] = polar(cx, cy, radius * 0.22, theta);
      const [x2, y2] = polar(cx, cy, radius * (0.45 + 0.5 * (count / maxCount)), theta);
      lines.push({ x1, y1, x2, y2, color: "#5a7fa3", frame: -1 });
    });
  }
  const bandArcs: GaugeArcVM[] = gauge.bands.map((b) => ({
    path: arcPath(cx, cy,
                  radius * 1.06,
                  gaugeScreenAngle(b.lo, lo, hi, mirrored),
                  gaugeScreenAngle(b.hi, lo, hi, mirrored), mirrored),
    color: variant === "plain" ? "#9a9a9a" : riskColor(b.risk as RiskClass, palette),
    score: b.score,
    lo: b.lo,
    hi: b.hi,
  }));
  return { joint: gauge.joint, lines, binned, bandArcs, mirrored };
}

// -- heatmap + marginal histograms ---------------------------------------------

export interface HeatmapCellVM {
  row: number; col: number;
  x: number; y: number; w: number; h: number;
  fill: string;
  score: number;
  count: number;
  selectedCount: number | null;
  outlined: boolean;
}

export function buildHeatmapVM(heatmap: HeatmapJson, width: number, height: number,
                               selected?: HeatmapJson | null,
                               picked?: [number, number][]): HeatmapCellVM[] {
  const cellW = width / heatmap.cols;
  const cellH = height / heatmap.rows;
  let maxCount = 0;
  for (const row of heatmap.cell_counts) {
    for (const c of row) maxCount = Math.max(maxCount, c);
  }
  const pickedKeys = new Set((picked ?? []).map(([r, c]) => `${r}:${c}`));
  const cells: HeatmapCellVM[] = [];
  for (let r = 0; r < heatmap.rows; r++) {
    for (let c = 0; c < heatmap.cols; c++) {
      cells.push({
        row: r, col: c,
        x: c * cellW, y: r * cellH, w: cellW, h: cellH,
        fill: heatmapFill(heatmap.cell_counts[r][c], maxCount),
        score: heatmap.cell_scores[r][c],
        count: heatmap.cell_counts[r][c],
        selectedCount: selected ? selected.cell_counts[r][c] : null,
        outlined: pickedKeys.has(`${r}:${c}`),
      });
    }
  }
  return cells;
}

export interface HistogramBarVM {
  bin: number;           // 1-based score value
  x: number; y: number; w: number; h: number;
  selectedH: number | null;
  count: number;
  selectedCount: number | null;
}

/** Bars for one histogram; horizontal extent `span`, bar thickness `thickness`. */
export function buildHistogramBars(counts: number[], selectedCounts: number[] | null,
                                   span: number, thickness: number,
                                   maxCount?: number): HistogramBarVM[] {
  const peak = maxCount ?? Math.max(...counts, 1);
  const binW = span / counts.length;
  return counts.map((count, i) => {
    const h = peak > 0 ? (count / peak) * thickness : 0;
    const sel = selectedCounts ? selectedCounts[i] : null;
    return {
      bin: i + 1,
      x: i * binW,
      y: thickness - h,
      w: binW,
      h,
      selectedH: sel === null ? null : peak > 0 ? (sel / peak) * thickness : 0,
      count,
      selectedCount: sel,
    };
  });
}

// -- timeline -----------------------------------------------------------------

export interface ValueScale {
  toY(v: number): number;
  domain: [number, number];
}

/** Each joint gets its own vertical band and its own value scale. */
export function valueScale(range: [number, number], yTop: number,
                           yBottom: number): ValueScale {
  const [lo, hi] = range;
  const span = hi - lo || 1;
  return {
    domain: [lo, hi],
    toY: (v) => yBottom - ((v - lo) / span) * (yBottom - yTop),
  };
}
