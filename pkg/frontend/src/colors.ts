import type { RiskClass } from "./types.js";

/** Traffic-light palette (default) and a color-vision-deficiency-safe
 *  alternative (blue/orange scheme). */
export type PaletteName = "traffic" | "cvd";

const PALETTES: Record<PaletteName, Record<RiskClass, string>> = {
  traffic: { low: "#2e9e44", medium: "#e3b505", high: "#d7263d" },
  cvd: { low: "#1f77b4", medium: "#a6a6a6", high: "#e66101" },
};

export const RISK_ORDER: RiskClass[] = ["low", "medium", "high"];

export function riskColor(risk: RiskClass, palette: PaletteName = "traffic"): string {
  return PALETTES[palette][risk];
}

export function maxRisk(a: RiskClass, b: RiskClass): RiskClass {
  return RISK_ORDER.indexOf(a) >= RISK_ORDER.indexOf(b) ? a : b;
}

/** Heatmap cell fill: frequency as opacity over a single hue. */
export function heatmapFill(count: number, maxCount: number): string {
  if (count <= 0 || maxCount <= 0) return "rgba(43, 84, 126, 0)";
  const alpha = 0.12 + 0.88 * (count / maxCount);
  return `rgba(43, 84, 126, ${alpha.toFixed(3)})`;
}
