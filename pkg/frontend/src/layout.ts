import type { SideName } from "./types.js";

/** Central-silhouette layout: joints of the viewer's left column belong to
 *  the worker's left side because the silhouette is seen from behind. */

export const SIDED_JOINTS = ["upper_arm", "lower_arm", "wrist", "leg"] as const;
export const GAUGE_JOINTS: string[] = [
  "upper_arm_left", "lower_arm_left", "wrist_left",
  "upper_arm_right", "lower_arm_right", "wrist_right",
];

export interface SilhouetteAnchor {
  joint: string;
  x: number;   // fraction of silhouette width
  y: number;   // fraction of silhouette height
}

/** Back-view outline anchors for the six joint kinds (plus per-side pairs). */
export const SILHOUETTE_ANCHORS: SilhouetteAnchor[] = [
  { joint: "neck", x: 0.5, y: 0.14 },
  { joint: "trunk", x: 0.5, y: 0.42 },
  { joint: "upper_arm_left", x: 0.28, y: 0.26 },
  { joint: "upper_arm_right", x: 0.72, y: 0.26 },
  { joint: "lower_arm_left", x: 0.22, y: 0.42 },
  { joint: "lower_arm_right", x: 0.78, y: 0.42 },
  { joint: "wrist_left", x: 0.18, y: 0.56 },
  { joint: "wrist_right", x: 0.82, y: 0.56 },
  { joint: "leg_left", x: 0.42, y: 0.78 },
  { joint: "leg_right", x: 0.58, y: 0.78 },
];

/** Which screen column a view belongs to. Left-side joints render on the
 *  viewer's left of the silhouette; the mirror invariant of the layout. */
export function columnFor(side: SideName): "left" | "right" {
  return side;
}

/** Gauges for paired joints render as mirror-opposed arcs. */
export function gaugeMirrored(joint: string): boolean {
  return joint.endsWith("_left");
}

/** A simple back-view human outline (path in a 100 x 160 viewBox). */
export const SILHOUETTE_PATH =
  "M50 6 C56 6 60 11 60 17 C60 21 58 24 55 26 L55 30 " +
  "C66 32 72 38 73 48 L76 72 C76 76 72 77 70 74 L66 56 L65 74 " +
  "C65 80 64 88 62 96 L60 118 L58 146 C58 150 52 150 52 146 L51 112 L49 112 " +
  "L48 146 C48 150 42 150 42 146 L40 118 L38 96 C36 88 35 80 35 74 L34 56 " +
  "L30 74 C28 77 24 76 24 72 L27 48 C28 38 34 32 45 30 L45 26 " +
  "C42 24 40 21 40 17 C40 11 44 6 50 6 Z";
