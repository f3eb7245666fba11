/** Payload shapes of the query service (documented in the package README). */

export type SideName = "left" | "right";
export type TableId = "A" | "B" | "C";
export type RiskClass = "low" | "medium" | "high";

export interface HistogramNodeJson {
  parent_bin: number | null;
  bin_counts: number[];
}

export interface HierarchicalHistogramJson {
  orientation: "horizontal" | "vertical";
  attributes: string[];
  levels: HistogramNodeJson[][];
}

export interface HeatmapJson {
  rows: number;
  cols: number;
  row_dim: string;
  col_dims: string[];
  cell_counts: number[][];
  cell_scores: number[][];
}

export interface TableAggregateJson {
  table: TableId;
  side: SideName;
  n: number;
  histograms: HierarchicalHistogramJson[];
  heatmap: HeatmapJson;
}

export interface GaugeEntryJson {
  frame: number;
  angle: number;
  score: number;
  risk: RiskClass;
}

export interface GaugeBandJson {
  lo: number;
  hi: number;
  score: number;
  risk: RiskClass;
}

export interface GaugeJson {
  joint: string;
  valid_range: [number, number];
  score_range: [number, number];
  entries: GaugeEntryJson[];
  density_bins: number[];
  bands: GaugeBandJson[];
  variants: string[];
}

export interface TimelineBucketJson {
  t0: number;
  t1: number;
  min: number;
  max: number;
  first: number;
  last: number;
  risk: RiskClass;
}

export interface TimelineSeriesJson {
  joint: string;
  t0: number;
  t1: number;
  buckets: TimelineBucketJson[];
  limits: { angle: number; risky: boolean }[];
  value_range: [number, number];
}

export interface OverlayJson<T> {
  full: T;
  selected?: T;
  selection_count?: number;
}

export interface TimelineResponseJson {
  t0: number;
  t1: number;
  full: TimelineSeriesJson[];
  selected?: TimelineSeriesJson[];
  selection_count?: number;
}

export interface RepresentativeGroupJson {
  score: number;
  frame: number | null;
  timestamp_s?: number;
  image_ref?: string | null;
  image_url?: string;
}

export interface RepresentativesJson {
  table: TableId;
  side: SideName;
  groups: RepresentativeGroupJson[];
}

export interface DatasetInfoJson {
  id: string;
  frames: number;
  included: number;
  excluded: number;
  fps: number;
}

export interface SelectionJson {
  count: number;
  frame_ids: number[];
  brush_set: BrushSetJson;
}

export interface BrushSetJson {
  combine: "intersection" | "union";
  brushes: BrushJson[];
}

export type BrushJson =
  | { id: string; type: "score_bin"; table: TableId; side: SideName; level: number;
      attribute: string; values: number[]; active?: boolean }
  | { id: string; type: "heatmap_cell"; table: TableId; side: SideName;
      cells: [number, number][]; active?: boolean }
  | { id: string; type: "angle_range"; joint: string; ranges: [number, number][];
      active?: boolean }
  | { id: string; type: "time_range"; ranges: [number, number][]; active?: boolean };
