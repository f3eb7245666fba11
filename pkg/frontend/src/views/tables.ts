import type { AppState } from "../state.js";
import type { BrushJson, OverlayJson, SideName, TableAggregateJson, TableId } from "../types.js";
import { buildHeatmapVM, buildHistogramBars } from "../geometry.js";
import { clear, el, svg } from "../dom.js";

/** Augmented score table: heatmap with cell scores, marginal histogram
 *  hierarchies, and the selected-scope overlay drawn inside each bar. */

const CELL = 26;
const HIST = 42;

function pickedCells(state: AppState, table: TableId, side: SideName):
    [number, number][] {
  const brush = state.selection.brushes.find(
    (b: BrushJson) => b.type === "heatmap_cell" && b.table === table && b.side === side);
  return brush && brush.type === "heatmap_cell" ? brush.cells : [];
}

function histogramBlock(state: AppState, table: TableId, side: SideName,
                        attribute: string, level: number,
                        counts: number[], selected: number[] | null,
                        width: number, peak?: number): SVGElement {
  const bars = buildHistogramBars(counts, selected, width, HIST, peak);
  const group = svg("g", { class: "histogram" });
  for (const bar of bars) {
    const rect = svg("rect", {
      x: bar.x + 1, y: bar.y, width: Math.max(bar.w - 2, 1), height: bar.h,
      class: "hist-bar", "data-bin": bar.bin,
    });
    rect.addEventListener("click", () => {
      void state.clickHistogramBin(table, side, level, attribute, bar.bin);
    });
    const title = svg("title", {},
                      `${attribute} = ${bar.bin}: ${bar.count}`
                      + (bar.selectedCount !== null ? ` (${bar.selectedCount} selected)` : ""));
    rect.append(title);
    group.append(rect);
    if (bar.selectedH !== null && bar.selectedH > 0) {
      group.append(svg("rect", {
        x: bar.x + 1, y: HIST - bar.selectedH, width: Math.max(bar.w - 2, 1),
        height: bar.selectedH, class: "hist-bar-selected",
      }));
    }
  }
  return group;
}

export function renderTable(container: HTMLElement, state: AppState,
                            table: TableId, side: SideName): void {
  clear(container);
  const overlay: OverlayJson<TableAggregateJson> | null = state.data.tables[side][table];
  if (!overlay) {
    container.append(el("div", { class: "view-error" }, "no data yet"));
    return;
  }
  const agg = overlay.full;
  const sel = overlay.selected ?? null;
  const hm = agg.heatmap;
  const gridW = hm.cols * CELL;
  const gridH = hm.rows * CELL;
  const left = HIST + 18;
  const top = HIST * (agg.histograms[0].levels.length) + 8;
  const width = left + gridW + 4;
  const height = top + gridH + 16;

  const root = svg("svg", { viewBox: `0 0 ${width} ${height}`, class: "table-svg" });

  // horizontal hierarchy above the grid
  const horizontal = agg.histograms.find((h) => h.orientation === "horizontal")!;
  const selHorizontal = sel?.histograms.find((h) => h.orientation === "horizontal");
  const level1 = horizontal.levels[0][0];
  const g1 = histogramBlock(state, table, side, horizontal.attributes[0], 1,
                            level1.bin_counts,
                            selHorizontal ? selHorizontal.levels[0][0].bin_counts : null,
                            gridW);
  g1.setAttribute("transform", `translate(${left}, 0)`);
  root.append(g1);
  if (horizontal.levels.length > 1) {
    const groupW = gridW / horizontal.levels[1].length;
    horizontal.levels[1].forEach((node, i) => {
      const selNode = selHorizontal?.levels[1]?.[i];
      const g2 = histogramBlock(state, table, side, horizontal.attributes[1], 2,
                                node.bin_counts,
                                selNode ? selNode.bin_counts : null, groupW,
                                Math.max(...level1.bin_counts, 1));
      g2.setAttribute("transform", `translate(${left + i * groupW}, ${HIST + 2})`);
      root.append(g2);
    });
  }

  // vertical histogram to the left of the grid, bars growing leftwards
  const vertical = agg.histograms.find((h) => h.orientation === "vertical")!;
  const selVertical = sel?.histograms.find((h) => h.orientation === "vertical");
  const vcounts = vertical.levels[0][0].bin_counts;
  const vsel = selVertical ? selVertical.levels[0][0].bin_counts : null;
  const vpeak = Math.max(...vcounts, 1);
  vcounts.forEach((count, i) => {
    const h = (count / vpeak) * HIST;
    const y = top + i * (gridH / vcounts.length) + 2;
    const rowH = gridH / vcounts.length - 4;
    const rect = svg("rect", { x: HIST - h, y, width: h, height: rowH, class: "hist-bar" });
    rect.addEventListener("click", () => {
      void state.clickHistogramBin(table, side, 1, vertical.attributes[0], i + 1);
    });
    rect.append(svg("title", {}, `${vertical.attributes[0]} = ${i + 1}: ${count}`));
    root.append(rect);
    if (vsel) {
      const hs = (vsel[i] / vpeak) * HIST;
      root.append(svg("rect", { x: HIST - hs, y, width: hs, height: rowH,
                                class: "hist-bar-selected" }));
    }
  });

  // heatmap grid with per-cell scores; clicking toggles cells in one brush
  const cells = buildHeatmapVM(hm, gridW, gridH, sel?.heatmap ?? null,
                               pickedCells(state, table, side));
  const grid = svg("g", { transform: `translate(${left}, ${top})` });
  for (const cell of cells) {
    const rect = svg("rect", {
      x: cell.x, y: cell.y, width: cell.w, height: cell.h,
      fill: cell.fill, class: cell.outlined ? "cell cell-picked" : "cell",
    });
    rect.addEventListener("click", () => {
      void state.clickHeatmapCell(table, side, cell.row, cell.col);
    });
    const tip = `score ${cell.score}: ${cell.count}`
      + (cell.selectedCount !== null ? ` (${cell.selectedCount} selected)` : "");
    rect.append(svg("title", {}, tip));
    grid.append(rect);
    grid.append(svg("text", {
      x: cell.x + cell.w / 2, y: cell.y + cell.h / 2 + 3,
      class: "cell-score", "text-anchor": "middle",
    }, String(cell.score)));
  }
  root.append(grid);

  const label = sel ? `${agg.n} frames, ${sel.n} selected` : `${agg.n} frames`;
  container.append(
    el("header", { class: "view-head" },
       el("span", {}, `Table ${table} · ${side}`),
       el("span", { class: "view-count" }, label),
       el("button", { class: "maximize", title: "maximize" }, "⤢")),
    root);
  container.querySelector("button.maximize")!
    .addEventListener("click", () => container.classList.toggle("maximized"));
}
