import { ServiceClient } from "./api.js";
import { AppState } from "./state.js";
import type { PaletteName } from "./colors.js";
import { GAUGE_JOINTS, SILHOUETTE_ANCHORS, SILHOUETTE_PATH, columnFor, gaugeMirrored } from "./layout.js";
import { renderTable } from "./views/tables.js";
import { renderGauge, type GaugeVariant } from "./views/gauges.js";
import { renderMovements } from "./views/movements.js";
import { renderTimeline } from "./views/timeline.js";
import { clear, el, svg } from "./dom.js";
import type { SideName, TableId } from "./types.js";

const BASE_URL = (window as any).ERGOKIT_BASE_URL
  ?? `${location.protocol}//${location.hostname}:8077`;

interface UiPrefs {
  palette: PaletteName;
  gaugeVariant: GaugeVariant;
}

const prefs: UiPrefs = { palette: "traffic", gaugeVariant: "color_length" };

async function boot(): Promise<void> {
  const rootEl = document.getElementById("app")!;
  clear(rootEl);
  rootEl.append(el("div", { class: "view-error" }, "connecting…"));

  const client = new ServiceClient(BASE_URL);
  let datasets;
  try {
    datasets = (await client.listDatasets()).datasets;
  } catch (err) {
    clear(rootEl);
    rootEl.append(el("div", { class: "view-error" },
                     `cannot reach the service at ${BASE_URL}: ${err}`));
    return;
  }
  if (datasets.length === 0) {
    clear(rootEl);
    rootEl.append(el("div", { class: "view-error" },
                     "service reachable but no datasets loaded (serve --data <dir>)"));
    return;
  }
  const dataset = datasets[0];
  const state = new AppState(client, dataset.id, GAUGE_JOINTS);
  buildShell(rootEl, state, dataset.fps);
  state.onChange = () => paint(state, dataset.fps);
  await state.init();
}

function buildShell(rootEl: HTMLElement, state: AppState, fps: number): void {
  clear(rootEl);
  const gaugeRow = el("div", { id: "gauges", class: "gauge-row" });
  const leftCol = el("div", { id: "tables-left", class: "table-column" });
  const rightCol = el("div", { id: "tables-right", class: "table-column" });
  const center = el("div", { id: "center", class: "center-column" });
  const movements = el("div", { id: "movements", class: "movements" });
  const timeline = el("div", { id: "timeline", class: "timeline" });
  const toolbar = el("div", { class: "toolbar" });

  const paletteBtn = el("button", { class: "switch" }, "CVD palette");
  paletteBtn.addEventListener("click", () => {
    prefs.palette = prefs.palette === "traffic" ? "cvd" : "traffic";
    paletteBtn.textContent = prefs.palette === "traffic" ? "CVD palette" : "traffic palette";
    state.onChange?.();
  });
  const variantBtn = el("button", { class: "switch" }, "gauge variant");
  variantBtn.addEventListener("click", () => {
    prefs.gaugeVariant = prefs.gaugeVariant === "color_length" ? "color"
      : prefs.gaugeVariant === "color" ? "plain" : "color_length";
    state.onChange?.();
  });
  const clearBtn = el("button", { class: "switch" }, "clear selection");
  clearBtn.addEventListener("click", () => void state.clearSelection());
  const status = el("span", { id: "selection-status", class: "view-count" });
  toolbar.append(paletteBtn, variantBtn, clearBtn, status);

  // silhouette with leader-line anchors
  const sil = svg("svg", { viewBox: "0 0 100 160", class: "silhouette" });
  sil.append(svg("path", { d: SILHOUETTE_PATH, class: "silhouette-path" }));
  for (const anchor of SILHOUETTE_ANCHORS) {
    sil.append(svg("circle", { cx: anchor.x * 100, cy: anchor.y * 160, r: 2.2,
                               class: "anchor", "data-joint": anchor.joint }));
  }
  center.append(gaugeRow, sil);

  rootEl.append(
    toolbar,
    el("div", { class: "ergo-view" }, leftCol, center, rightCol),
    movements,
    timeline,
    el("div", { id: "errors", class: "error-bar" }),
  );
  void fps;
}

function paint(state: AppState, fps: number): void {
  const gaugeRow = document.getElementById("gauges")!;
  clear(gaugeRow);
  // left-side gauges on the viewer's left, mirror-opposed pairs adjacent
  const ordered = [...GAUGE_JOINTS].sort(
    (a, b) => Number(gaugeMirrored(b)) - Number(gaugeMirrored(a)));
  for (const joint of ordered) {
    const cell = el("div", { class: "gauge-cell" });
    gaugeRow.append(cell);
    renderGauge(cell, state, joint, prefs.palette, prefs.gaugeVariant);
  }

  const columns: Record<"left" | "right", HTMLElement> = {
    left: document.getElementById("tables-left")!,
    right: document.getElementById("tables-right")!,
  };
  clear(columns.left);
  clear(columns.right);
  for (const side of ["left", "right"] as SideName[]) {
    for (const tid of ["A", "B", "C"] as TableId[]) {
      const holder = el("div", { class: "table-view" });
      columns[columnFor(side)].append(holder);
      renderTable(holder, state, tid, side);
    }
  }

  renderMovements(document.getElementById("movements")!, state, fps);
  renderTimeline(document.getElementById("timeline")!, state, prefs.palette);

  const status = document.getElementById("selection-status");
  if (status) {
    status.textContent = state.data.selectionCount === null
      ? "" : `${state.data.selectionCount} frames selected`;
  }
  const errors = document.getElementById("errors");
  if (errors) {
    clear(errors);
    for (const message of state.errors) {
      errors.append(el("div", { class: "view-error" }, message));
    }
  }
}

boot();
