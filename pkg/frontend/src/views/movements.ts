import type { AppState, TABLE_IDS } from "../state.js";
import type { SideName, TableId } from "../types.js";
import { advance, intervalMs, type PlaybackState } from "../playback.js";
import { clear, el } from "../dom.js";

/** Key-frame strip: one representative image per score group of the chosen
 *  table; clicking an image lays a time brush around its moment. A play
 *  button steps through the group stills at the recording rate. */

let playback: PlaybackState = { frames: [], index: 0, playing: false };
let timer: ReturnType<typeof setInterval> | null = null;

export function renderMovements(container: HTMLElement, state: AppState,
                                fps: number): void {
  clear(container);
  const reps = state.data.representatives;
  const head = el("header", { class: "view-head" },
                  el("span", {}, `Key frames · Table ${state.movementsTable} · ${state.movementsSide}`));
  const switcher = el("span", { class: "table-switch" });
  for (const tid of ["A", "B", "C"] as TableId[]) {
    for (const side of ["left", "right"] as SideName[]) {
      const button = el("button",
                        { class: tid === state.movementsTable && side === state.movementsSide
                          ? "switch active" : "switch" },
                        `${tid}·${side[0].toUpperCase()}`);
      button.addEventListener("click", () => void state.switchMovements(tid, side));
      switcher.append(button);
    }
  }
  head.append(switcher);
  container.append(head);

  if (!reps || reps.groups.length === 0) {
    container.append(el("div", { class: "view-error" }, "no representative frames"));
    return;
  }
  const strip = el("div", { class: "movement-strip" });
  const withImages = reps.groups.filter((g) => g.frame !== null);
  if (withImages.length === 0) {
    container.append(el("div", { class: "view-error" },
                        "no frames carry images in this recording"));
    return;
  }
  for (const group of reps.groups) {
    const card = el("figure", { class: "movement-card" });
    if (group.frame === null) {
      card.append(el("div", { class: "movement-placeholder" }, "no image"));
    } else {
      const img = el("img", {
        src: state.client.imageUrl(state.datasetId, group.frame),
        alt: `frame ${group.frame}`,
      });
      img.addEventListener("error", () => {
        img.replaceWith(el("div", { class: "movement-placeholder" }, "missing"));
      });
      img.addEventListener("click", () => {
        if (group.timestamp_s !== undefined) {
          void state.clickRepresentative(group.timestamp_s);
        }
      });
      card.append(img);
    }
    card.append(el("figcaption", {}, `score ${group.score}`));
    strip.append(card);
  }
  container.append(strip);

  const play = el("button", { class: "switch" }, playback.playing ? "⏸" : "▶");
  play.addEventListener("click", () => {
    playback = { frames: withImages.map((g) => g.frame as number),
                 index: playback.index, playing: !playback.playing };
    if (timer) clearInterval(timer);
    if (playback.playing) {
      timer = setInterval(() => {
        playback = advance(playback);
        const cards = strip.querySelectorAll(".movement-card img");
        cards.forEach((node, i) => node.classList.toggle("playing", i === playback.index));
      }, intervalMs(fps));
    }
    play.textContent = playback.playing ? "⏸" : "▶";
  });
  head.append(play);
}
