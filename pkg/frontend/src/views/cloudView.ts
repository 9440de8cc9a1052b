/** Word cloud: contextual search. Click toggles a conjunctive keyword. */

import { layoutCloud } from "../cloud.js";
import { DashboardStore, ViewState } from "../state.js";
import { applyErrorBadge, clear, makeFrame, svgEl } from "./helpers.js";

const WIDTH = 460;
const HEIGHT = 260;

export function createCloudView(container: HTMLElement, store: DashboardStore): void {
  const frame = makeFrame(container, "cloud", "Keywords");
  const svg = svgEl("svg", { viewBox: `0 0 ${WIDTH} ${HEIGHT}`, class: "cloud-svg" });
  frame.body.append(svg);

  function render(state: ViewState): void {
    applyErrorBadge(frame, state.errors, "cloud");
    clear(svg);
    if (!state.payloads) {
      return;
    }
    const words = state.payloads.payloads.cloud.map((entry) => ({
      term: entry.term,
      weight: entry.weight,
    }));
    const selected = new Set(state.selection.keywords);
    for (const word of layoutCloud(words, WIDTH, HEIGHT)) {
      const text = svgEl("text", {
        x: word.x,
        y: word.y,
        "font-size": word.fontSize,
        "text-anchor": "middle",
        class: selected.has(word.term) ? "cloud-word selected" : "cloud-word",
      });
      text.textContent = word.term;
      const title = svgEl("title");
      title.textContent = `${word.term}: ${word.weight} datasets`;
      text.append(title);
      text.addEventListener("click", () => {
        void store.apply({ kind: "keyword-click", term: word.term });
      });
      svg.append(text);
    }
  }

  store.subscribe(render);
  render(store.state);
}
