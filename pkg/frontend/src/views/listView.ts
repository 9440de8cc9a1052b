/** Result list: titles link out to the DOI or source page; clicking a row
 * loads the abstract on demand. Shows the retrieved-dataset count. */

import { VesaClient } from "../api.js";
import { DashboardStore, ViewState } from "../state.js";
import { applyErrorBadge, clear, el, makeFrame } from "./helpers.js";

export function createListView(
  container: HTMLElement,
  store: DashboardStore,
  client: VesaClient,
): void {
  const frame = makeFrame(container, "list", "Results");
  const count = el("div", "result-count");
  const table = el("div", "result-rows");
  frame.body.append(count, table);

  function render(state: ViewState): void {
    applyErrorBadge(frame, state.errors, "list");
    clear(table);
    if (!state.payloads) {
      count.textContent = "";
      return;
    }
    const { filter, payloads } = state.payloads;
    count.textContent = `${filter.total} datasets`;
    for (const row of payloads.list_rows) {
      const rowEl = el("div", "result-row");
      const title = el("div", "result-title");
      if (row.doi) {
        const link = el("a", "result-link", row.title);
        link.href = row.doi;
        link.target = "_blank";
        link.rel = "noopener";
        title.append(link);
      } else {
        title.textContent = row.title;
      }
      const meta = el(
        "div",
        "result-meta",
        `${row.authors.join(", ") || "unknown authors"} · ${row.source}`,
      );
      const abstractBox = el("div", "result-abstract");
      abstractBox.hidden = true;
      rowEl.append(title, meta, abstractBox);
      rowEl.addEventListener("click", () => {
        if (!abstractBox.hidden) {
          abstractBox.hidden = true;
          return;
        }
        client
          .abstract(row.dataset_id)
          .then((text) => {
            abstractBox.textContent = text || "(no abstract)";
            abstractBox.hidden = false;
          })
          .catch(() => {
            abstractBox.textContent = "(abstract unavailable)";
            abstractBox.hidden = false;
          });
      });
      table.append(rowEl);
    }
  }

  store.subscribe(render);
  render(store.state);
}
