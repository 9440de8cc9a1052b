/** Autocomplete search bar over the full keyword vocabulary. */

import { VesaClient } from "../api.js";
import { autocomplete } from "../autocomplete.js";
import { DashboardStore } from "../state.js";
import { applyErrorBadge, clear, el, makeFrame } from "./helpers.js";

const SUGGEST_DEBOUNCE_MS = 150;

export function createSearchBar(
  container: HTMLElement,
  store: DashboardStore,
  client: VesaClient,
): void {
  const frame = makeFrame(container, "search", "Search");
  const input = el("input", "search-input");
  input.type = "search";
  input.placeholder = "Search all keywords…";
  const list = el("ul", "suggestions");
  frame.body.append(input, list);

  let timer: number | undefined;
  let requestSeq = 0;

  function showSuggestions(terms: string[]): void {
    clear(list);
    for (const term of terms) {
      const item = el("li", "suggestion", term);
      item.addEventListener("mousedown", (event) => {
        event.preventDefault();
        input.value = "";
        clear(list);
        void store.apply({ kind: "autocomplete-commit", term });
      });
      list.append(item);
    }
  }

  input.addEventListener("input", () => {
    window.clearTimeout(timer);
    const prefix = input.value;
    if (!prefix.trim()) {
      clear(list);
      return;
    }
    timer = window.setTimeout(() => {
      const seq = ++requestSeq;
      client
        .suggest(prefix)
        .then((entries) => {
          if (seq !== requestSeq) {
            return; // superseded by a newer prefix
          }
          showSuggestions(autocomplete(prefix, entries));
        })
        .catch(() => showSuggestions([]));
    }, SUGGEST_DEBOUNCE_MS);
  });

  input.addEventListener("keydown", (event) => {
    if (event.key === "Enter") {
      const first = list.querySelector(".suggestion");
      const term = first?.textContent ?? input.value.trim().toLowerCase();
      if (term) {
        input.value = "";
        clear(list);
        void store.apply({ kind: "autocomplete-commit", term });
      }
    }
  });

  const reset = el("button", "reset-button", "Reset");
  reset.addEventListener("click", () => {
    void store.apply({ kind: "reset" });
  });
  frame.body.append(reset);

  store.subscribe((state) => {
    applyErrorBadge(frame, state.errors, "search");
  });
}
