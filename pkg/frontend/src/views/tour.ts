/** First-visit tooltip tour over each frame. */

import { el } from "./helpers.js";

const STORAGE_KEY = "vesa-tour-done";

const STEPS: { view: string; text: string }[] = [
  { view: "search", text: "Search every keyword here; suggestions rank by how many datasets use them." },
  { view: "cloud", text: "The word cloud shows important keywords. Click one to filter; click again to undo." },
  { view: "list", text: "Matching datasets appear here. Titles link to their DOI or source page; click a row for the abstract." },
  { view: "map", text: "Draw a rectangle to filter by region. 'L' toggles the legend, ⌂ goes home, +/− zoom. Dots cluster as you zoom out." },
  { view: "histogram", text: "The lower chart brushes a time range; the upper chart zooms into it." },
  { view: "chord", text: "Arcs are authors; thicker ribbons mean more co-authored datasets. Click an arc to filter by author." },
];

export function startTourIfFirstVisit(root: HTMLElement): void {
  let done = false;
  try {
    done = window.localStorage.getItem(STORAGE_KEY) === "1";
  } catch {
    done = true; // storage unavailable: skip rather than nag every load
  }
  if (done) {
    return;
  }
  let step = 0;
  const tip = el("div", "tour-tip");
  const text = el("p", "tour-text");
  const next = el("button", "tour-next", "Next");
  const skip = el("button", "tour-skip", "Skip tour");
  tip.append(text, next, skip);
  document.body.append(tip);

  function finish(): void {
    tip.remove();
    document.querySelectorAll(".tour-highlight").forEach((n) => n.classList.remove("tour-highlight"));
    try {
      window.localStorage.setItem(STORAGE_KEY, "1");
    } catch {
      // ignore
    }
  }

  function show(): void {
    document.querySelectorAll(".tour-highlight").forEach((n) => n.classList.remove("tour-highlight"));
    const current = STEPS[step];
    if (!current) {
      finish();
      return;
    }
    const frame = root.querySelector<HTMLElement>(`[data-view="${current.view}"]`);
    if (!frame) {
      step += 1;
      show();
      return;
    }
    frame.classList.add("tour-highlight");
    text.textContent = current.text;
    const rect = frame.getBoundingClientRect();
    tip.style.top = `${window.scrollY + rect.top + 8}px`;
    tip.style.left = `${window.scrollX + rect.left + 8}px`;
    next.textContent = step === STEPS.length - 1 ? "Done" : "Next";
  }

  next.addEventListener("click", () => {
    step += 1;
    show();
  });
  skip.addEventListener("click", finish);
  show();
}
