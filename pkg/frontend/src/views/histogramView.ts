/** Temporal search: a dual line chart. The lower overview chart spans the
 * whole collection's time axis and brushes; the upper chart zooms to the
 * brushed range. Hover shows the dataset count per bin. */

import { HistogramBin } from "../api.js";
import { DashboardStore, ViewState } from "../state.js";
import { applyErrorBadge, clear, el, makeFrame, svgEl } from "./helpers.js";

const WIDTH = 460;
const UPPER_HEIGHT = 150;
const LOWER_HEIGHT = 70;

function linePath(
  bins: HistogramBin[],
  width: number,
  height: number,
  maxCount: number,
): string {
  if (!bins.length) {
    return "";
  }
  const stepX = width / bins.length;
  const scaleY = (count: number) =>
    height - (maxCount > 0 ? (count / maxCount) * (height - 6) : 0) - 3;
  return bins
    .map((bin, i) => `${i === 0 ? "M" : "L"}${(i + 0.5) * stepX},${scaleY(bin.count)}`)
    .join(" ");
}

export function createHistogramView(container: HTMLElement, store: DashboardStore): void {
  const frame = makeFrame(container, "histogram", "Temporal coverage");
  const hoverBar = el("div", "hist-hover", " ");
  const upper = svgEl("svg", { viewBox: `0 0 ${WIDTH} ${UPPER_HEIGHT}`, class: "hist-upper" });
  const lower = svgEl("svg", { viewBox: `0 0 ${WIDTH} ${LOWER_HEIGHT}`, class: "hist-lower" });
  const undatedNote = el("div", "hist-undated", "");
  frame.body.append(hoverBar, upper, lower, undatedNote);

  let bins: HistogramBin[] = [];
  let dragStart: number | null = null;
  let rubberBand: SVGRectElement | null = null;

  function binIndexAt(event: MouseEvent, svg: SVGSVGElement): number {
    const rect = svg.getBoundingClientRect();
    const x = ((event.clientX - rect.left) / rect.width) * WIDTH;
    return Math.max(0, Math.min(bins.length - 1, Math.floor((x / WIDTH) * bins.length)));
  }

  lower.addEventListener("mousedown", (event) => {
    if (!bins.length) {
      return;
    }
    dragStart = binIndexAt(event, lower);
    rubberBand = svgEl("rect", { class: "rubber-band", y: 0, height: LOWER_HEIGHT });
    lower.append(rubberBand);
  });
  lower.addEventListener("mousemove", (event) => {
    if (dragStart === null || !rubberBand) {
      return;
    }
    const index = binIndexAt(event, lower);
    const from = Math.min(dragStart, index);
    const to = Math.max(dragStart, index);
    rubberBand.setAttribute("x", String((from / bins.length) * WIDTH));
    rubberBand.setAttribute("width", String(((to - from + 1) / bins.length) * WIDTH));
  });
  lower.addEventListener("mouseup", (event) => {
    if (dragStart === null) {
      return;
    }
    const index = binIndexAt(event, lower);
    const from = Math.min(dragStart, index);
    const to = Math.max(dragStart, index);
    dragStart = null;
    rubberBand?.remove();
    rubberBand = null;
    const first = bins[from];
    const last = bins[to];
    if (first && last) {
      void store.apply({
        kind: "time-brush",
        range: { start: first.bin_start, end: last.bin_end },
      });
    }
  });

  upper.addEventListener("mousemove", (event) => {
    const visible = visibleBins(store.state);
    if (!visible.length) {
      return;
    }
    const rect = upper.getBoundingClientRect();
    const x = ((event.clientX - rect.left) / rect.width) * WIDTH;
    const index = Math.max(
      0,
      Math.min(visible.length - 1, Math.floor((x / WIDTH) * visible.length)),
    );
    const bin = visible[index]!;
    hoverBar.textContent = `${bin.bin_start.slice(0, 10)}: ${bin.count} datasets`;
  });

  function visibleBins(state: ViewState): HistogramBin[] {
    const all = state.payloads ? state.payloads.payloads.histogram : [];
    const brush = state.histogramBrush;
    if (!brush) {
      return all;
    }
    return all.filter((bin) => bin.bin_end > brush.start && bin.bin_start < brush.end);
  }

  function render(state: ViewState): void {
    applyErrorBadge(frame, state.errors, "histogram");
    bins = state.payloads ? state.payloads.payloads.histogram : [];
    clear(upper);
    clear(lower);
    const zoomed = visibleBins(state);
    const maxUpper = Math.max(0, ...zoomed.map((b) => b.count));
    const maxLower = Math.max(0, ...bins.map((b) => b.count));
    upper.append(
      svgEl("path", { d: linePath(zoomed, WIDTH, UPPER_HEIGHT, maxUpper), class: "hist-line" }),
    );
    lower.append(
      svgEl("path", {
        d: linePath(bins, WIDTH, LOWER_HEIGHT, maxLower),
        class: "hist-line overview",
      }),
    );
    if (state.histogramBrush && bins.length) {
      const brush = state.histogramBrush;
      const from = bins.findIndex((b) => b.bin_end > brush.start);
      let to = bins.length - 1;
      for (let i = bins.length - 1; i >= 0; i--) {
        if (bins[i]!.bin_start < brush.end) {
          to = i;
          break;
        }
      }
      if (from >= 0) {
        lower.append(
          svgEl("rect", {
            x: (from / bins.length) * WIDTH,
            y: 0,
            width: ((to - from + 1) / bins.length) * WIDTH,
            height: LOWER_HEIGHT,
            class: "brush-marker",
          }),
        );
      }
    }
    const undated = state.payloads ? state.payloads.payloads.histogram_undated : 0;
    undatedNote.textContent = undated ? `${undated} datasets without temporal coverage` : "";
  }

  store.subscribe(render);
  render(store.state);
}
