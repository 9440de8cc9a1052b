/** Co-authorship chord diagram; thicker ribbons mean more shared datasets.
 * Clicking an author arc toggles that author in the filter. */

import { chordLayout } from "../chord.js";
import { DashboardStore, ViewState } from "../state.js";
import { applyErrorBadge, clear, makeFrame, svgEl } from "./helpers.js";

const SIZE = 280;
const CENTER = SIZE / 2;
const RADIUS = SIZE / 2 - 30;

function polar(angle: number, radius: number): [number, number] {
  return [CENTER + radius * Math.cos(angle), CENTER + radius * Math.sin(angle)];
}

function arcPath(start: number, end: number, radius: number, thickness: number): string {
  const [x0, y0] = polar(start, radius);
  const [x1, y1] = polar(end, radius);
  const [x2, y2] = polar(end, radius + thickness);
  const [x3, y3] = polar(start, radius + thickness);
  const large = end - start > Math.PI ? 1 : 0;
  return (
    `M${x0},${y0} A${radius},${radius} 0 ${large} 1 ${x1},${y1} ` +
    `L${x2},${y2} A${radius + thickness},${radius + thickness} 0 ${large} 0 ${x3},${y3} Z`
  );
}

export function createChordView(container: HTMLElement, store: DashboardStore): void {
  const frame = makeFrame(container, "chord", "Co-authorship");
  const svg = svgEl("svg", { viewBox: `0 0 ${SIZE} ${SIZE}`, class: "chord-svg" });
  frame.body.append(svg);

  function render(state: ViewState): void {
    applyErrorBadge(frame, state.errors, "chord");
    clear(svg);
    if (!state.payloads) {
      return;
    }
    const layout = chordLayout(state.payloads.payloads.chord);
    const selected = new Set(state.selection.authors);

    for (const ribbon of layout.ribbons) {
      const a = layout.arcs[ribbon.a]!;
      const b = layout.arcs[ribbon.b]!;
      const angleA = (a.startAngle + a.endAngle) / 2;
      const angleB = (b.startAngle + b.endAngle) / 2;
      const [x0, y0] = polar(angleA, RADIUS);
      const [x1, y1] = polar(angleB, RADIUS);
      const path = svgEl("path", {
        d: `M${x0},${y0} Q${CENTER},${CENTER} ${x1},${y1}`,
        class: "chord-ribbon",
        "stroke-width": Math.max(1, ribbon.width * 28),
        fill: "none",
      });
      const tip = svgEl("title");
      tip.textContent = `${a.name} ↔ ${b.name}: ${ribbon.count} shared datasets`;
      path.append(tip);
      svg.append(path);
    }

    for (const arc of layout.arcs) {
      const path = svgEl("path", {
        d: arcPath(arc.startAngle, arc.endAngle, RADIUS, 10),
        class: selected.has(arc.id) ? "chord-arc selected" : "chord-arc",
      });
      const tip = svgEl("title");
      tip.textContent = `${arc.name}: ${arc.total} co-authorship links`;
      path.append(tip);
      path.addEventListener("click", () => {
        void store.apply({ kind: "author-arc", authorId: arc.id });
      });
      svg.append(path);

      const mid = (arc.startAngle + arc.endAngle) / 2;
      const [lx, ly] = polar(mid, RADIUS + 16);
      const label = svgEl("text", {
        x: lx,
        y: ly,
        "text-anchor": "middle",
        class: "chord-label",
      });
      label.textContent = arc.name.split(" ").pop() ?? arc.name;
      svg.append(label);
    }
  }

  store.subscribe(render);
  render(store.state);
}
