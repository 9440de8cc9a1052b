/** Spatial search: clustered dots per repository, a drawn rectangle filter,
 * and the standard controls (legend toggle 'L', home, zoom '+'/'−').
 * Hovering shows coordinates in the top bar. */

import { MapPoint } from "../api.js";
import { clusterPoints, MAX_ZOOM } from "../cluster.js";
import { DashboardStore, DEFAULT_VIEWPORT, MapViewport, ViewState } from "../state.js";
import { applyErrorBadge, clear, el, makeFrame, svgEl } from "./helpers.js";

const WIDTH = 460;
const HEIGHT = 260;

const SOURCE_COLORS = ["#2b6cb0", "#c05621", "#2f855a", "#6b46c1"];

interface Projection {
  toX(lon: number): number;
  toY(lat: number): number;
  toLon(x: number): number;
  toLat(y: number): number;
}

function projectionFor(viewport: MapViewport): Projection {
  const widthDeg = 360 / 2 ** (viewport.zoom - 1);
  const heightDeg = widthDeg * (HEIGHT / WIDTH);
  const [centerLat, centerLon] = viewport.center;
  const west = centerLon - widthDeg / 2;
  const north = centerLat + heightDeg / 2;
  return {
    toX: (lon) => ((lon - west) / widthDeg) * WIDTH,
    toY: (lat) => ((north - lat) / heightDeg) * HEIGHT,
    toLon: (x) => west + (x / WIDTH) * widthDeg,
    toLat: (y) => north - (y / HEIGHT) * heightDeg,
  };
}

export function createMapView(container: HTMLElement, store: DashboardStore): void {
  const frame = makeFrame(container, "map", "Spatial coverage");
  const coordsBar = el("div", "map-coords", " ");
  const svg = svgEl("svg", { viewBox: `0 0 ${WIDTH} ${HEIGHT}`, class: "map-svg" });
  const controls = el("div", "map-controls");
  const legend = el("div", "map-legend");
  frame.body.append(coordsBar, svg, controls, legend);

  let legendVisible = true;
  let points: MapPoint[] = [];
  let viewport: MapViewport = { ...DEFAULT_VIEWPORT };

  const legendButton = el("button", "map-button", "L");
  legendButton.title = "Toggle legend";
  legendButton.addEventListener("click", () => {
    legendVisible = !legendVisible;
    legend.hidden = !legendVisible;
  });
  const homeButton = el("button", "map-button", "⌂");
  homeButton.title = "Back to the default position";
  homeButton.addEventListener("click", () => {
    store.setMapViewport({ ...DEFAULT_VIEWPORT });
  });
  const zoomIn = el("button", "map-button", "+");
  zoomIn.title = "Zoom in";
  zoomIn.addEventListener("click", () => {
    store.setMapViewport({ ...viewport, zoom: Math.min(MAX_ZOOM, viewport.zoom + 1) });
  });
  const zoomOut = el("button", "map-button", "−");
  zoomOut.title = "Zoom out";
  zoomOut.addEventListener("click", () => {
    store.setMapViewport({ ...viewport, zoom: Math.max(1, viewport.zoom - 1) });
  });
  controls.append(legendButton, homeButton, zoomIn, zoomOut);

  // rectangle selection: mousedown, drag, mouseup applies the box filter
  let dragStart: { x: number; y: number } | null = null;
  let rubberBand: SVGRectElement | null = null;

  function svgPoint(event: MouseEvent): { x: number; y: number } {
    const rect = svg.getBoundingClientRect();
    return {
      x: ((event.clientX - rect.left) / rect.width) * WIDTH,
      y: ((event.clientY - rect.top) / rect.height) * HEIGHT,
    };
  }

  svg.addEventListener("mousedown", (event) => {
    dragStart = svgPoint(event);
    rubberBand = svgEl("rect", { class: "rubber-band" });
    svg.append(rubberBand);
  });
  svg.addEventListener("mousemove", (event) => {
    const at = svgPoint(event);
    const projection = projectionFor(viewport);
    coordsBar.textContent = `${projection.toLat(at.y).toFixed(3)}, ${projection
      .toLon(at.x)
      .toFixed(3)}`;
    if (dragStart && rubberBand) {
      const x = Math.min(dragStart.x, at.x);
      const y = Math.min(dragStart.y, at.y);
      rubberBand.setAttribute("x", String(x));
      rubberBand.setAttribute("y", String(y));
      rubberBand.setAttribute("width", String(Math.abs(at.x - dragStart.x)));
      rubberBand.setAttribute("height", String(Math.abs(at.y - dragStart.y)));
    }
  });
  svg.addEventListener("mouseup", (event) => {
    if (!dragStart) {
      return;
    }
    const end = svgPoint(event);
    const start = dragStart;
    dragStart = null;
    rubberBand?.remove();
    rubberBand = null;
    if (Math.abs(end.x - start.x) < 4 || Math.abs(end.y - start.y) < 4) {
      return; // a click, not a rectangle
    }
    const projection = projectionFor(viewport);
    const clamp = (v: number, lo: number, hi: number) => Math.max(lo, Math.min(hi, v));
    void store.apply({
      kind: "map-region",
      box: {
        west: clamp(projection.toLon(Math.min(start.x, end.x)), -180, 180),
        east: clamp(projection.toLon(Math.max(start.x, end.x)), -180, 180),
        south: clamp(projection.toLat(Math.max(start.y, end.y)), -90, 90),
        north: clamp(projection.toLat(Math.min(start.y, end.y)), -90, 90),
      },
    });
  });

  function sourceColor(source: string, sources: string[]): string {
    const index = Math.max(0, sources.indexOf(source));
    return SOURCE_COLORS[index % SOURCE_COLORS.length]!;
  }

  function render(state: ViewState): void {
    applyErrorBadge(frame, state.errors, "map");
    viewport = state.mapViewport;
    points = state.payloads ? state.payloads.payloads.map_points : [];
    clear(svg);
    svg.append(svgEl("rect", { width: WIDTH, height: HEIGHT, class: "map-sea" }));
    const projection = projectionFor(viewport);
    // graticule every 30 degrees for orientation
    for (let lon = -180; lon <= 180; lon += 30) {
      svg.append(
        svgEl("line", {
          x1: projection.toX(lon),
          y1: 0,
          x2: projection.toX(lon),
          y2: HEIGHT,
          class: "graticule",
        }),
      );
    }
    for (let lat = -90; lat <= 90; lat += 30) {
      svg.append(
        svgEl("line", {
          x1: 0,
          y1: projection.toY(lat),
          x2: WIDTH,
          y2: projection.toY(lat),
          class: "graticule",
        }),
      );
    }

    const sources = [...new Set(points.map((p) => p.source))].sort();
    for (const cluster of clusterPoints(points, viewport.zoom)) {
      const x = projection.toX(cluster.lon);
      const y = projection.toY(cluster.lat);
      if (x < -20 || x > WIDTH + 20 || y < -20 || y > HEIGHT + 20) {
        continue;
      }
      const single = cluster.count === 1;
      const color = single
        ? sourceColor(cluster.points[0]!.source, sources)
        : "#4a5568";
      const radius = single ? 4 : Math.min(16, 7 + 2 * Math.log2(cluster.count));
      const dot = svgEl("circle", { cx: x, cy: y, r: radius, fill: color, class: "map-dot" });
      const tip = svgEl("title");
      tip.textContent = single
        ? `${cluster.points[0]!.dataset_id} (${cluster.lat.toFixed(3)}, ${cluster.lon.toFixed(3)})`
        : `${cluster.count} datasets`;
      dot.append(tip);
      svg.append(dot);
      if (!single) {
        const label = svgEl("text", {
          x,
          y: y + 3,
          "text-anchor": "middle",
          class: "cluster-count",
        });
        label.textContent = String(cluster.count);
        svg.append(label);
      }
    }

    clear(legend);
    for (const source of sources) {
      const item = el("span", "legend-item", source);
      item.style.setProperty("--dot-color", sourceColor(source, sources));
      legend.append(item);
    }
    legend.hidden = !legendVisible;
  }

  store.subscribe(render);
  render(store.state);
}
