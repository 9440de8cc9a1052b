/** Dashboard state: one selection, one payload generation, six views.
 *
 * Every interaction updates the selection, issues one debounced /filter
 * request, and re-renders all views from that single response. A request
 * generation counter guarantees last-write-wins: responses superseded by a
 * newer applied generation are discarded, so no mixed-generation render is
 * ever observable. On network failure the previous state is retained and
 * every view gets an error badge.
 */

import {
  FilterResponse,
  Selection,
  SpatialBox,
  TimeRange,
  cloneSelection,
  emptySelection,
} from "./api.js";

export type ViewName = "cloud" | "list" | "map" | "histogram" | "chord" | "search";

export const VIEW_NAMES: readonly ViewName[] = [
  "cloud",
  "list",
  "map",
  "histogram",
  "chord",
  "search",
];

export type Interaction =
  | { kind: "keyword-click"; term: string }
  | { kind: "time-brush"; range: TimeRange | null }
  | { kind: "map-region"; box: SpatialBox | null }
  | { kind: "author-arc"; authorId: string }
  | { kind: "autocomplete-commit"; term: string }
  | { kind: "reset" };

export interface MapViewport {
  center: [number, number]; // [lat, lon]
  zoom: number;
}

export const DEFAULT_VIEWPORT: MapViewport = { center: [20, 0], zoom: 1 };

export type ViewErrors = Record<ViewName, string | null>;

export function noErrors(): ViewErrors {
  return { cloud: null, list: null, map: null, histogram: null, chord: null, search: null };
}

function allErrors(message: string): ViewErrors {
  return {
    cloud: message,
    list: message,
    map: message,
    histogram: message,
    chord: message,
    search: message,
  };
}

export interface ViewState {
  selection: Selection;
  /** Generation of the payloads currently rendered. */
  generation: number;
  payloads: FilterResponse | null;
  loading: boolean;
  errors: ViewErrors;
  mapViewport: MapViewport;
  histogramBrush: TimeRange | null;
}

export type FilterFn = (selection: Selection) => Promise<FilterResponse>;

export interface StoreOptions {
  debounceMs?: number;
  schedule?: (fn: () => void, ms: number) => unknown;
  clearSchedule?: (handle: unknown) => void;
}

function toggle(list: string[], value: string): string[] {
  return list.includes(value) ? list.filter((v) => v !== value) : [...list, value];
}

export class DashboardStore {
  private current: ViewState;
  private listeners: ((state: ViewState) => void)[] = [];
  private issued = 0;
  private lastApplied: Selection = emptySelection();
  private timer: unknown = null;
  private pendingResolvers: (() => void)[] = [];
  private inflight = 0;
  private readonly debounceMs: number;
  private readonly schedule: (fn: () => void, ms: number) => unknown;
  private readonly clearSchedule: (handle: unknown) => void;

  constructor(
    private readonly filter: FilterFn,
    options: StoreOptions = {},
  ) {
    this.debounceMs = options.debounceMs ?? 150;
    this.schedule = options.schedule ?? ((fn, ms) => setTimeout(fn, ms));
    this.clearSchedule = options.clearSchedule ?? ((handle) => clearTimeout(handle as number));
    this.current = {
      selection: emptySelection(),
      generation: 0,
      payloads: null,
      loading: false,
      errors: noErrors(),
      mapViewport: { ...DEFAULT_VIEWPORT },
      histogramBrush: null,
    };
  }

  get state(): ViewState {
    return this.current;
  }

  subscribe(listener: (state: ViewState) => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of [...this.listeners]) {
      listener(this.current);
    }
  }

  private set(partial: Partial<ViewState>): void {
    this.current = { ...this.current, ...partial };
    this.emit();
  }

  /** Viewport moves are view-local: no request, no generation change. */
  setMapViewport(viewport: MapViewport): void {
    this.set({ mapViewport: viewport });
  }

  /** Initial (or manual) load of the overview state. */
  load(): Promise<ViewState> {
    return this.apply({ kind: "reset" });
  }

  apply(event: Interaction): Promise<ViewState> {
    const selection = cloneSelection(this.current.selection);
    let brush = this.current.histogramBrush;
    let viewport = this.current.mapViewport;
    switch (event.kind) {
      case "keyword-click":
      case "autocomplete-commit":
        selection.keywords = toggle(selection.keywords, event.term);
        break;
      case "time-brush":
        selection.time_range = event.range ? { ...event.range } : null;
        brush = event.range ? { ...event.range } : null;
        break;
      case "map-region":
        selection.spatial_box = event.box ? { ...event.box } : null;
        break;
      case "author-arc":
        selection.authors = toggle(selection.authors, event.authorId);
        break;
      case "reset":
        selection.keywords = [];
        selection.time_range = null;
        selection.spatial_box = null;
        selection.authors = [];
        selection.sources = [];
        brush = null;
        viewport = { ...DEFAULT_VIEWPORT };
        break;
    }
    this.set({ selection, histogramBrush: brush, mapViewport: viewport, loading: true });

    return new Promise((resolve) => {
      this.pendingResolvers.push(() => resolve(this.current));
      if (this.timer !== null) {
        this.clearSchedule(this.timer);
      }
      // interactions within the debounce window coalesce into one request
      this.timer = this.schedule(() => void this.issue(), this.debounceMs);
    });
  }

  private async issue(): Promise<void> {
    this.timer = null;
    const generation = ++this.issued;
    const selection = cloneSelection(this.current.selection);
    const resolvers = this.pendingResolvers;
    this.pendingResolvers = [];
    this.inflight += 1;
    try {
      const response = await this.filter(selection);
      if (generation > this.current.generation) {
        this.lastApplied = cloneSelection(selection);
        this.set({
          generation,
          payloads: response,
          errors: noErrors(),
          loading: this.hasPendingWork(),
        });
      }
    } catch (error) {
      if (generation > this.current.generation) {
        // keep the previous payloads; badge every view; roll the selection
        // back so the rendered state stays coherent
        this.set({
          selection: cloneSelection(this.lastApplied),
          errors: allErrors(error instanceof Error ? error.message : String(error)),
          loading: this.hasPendingWork(),
        });
      }
    } finally {
      this.inflight -= 1;
      for (const resolve of resolvers) {
        resolve();
      }
    }
  }

  private hasPendingWork(): boolean {
    return this.timer !== null || this.inflight > 1;
  }
}
