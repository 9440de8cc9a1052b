/** Wire types and the HTTP client for the search API. */

export interface SpatialBox {
  west: number;
  south: number;
  east: number;
  north: number;
}

export interface TimeRange {
  start: string;
  end: string;
}

export interface Selection {
  keywords: string[];
  time_range: TimeRange | null;
  spatial_box: SpatialBox | null;
  authors: string[];
  sources: string[];
}

export function emptySelection(): Selection {
  return { keywords: [], time_range: null, spatial_box: null, authors: [], sources: [] };
}

export function cloneSelection(selection: Selection): Selection {
  return {
    keywords: [...selection.keywords],
    time_range: selection.time_range ? { ...selection.time_range } : null,
    spatial_box: selection.spatial_box ? { ...selection.spatial_box } : null,
    authors: [...selection.authors],
    sources: [...selection.sources],
  };
}

export function isEmptySelection(selection: Selection): boolean {
  return (
    selection.keywords.length === 0 &&
    selection.time_range === null &&
    selection.spatial_box === null &&
    selection.authors.length === 0 &&
    selection.sources.length === 0
  );
}

/** Request body: only the active dimensions travel. */
export function selectionBody(selection: Selection): Record<string, unknown> {
  const body: Record<string, unknown> = {};
  if (selection.keywords.length) body.keywords = selection.keywords;
  if (selection.time_range) body.time_range = selection.time_range;
  if (selection.spatial_box) body.spatial_box = selection.spatial_box;
  if (selection.authors.length) body.authors = selection.authors;
  if (selection.sources.length) body.sources = selection.sources;
  return body;
}

export interface KeywordEntry {
  keyword: string;
  score: number;
  document_frequency: number;
  dataset_ids: string[];
}

export interface MapPoint {
  dataset_id: string;
  lat: number;
  lon: number;
  source: string;
}

export interface HistogramBin {
  bin_start: string;
  bin_end: string;
  count: number;
}

export interface CloudEntry {
  term: string;
  weight: number;
  related: { term: string; co_count: number }[];
}

export interface ChordAuthor {
  id: string;
  name: string;
}

export interface ChordPayload {
  authors: ChordAuthor[];
  matrix: number[][];
}

export interface ListRow {
  dataset_id: string;
  title: string;
  authors: string[];
  doi: string;
  source: string;
}

export interface FilterPayloads {
  cloud: CloudEntry[];
  map_points: MapPoint[];
  histogram: HistogramBin[];
  histogram_undated: number;
  chord: ChordPayload;
  list_rows: ListRow[];
}

export interface FilterSummary {
  dataset_ids: string[];
  total: number;
  per_source: Record<string, number>;
}

export interface FilterResponse {
  filter: FilterSummary;
  payloads: FilterPayloads;
}

export type HistogramBinUnit = "day" | "month" | "year";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export class VesaClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      const detail = await response.text().catch(() => "");
      throw new ApiError(response.status, detail || response.statusText);
    }
    return (await response.json()) as T;
  }

  filter(selection: Selection, bin: HistogramBinUnit = "month"): Promise<FilterResponse> {
    return this.request<FilterResponse>(`/filter?bin=${bin}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(selectionBody(selection)),
    });
  }

  async suggest(prefix: string): Promise<KeywordEntry[]> {
    const result = await this.request<{ result: KeywordEntry[] }>(
      `/keyword?prefix=${encodeURIComponent(prefix)}`,
    );
    return result.result;
  }

  async abstract(datasetId: string): Promise<string> {
    const result = await this.request<{ id: string; abstract: string }>(
      `/abstract?id=${encodeURIComponent(datasetId)}`,
    );
    return result.abstract;
  }
}
