"""Cross-filter evaluation over the frozen graph and the derived view payloads.

A SelectionState (keywords AND time range AND spatial box AND authors AND
sources) filters the dataset collection; the matched set then derives the
five coordinated views: keyword cloud, map points, temporal histogram,
co-authorship chord matrix, and the result list. Everything here is a pure
read over a frozen store and safe for concurrent callers.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from typing import Sequence

from .errors import BuildPhaseError, UnknownAuthor, UnknownDataset, UnknownKeyword
from .graph import DATASET_KINDS, GraphStore
from .ingest import SpatialExtent, midpoint_longitude
from .keywords import (
    DEFAULT_TOKENIZER,
    KeywordScore,
    TokenizerConfig,
    compute_tfidf,
    normalize_term,
    select_cloud_keywords,
)
from .timeutil import isoformat_utc, parse_timestamp

RELATED_CAP = 10  # related terms attached per cloud entry


@dataclass(frozen=True)
class TimeRange:
    start: datetime
    end: datetime

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError("time_range start is after end")


@dataclass(frozen=True)
class SpatialBox:
    """Selection rectangle; west > east wraps across the antimeridian."""

    west: float
    south: float
    east: float
    north: float

    def __post_init__(self) -> None:
        if not (-90.0 <= self.south <= 90.0 and -90.0 <= self.north <= 90.0):
            raise ValueError("spatial_box latitude bounds out of [-90, 90]")
        if self.south > self.north:
            raise ValueError("spatial_box south is north of north")
        if not (-180.0 <= self.west <= 180.0 and -180.0 <= self.east <= 180.0):
            raise ValueError("spatial_box longitude bounds out of [-180, 180]")

    def contains(self, lat: float, lon: float) -> bool:
        if not self.south <= lat <= self.north:
            return False
        if self.west <= self.east:
            return self.west <= lon <= self.east
        return lon >= self.west or lon <= self.east

    def lon_segments(self) -> list[tuple[float, float]]:
        if self.west <= self.east:
            return [(self.west, self.east)]
        return [(self.west, 180.0), (-180.0, self.east)]


@dataclass
class SelectionState:
    """The user's current cross-filter; empty state selects everything."""

    keywords: list[str] = field(default_factory=list)
    time_range: TimeRange | None = None
    spatial_box: SpatialBox | None = None
    authors: list[str] = field(default_factory=list)
    sources: list[str] = field(default_factory=list)

    def is_empty(self) -> bool:
        return not (
            self.keywords or self.time_range or self.spatial_box or self.authors or self.sources
        )


def selection_from_json(payload: dict) -> SelectionState:
    """Validate and build a SelectionState from a request body.

    Raises ValueError on anything malformed; unknown body keys are errors so
    that client typos cannot silently widen a filter.
    """
    if not isinstance(payload, dict):
        raise ValueError("selection must be an object")
    unknown = set(payload) - {"keywords", "time_range", "spatial_box", "authors", "sources"}
    if unknown:
        raise ValueError(f"unknown selection fields: {', '.join(sorted(unknown))}")

    def string_list(name: str) -> list[str]:
        value = payload.get(name) or []
        if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
            raise ValueError(f"{name} must be a list of strings")
        return value

    time_range = None
    raw_range = payload.get("time_range")
    if raw_range is not None:
        if not isinstance(raw_range, dict) or "start" not in raw_range or "end" not in raw_range:
            raise ValueError("time_range must be an object with start and end")
        try:
            time_range = TimeRange(
                start=parse_timestamp(raw_range["start"]),
                end=parse_timestamp(raw_range["end"]),
            )
        except Exception as exc:
            raise ValueError(f"invalid time_range: {exc}") from exc

    spatial_box = None
    raw_box = payload.get("spatial_box")
    if raw_box is not None:
        if not isinstance(raw_box, dict):
            raise ValueError("spatial_box must be an object")
        try:
            spatial_box = SpatialBox(
                west=float(raw_box["west"]),
                south=float(raw_box["south"]),
                east=float(raw_box["east"]),
                north=float(raw_box["north"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"invalid spatial_box: {exc}") from exc

    return SelectionState(
        keywords=string_list("keywords"),
        time_range=time_range,
        spatial_box=spatial_box,
        authors=string_list("authors"),
        sources=string_list("sources"),
    )


@dataclass
class FilterResult:
    dataset_ids: list[str]
    total: int
    per_source: dict[str, int]


# ---- catalog: derived read indexes over a frozen store ----


class Catalog:
    """Precomputed read indexes for query evaluation and payload building."""

    def __init__(self, store: GraphStore, config: TokenizerConfig) -> None:
        self.store = store
        self.config = config
        self.dataset_ids: list[str] = []
        self.dataset_set: set[str] = set()
        self.corpus_of: dict[str, str] = {}
        self.corpus_members: dict[str, set[str]] = {}
        self.authors_of: dict[str, tuple[str, ...]] = {}
        self.author_name: dict[str, str] = {}
        self.author_datasets: dict[str, set[str]] = {}
        self.keywords_of: dict[str, tuple[str, ...]] = {}
        self.keyword_datasets: dict[str, set[str]] = {}
        self.coverage: dict[str, tuple[datetime | None, datetime | None]] = {}
        self.point: dict[str, tuple[float, float]] = {}
        self.bbox: dict[str, SpatialExtent] = {}
        self.scores: dict[str, KeywordScore] = {}
        self.wire_record: dict[str, dict] = {}
        self.list_row: dict[str, dict] = {}
        self.map_point: dict[str, dict] = {}
        self.title_rank: dict[str, int] = {}
        self._posting_sets: dict[str, frozenset[str]] = {}
        self._axes: dict[str, tuple[list[datetime], list[datetime]]] = {}
        self._axis_wire: dict[str, list[tuple[str, str]]] = {}
        self._global_cloud: dict[int, list[KeywordScore]] = {}
        self._build()

    def _build(self) -> None:
        store = self.store
        for kind in sorted(DATASET_KINDS):
            for node in store.iter_nodes(kind):
                self.dataset_ids.append(node.id)
        self.dataset_ids.sort()
        self.dataset_set = set(self.dataset_ids)

        for node in store.iter_nodes("Author"):
            self.author_name[node.id] = node.attrs["name"]
            self.author_datasets[node.id] = {
                d for d in store.neighbors(node.id, "hasAuthor", "in")
                if store.node(d).kind in DATASET_KINDS
            }
        for node in store.iter_nodes("Keyword"):
            term = node.attrs["term"]
            self.keyword_datasets[term] = {
                d for d in store.neighbors(node.id, "hasKeyword", "in")
                if store.node(d).kind in DATASET_KINDS
            }

        for dataset_id in self.dataset_ids:
            node = store.node(dataset_id)
            corpora = store.neighbors(dataset_id, "belongsToCorpus", "out")
            if corpora:
                corpus = store.node(corpora[0]).attrs["name"]
                self.corpus_of[dataset_id] = corpus
                self.corpus_members.setdefault(corpus, set()).add(dataset_id)
            self.authors_of[dataset_id] = tuple(store.neighbors(dataset_id, "hasAuthor", "out"))
            self.keywords_of[dataset_id] = tuple(
                store.node(k).attrs["term"]
                for k in store.neighbors(dataset_id, "hasKeyword", "out")
            )
            cov = store.temporal_coverage(dataset_id)
            if cov is not None:
                self.coverage[dataset_id] = cov
            location = node.attrs.get("location")
            if location:
                extent = SpatialExtent(
                    west_bound_longitude=location["west_bound_longitude"],
                    east_bound_longitude=location["east_bound_longitude"],
                    north_bound_latitude=location["north_bound_latitude"],
                    south_bound_latitude=location["south_bound_latitude"],
                    mean_latitude=location.get("mean_latitude"),
                    mean_longitude=location.get("mean_longitude"),
                )
                self.bbox[dataset_id] = extent
                self.point[dataset_id] = extent.display_point()
            self.wire_record[dataset_id] = _wire_record(node.id, node.attrs)
            self.list_row[dataset_id] = {
                "dataset_id": dataset_id,
                "title": node.attrs.get("title", ""),
                "authors": list(node.attrs.get("authors", [])),
                "doi": node.attrs.get("doi", ""),
                "source": self.corpus_of.get(dataset_id, ""),
            }
            point = self.point.get(dataset_id)
            if point is not None:
                self.map_point[dataset_id] = {
                    "dataset_id": dataset_id,
                    "lat": point[0],
                    "lon": point[1],
                    "source": self.corpus_of.get(dataset_id, ""),
                }

        by_title = sorted(self.dataset_ids, key=lambda d: (self.list_row[d]["title"], d))
        self.title_rank = {d: i for i, d in enumerate(by_title)}

        self.scores = compute_tfidf(store, self.config) if self.dataset_ids else {}

    def bin_axis(self, bin_unit: str) -> tuple[list[datetime], list[datetime]]:
        """Global-axis bin boundaries for a granularity (starts, bounds)."""
        cached = self._axes.get(bin_unit)
        if cached is not None:
            return cached
        starts = [c[0] for c in self.coverage.values() if c[0] is not None]
        ends = [c[1] for c in self.coverage.values() if c[1] is not None]
        if not starts and not ends:
            cached = ([], [])
        else:
            axis_start = min(starts) if starts else min(ends)
            axis_end = max(ends) if ends else max(starts)
            if axis_end < axis_start:
                bounds = starts + ends
                axis_start, axis_end = min(bounds), max(bounds)
            bin_starts = [_floor_bin(axis_start, bin_unit)]
            while True:
                nxt = _next_bin(bin_starts[-1], bin_unit)
                if nxt > axis_end:
                    break
                bin_starts.append(nxt)
            cached = (bin_starts, bin_starts + [_next_bin(bin_starts[-1], bin_unit)])
        self._axes[bin_unit] = cached
        return cached

    def axis_wire(self, bin_unit: str) -> list[tuple[str, str]]:
        cached = self._axis_wire.get(bin_unit)
        if cached is None:
            bin_starts, bin_bounds = self.bin_axis(bin_unit)
            cached = [
                (isoformat_utc(bin_starts[i]), isoformat_utc(bin_bounds[i + 1]))
                for i in range(len(bin_starts))
            ]
            self._axis_wire[bin_unit] = cached
        return cached

    def global_cloud(self, k: int) -> list[KeywordScore]:
        cached = self._global_cloud.get(k)
        if cached is None:
            cached = select_cloud_keywords(self.scores, k) if self.scores else []
            self._global_cloud[k] = cached
        return cached

    def posting_set(self, term: str) -> frozenset[str]:
        cached = self._posting_sets.get(term)
        if cached is None:
            score = self.scores.get(term)
            cached = frozenset(score.dataset_ids) if score else frozenset()
            self._posting_sets[term] = cached
        return cached

    def datasets_with_term(self, term: str) -> set[str]:
        """Edge-attached datasets when the term has a Keyword node, else the
        TF-IDF posting list; UnknownKeyword when neither knows the term."""
        if term in self.keyword_datasets:
            return self.keyword_datasets[term]
        if term in self.scores:
            return set(self.posting_set(term))
        raise UnknownKeyword(term)


def _wire_record(node_id: str, attrs: dict) -> dict:
    """Per-dataset response record in the public wire shape."""
    record: dict = {"id": node_id}
    location = attrs.get("location")
    if location:
        record["location_data"] = dict(location)
    if attrs.get("doi"):
        record["doi"] = attrs["doi"]
    if attrs.get("publication_date"):
        record["dataset_publication_date"] = attrs["publication_date"]
    coverage = attrs.get("temporal_coverage")
    if coverage:
        wire_coverage = {}
        if "start" in coverage:
            wire_coverage["start_date"] = coverage["start"]
        if "end" in coverage:
            wire_coverage["end_date"] = coverage["end"]
        record["temporal_coverage"] = wire_coverage
    record["authors"] = list(attrs.get("authors", []))
    record["dataset_title"] = attrs.get("title", "")
    record["organization"] = attrs.get("organization", "")
    return record


def get_catalog(store: GraphStore, config: TokenizerConfig = DEFAULT_TOKENIZER) -> Catalog:
    """Catalog for a frozen store, memoized per tokenizer config."""
    if not store.frozen:
        raise BuildPhaseError("query evaluation requires a frozen store")
    cache = getattr(store, "_catalog_cache", None)
    if cache is None:
        cache = {}
        store._catalog_cache = cache  # type: ignore[attr-defined]
    catalog = cache.get(config)
    if catalog is None:
        catalog = Catalog(store, config)
        cache[config] = catalog
    return catalog


# ---- filtering ----


def evaluate(
    store: GraphStore,
    selection: SelectionState,
    config: TokenizerConfig = DEFAULT_TOKENIZER,
    spatial_mode: str = "point",
) -> FilterResult:
    """Match datasets against every selection dimension (conjunctive).

    Keywords are conjunctive; authors and sources are disjunctive within
    their lists. Datasets missing a filtered attribute fail that filter.
    spatial_mode "point" tests the display point, "bbox" tests extent
    intersection.
    """
    if spatial_mode not in ("point", "bbox"):
        raise ValueError(f"spatial_mode must be 'point' or 'bbox', got {spatial_mode!r}")
    catalog = get_catalog(store, config)
    candidates = set(catalog.dataset_set)

    for raw_term in selection.keywords:
        candidates &= catalog.datasets_with_term(normalize_term(raw_term))

    if selection.authors:
        author_union: set[str] = set()
        for author_id in selection.authors:
            if author_id not in catalog.author_datasets:
                raise UnknownAuthor(author_id)
            author_union |= catalog.author_datasets[author_id]
        candidates &= author_union

    if selection.sources:
        source_union: set[str] = set()
        for source in selection.sources:
            source_union |= catalog.corpus_members.get(source, set())
        candidates &= source_union

    if selection.time_range is not None:
        window = selection.time_range
        candidates = {
            d
            for d in candidates
            if d in catalog.coverage
            and _intersects(catalog.coverage[d], window.start, window.end)
        }

    if selection.spatial_box is not None:
        box = selection.spatial_box
        if spatial_mode == "point":
            candidates = {
                d for d in candidates if d in catalog.point and box.contains(*catalog.point[d])
            }
        else:
            candidates = {
                d for d in candidates if d in catalog.bbox and _bbox_intersects(catalog.bbox[d], box)
            }

    dataset_ids = sorted(candidates)
    per_source = Counter(catalog.corpus_of[d] for d in dataset_ids if d in catalog.corpus_of)
    return FilterResult(
        dataset_ids=dataset_ids,
        total=len(dataset_ids),
        per_source=dict(sorted(per_source.items())),
    )


def _intersects(
    coverage: tuple[datetime | None, datetime | None], start: datetime, end: datetime
) -> bool:
    cov_start, cov_end = coverage
    return (cov_start is None or cov_start <= end) and (cov_end is None or cov_end >= start)


def _bbox_intersects(extent: SpatialExtent, box: SpatialBox) -> bool:
    if extent.south_bound_latitude > box.north or extent.north_bound_latitude < box.south:
        return False
    west, east = extent.west_bound_longitude, extent.east_bound_longitude
    extent_segments = [(west, east)] if west <= east else [(west, 180.0), (-180.0, east)]
    for seg_west, seg_east in extent_segments:
        for box_west, box_east in box.lon_segments():
            if seg_west <= box_east and seg_east >= box_west:
                return True
    return False


# ---- view payloads ----


@dataclass
class HistogramBin:
    bin_start: datetime
    bin_end: datetime
    count: int


@dataclass
class TemporalHistogram:
    bins: list[HistogramBin]
    undated: int


def _floor_bin(value: datetime, bin_unit: str) -> datetime:
    if bin_unit == "day":
        return value.replace(hour=0, minute=0, second=0, microsecond=0)
    if bin_unit == "month":
        return value.replace(day=1, hour=0, minute=0, second=0, microsecond=0)
    return value.replace(month=1, day=1, hour=0, minute=0, second=0, microsecond=0)


def _next_bin(value: datetime, bin_unit: str) -> datetime:
    if bin_unit == "day":
        return value + timedelta(days=1)
    if bin_unit == "month":
        if value.month == 12:
            return value.replace(year=value.year + 1, month=1)
        return value.replace(month=value.month + 1)
    return value.replace(year=value.year + 1)


def temporal_histogram(
    store: GraphStore,
    result: FilterResult,
    bin: str = "month",
    config: TokenizerConfig = DEFAULT_TOKENIZER,
) -> TemporalHistogram:
    """Histogram of the filtered set over the whole collection's time axis.

    The axis always spans the store-wide minimum start to maximum end so the
    overview chart stays stable while counts change. A dataset increments
    every bin its coverage intersects; undated datasets are excluded from
    the bins and reported via the undated count.
    """
    catalog = get_catalog(store, config)
    counts, undated = _histogram_counts(catalog, result, bin)
    bin_starts, bin_bounds = catalog.bin_axis(bin)
    bins = [
        HistogramBin(bin_start=bin_starts[i], bin_end=bin_bounds[i + 1], count=counts[i])
        for i in range(len(bin_starts))
    ]
    return TemporalHistogram(bins=bins, undated=undated)


def _histogram_counts(catalog: Catalog, result: FilterResult, bin: str) -> tuple[list[int], int]:
    if bin not in ("day", "month", "year"):
        raise ValueError(f"bin must be day, month or year, got {bin!r}")
    bin_starts, _bounds = catalog.bin_axis(bin)
    undated = sum(1 for d in result.dataset_ids if d not in catalog.coverage)
    if not bin_starts:
        return [], undated
    axis_start = bin_starts[0]
    axis_end = _bounds[-1]

    diff = [0] * (len(bin_starts) + 1)
    for dataset_id in result.dataset_ids:
        coverage = catalog.coverage.get(dataset_id)
        if coverage is None:
            continue
        cov_start = coverage[0] if coverage[0] is not None else axis_start
        cov_end = coverage[1] if coverage[1] is not None else axis_end
        cov_start = max(cov_start, axis_start)
        cov_end = min(cov_end, axis_end)
        if cov_end < cov_start:
            continue
        first = bisect_right(bin_starts, cov_start) - 1
        last = bisect_right(bin_starts, cov_end) - 1
        diff[first] += 1
        diff[last + 1] -= 1

    counts = []
    running = 0
    for index in range(len(bin_starts)):
        running += diff[index]
        counts.append(running)
    return counts, undated


@dataclass
class MapPoint:
    dataset_id: str
    lat: float
    lon: float
    source: str


def map_points(
    store: GraphStore, result: FilterResult, config: TokenizerConfig = DEFAULT_TOKENIZER
) -> list[MapPoint]:
    """One display point per filtered dataset that has a location."""
    catalog = get_catalog(store, config)
    return [
        MapPoint(**catalog.map_point[d])
        for d in result.dataset_ids
        if d in catalog.map_point
    ]


@dataclass
class ChordAuthor:
    id: str
    name: str


@dataclass
class ChordPayload:
    authors: list[ChordAuthor]
    matrix: list[list[int]]


def coauthor_matrix(
    store: GraphStore, result: FilterResult, config: TokenizerConfig = DEFAULT_TOKENIZER
) -> ChordPayload:
    """Pairwise co-authorship counts over the filtered datasets.

    matrix[i][j] counts datasets authored by both i and j; the diagonal is
    zero and the matrix is symmetric. Authors sort by display name.
    """
    catalog = get_catalog(store, config)
    author_ids = sorted(
        {a for d in result.dataset_ids for a in catalog.authors_of.get(d, ())},
        key=lambda a: (catalog.author_name.get(a, a), a),
    )
    index = {a: i for i, a in enumerate(author_ids)}
    matrix = [[0] * len(author_ids) for _ in author_ids]
    for dataset_id in result.dataset_ids:
        authors = catalog.authors_of.get(dataset_id, ())
        for i, first in enumerate(authors):
            for second in authors[i + 1 :]:
                a, b = index[first], index[second]
                matrix[a][b] += 1
                matrix[b][a] += 1
    return ChordPayload(
        authors=[ChordAuthor(id=a, name=catalog.author_name.get(a, a)) for a in author_ids],
        matrix=matrix,
    )


@dataclass
class RelatedEntry:
    term: str
    co_count: int


@dataclass
class CloudEntry:
    term: str
    weight: int
    related: list[RelatedEntry]


def _related_within(
    catalog: Catalog, term: str, filtered: set[str], cap: int = RELATED_CAP
) -> list[RelatedEntry]:
    try:
        carriers = catalog.datasets_with_term(term) & filtered
    except UnknownKeyword:
        return []
    counts: Counter[str] = Counter()
    for dataset_id in carriers:
        for other in catalog.keywords_of.get(dataset_id, ()):
            counts[other] += 1
    counts.pop(term, None)
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))[:cap]
    return [RelatedEntry(term=t, co_count=c) for t, c in ranked]


def keyword_cloud(
    store: GraphStore,
    result: FilterResult,
    k: int,
    selected_keywords: Sequence[str] = (),
    config: TokenizerConfig = DEFAULT_TOKENIZER,
) -> list[CloudEntry]:
    """Cloud entries for the current filter.

    Overview (nothing selected): the global top-k TF-IDF terms weighted by
    document frequency within the filtered set. With selected keywords: the
    keywords co-occurring with the whole selection inside the filtered set,
    weighted by shared-dataset count. Zero-weight terms drop out.
    """
    catalog = get_catalog(store, config)
    filtered = set(result.dataset_ids)
    selected = {normalize_term(t) for t in selected_keywords}

    entries = []
    if not selected:
        for score in catalog.global_cloud(k):
            weight = len(catalog.posting_set(score.term) & filtered)
            if weight == 0:
                continue
            entries.append(
                CloudEntry(
                    term=score.term,
                    weight=weight,
                    related=_related_within(catalog, score.term, filtered),
                )
            )
        return entries

    counts: Counter[str] = Counter()
    for dataset_id in filtered:
        for term in catalog.keywords_of.get(dataset_id, ()):
            counts[term] += 1
    for term in selected:
        counts.pop(term, None)
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))[:k]
    for term, weight in ranked:
        entries.append(
            CloudEntry(
                term=term,
                weight=weight,
                related=_related_within(catalog, term, filtered),
            )
        )
    return entries


@dataclass
class ListRow:
    dataset_id: str
    title: str
    authors: list[str]
    doi: str
    source: str


@dataclass
class ListPayload:
    rows: list[ListRow]
    abstract_for: str | None = None
    abstract: str | None = None


def dataset_list(
    store: GraphStore,
    result: FilterResult,
    abstract_for: str | None = None,
    offset: int = 0,
    limit: int | None = None,
    config: TokenizerConfig = DEFAULT_TOKENIZER,
) -> ListPayload:
    """Result rows sorted by title; optionally attach one dataset's abstract."""
    catalog = get_catalog(store, config)
    rows = [
        ListRow(**catalog.list_row[d])
        for d in sorted(result.dataset_ids, key=catalog.title_rank.__getitem__)
    ]
    if offset or limit is not None:
        end = None if limit is None else offset + limit
        rows = rows[offset:end]

    abstract = None
    if abstract_for is not None:
        if abstract_for not in catalog.dataset_set:
            raise UnknownDataset(abstract_for)
        abstract = store.node(abstract_for).attrs.get("abstract", "")
    return ListPayload(rows=rows, abstract_for=abstract_for, abstract=abstract)


# ---- wire serialization ----


def histogram_to_wire(histogram: TemporalHistogram) -> list[dict]:
    return [
        {
            "bin_start": isoformat_utc(b.bin_start),
            "bin_end": isoformat_utc(b.bin_end),
            "count": b.count,
        }
        for b in histogram.bins
    ]


def build_payloads(
    store: GraphStore,
    selection: SelectionState,
    result: FilterResult,
    k: int,
    bin: str = "month",
    config: TokenizerConfig = DEFAULT_TOKENIZER,
) -> dict:
    """All coordinated-view payloads for one selection, wire-shaped.

    Picks from wire-ready catalog rows instead of rebuilding per request;
    the latency budget at the 10k scale depends on it.
    """
    catalog = get_catalog(store, config)
    cloud = keyword_cloud(store, result, k, selection.keywords, config)
    counts, undated = _histogram_counts(catalog, result, bin)
    axis = catalog.axis_wire(bin)
    chord = coauthor_matrix(store, result, config)
    return {
        "cloud": [
            {
                "term": entry.term,
                "weight": entry.weight,
                "related": [{"term": r.term, "co_count": r.co_count} for r in entry.related],
            }
            for entry in cloud
        ],
        "map_points": [
            catalog.map_point[d] for d in result.dataset_ids if d in catalog.map_point
        ],
        "histogram": [
            {"bin_start": axis[i][0], "bin_end": axis[i][1], "count": counts[i]}
            for i in range(len(counts))
        ],
        "histogram_undated": undated,
        "chord": {
            "authors": [{"id": a.id, "name": a.name} for a in chord.authors],
            "matrix": chord.matrix,
        },
        "list_rows": [
            catalog.list_row[d]
            for d in sorted(result.dataset_ids, key=catalog.title_rank.__getitem__)
        ],
    }
