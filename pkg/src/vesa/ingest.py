"""Source metadata normalization and graph population.

Heterogeneous repository records (PANGAEA-style dataset records, STAC
collections, publication records) parse into one common schema and then
populate the graph: corpus, dataset, author, keyword and publication nodes
plus their relation edges. Bad records are rejected and reported; a batch
never aborts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Callable, Iterable

from .errors import FieldError, ParseError
from .graph import GraphStore
from .keywords import normalize_term
from .timeutil import isoformat_utc, parse_timestamp

_WS_RE = re.compile(r"\s+")

_PANGAEA_KNOWN_FIELDS = {
    "id",
    "source_key",
    "dataset_title",
    "title",
    "organization",
    "abstract",
    "doi",
    "dataset_publication_date",
    "temporal_coverage",
    "location_data",
    "authors",
    "keywords",
}


@dataclass
class SpatialExtent:
    west_bound_longitude: float
    east_bound_longitude: float
    north_bound_latitude: float
    south_bound_latitude: float
    mean_latitude: float | None = None
    mean_longitude: float | None = None

    def __post_init__(self) -> None:
        for name in ("west_bound_longitude", "east_bound_longitude"):
            if not -180.0 <= getattr(self, name) <= 180.0:
                raise FieldError(f"{name} out of [-180, 180]")
        for name in ("north_bound_latitude", "south_bound_latitude"):
            if not -90.0 <= getattr(self, name) <= 90.0:
                raise FieldError(f"{name} out of [-90, 90]")
        if self.south_bound_latitude > self.north_bound_latitude:
            raise FieldError("south bound is north of the north bound")

    def display_point(self) -> tuple[float, float]:
        """(lat, lon) to plot: source-provided means, else the bbox midpoint."""
        lat = self.mean_latitude
        if lat is None:
            lat = (self.south_bound_latitude + self.north_bound_latitude) / 2.0
        lon = self.mean_longitude
        if lon is None:
            lon = midpoint_longitude(self.west_bound_longitude, self.east_bound_longitude)
        return lat, lon

    def as_attrs(self) -> dict:
        attrs = {
            "west_bound_longitude": self.west_bound_longitude,
            "east_bound_longitude": self.east_bound_longitude,
            "north_bound_latitude": self.north_bound_latitude,
            "south_bound_latitude": self.south_bound_latitude,
        }
        if self.mean_latitude is not None:
            attrs["mean_latitude"] = self.mean_latitude
        if self.mean_longitude is not None:
            attrs["mean_longitude"] = self.mean_longitude
        return attrs


def midpoint_longitude(west: float, east: float) -> float:
    """Midpoint of the west->east arc; west > east wraps the antimeridian."""
    if west <= east:
        return (west + east) / 2.0
    mid = (west + east + 360.0) / 2.0
    if mid > 180.0:
        mid -= 360.0
    return mid


@dataclass
class TemporalCoverage:
    start: datetime | None = None
    end: datetime | None = None
    start_text: str | None = None
    end_text: str | None = None

    def __post_init__(self) -> None:
        if self.start is None and self.end is None:
            raise FieldError("temporal coverage needs at least one bound")
        if self.start is not None and self.end is not None and self.start > self.end:
            raise FieldError("temporal coverage start is after end")
        if self.start is not None and self.start_text is None:
            self.start_text = isoformat_utc(self.start)
        if self.end is not None and self.end_text is None:
            self.end_text = isoformat_utc(self.end)

    def as_attrs(self) -> dict:
        attrs = {}
        if self.start is not None:
            attrs["start"] = self.start_text
        if self.end is not None:
            attrs["end"] = self.end_text
        return attrs


@dataclass
class AuthorRef:
    name: str
    organization: str = ""


@dataclass
class NormalizedDataset:
    """The common schema every source parses into."""

    source_key: str
    organization: str
    title: str
    abstract: str = ""
    doi: str = ""
    publication_date: datetime | None = None
    publication_date_text: str | None = None
    temporal_coverage: TemporalCoverage | None = None
    location: SpatialExtent | None = None
    authors: list[AuthorRef] = field(default_factory=list)
    keywords: list[str] = field(default_factory=list)
    node_kind: str = "Dataset"
    mission: str | None = None
    extra: dict = field(default_factory=dict)

    def node_attrs(self) -> dict:
        attrs: dict[str, Any] = {}
        for key, value in self.extra.items():
            attrs[key] = value
        attrs["source_key"] = self.source_key
        attrs["title"] = self.title
        attrs["organization"] = self.organization
        attrs["abstract"] = self.abstract
        attrs["doi"] = self.doi
        if self.publication_date is not None:
            attrs["publication_date"] = self.publication_date_text
        if self.temporal_coverage is not None:
            attrs["temporal_coverage"] = self.temporal_coverage.as_attrs()
        if self.location is not None:
            attrs["location"] = self.location.as_attrs()
        attrs["authors"] = [a.name for a in self.authors]
        attrs["keywords"] = list(self.keywords)
        if self.mission is not None:
            attrs["mission"] = self.mission
        return attrs


@dataclass
class PublicationRecord:
    source_key: str
    title: str
    doi: str = ""
    keywords: list[str] = field(default_factory=list)
    mission_mentions: list[str] = field(default_factory=list)
    related_dataset_keys: list[str] = field(default_factory=list)


@dataclass
class Rejection:
    source_key: str
    reason: str


@dataclass
class IngestReport:
    datasets_added: int = 0
    collections_added: int = 0
    publications_added: int = 0
    authors_added: int = 0
    keywords_added: int = 0
    corpora_added: int = 0
    edges_added: int = 0
    records_rejected: int = 0
    rejections: list[Rejection] = field(default_factory=list)

    def merge(self, other: "IngestReport") -> None:
        self.datasets_added += other.datasets_added
        self.collections_added += other.collections_added
        self.publications_added += other.publications_added
        self.authors_added += other.authors_added
        self.keywords_added += other.keywords_added
        self.corpora_added += other.corpora_added
        self.edges_added += other.edges_added
        self.records_rejected += other.records_rejected
        self.rejections.extend(other.rejections)

    def summary_lines(self) -> list[str]:
        lines = [
            f"datasets added:      {self.datasets_added}",
            f"collections added:   {self.collections_added}",
            f"publications added:  {self.publications_added}",
            f"authors added:       {self.authors_added}",
            f"keywords added:      {self.keywords_added}",
            f"edges added:         {self.edges_added}",
            f"records rejected:    {self.records_rejected}",
        ]
        for rejection in self.rejections:
            lines.append(f"  rejected {rejection.source_key}: {rejection.reason}")
        return lines


# ---- field helpers ----


def display_name(name: str) -> str:
    """Trim and collapse internal whitespace, preserving case."""
    return _WS_RE.sub(" ", name).strip()


def author_slug(name: str) -> str:
    """Node key for an author: lowercased collapsed name, spaces to hyphens."""
    return display_name(name).lower().replace(" ", "-").replace("/", "-")


def _source_key(raw: dict, *prefixes: str) -> str:
    key = raw.get("source_key") or raw.get("id")
    if not isinstance(key, str) or not key.strip():
        raise FieldError("missing source key / id")
    key = key.strip()
    for prefix in prefixes:
        if key.startswith(prefix + "/"):
            key = key[len(prefix) + 1 :]
    if not key or "/" in key:
        raise FieldError(f"invalid source key {key!r}")
    return key


def _string_field(raw: dict, name: str, default: str = "") -> str:
    value = raw.get(name, default)
    if value is None:
        return default
    if not isinstance(value, str):
        raise FieldError(f"{name} must be a string")
    return value


def _float_field(record: dict, name: str, context: str) -> float:
    value = record.get(name)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise FieldError(f"{context}.{name} must be a number")
    return float(value)


def _optional_float(record: dict, name: str, context: str) -> float | None:
    if record.get(name) is None:
        return None
    return _float_field(record, name, context)


def _keyword_list(raw: Any, name: str = "keywords") -> list[str]:
    if raw is None:
        return []
    if not isinstance(raw, list) or any(not isinstance(v, str) for v in raw):
        raise FieldError(f"{name} must be a list of strings")
    seen = []
    for term in (normalize_term(v) for v in raw):
        if term and term not in seen:
            seen.append(term)
    return seen


def _parse_authors(raw: Any) -> list[AuthorRef]:
    if raw is None:
        return []
    if not isinstance(raw, list):
        raise FieldError("authors must be a list")
    authors = []
    seen = set()
    for entry in raw:
        if isinstance(entry, str):
            name, organization = entry, ""
        elif isinstance(entry, dict):
            name = entry.get("name", "")
            organization = entry.get("organization", "") or ""
            if not isinstance(name, str) or not isinstance(organization, str):
                raise FieldError("author name/organization must be strings")
        else:
            raise FieldError(f"unsupported author entry {entry!r}")
        name = display_name(name)
        if not name:
            raise FieldError("author name must be non-empty")
        slug = author_slug(name)
        if slug not in seen:
            seen.add(slug)
            authors.append(AuthorRef(name=name, organization=organization))
    return authors


def _parse_temporal(raw: Any, start_field: str = "start_date", end_field: str = "end_date") -> TemporalCoverage | None:
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise FieldError("temporal_coverage must be an object")
    start_text = raw.get(start_field)
    end_text = raw.get(end_field)
    if start_text is None and end_text is None:
        return None
    return TemporalCoverage(
        start=parse_timestamp(start_text) if start_text is not None else None,
        end=parse_timestamp(end_text) if end_text is not None else None,
        start_text=start_text,
        end_text=end_text,
    )


# ---- parsers ----


def parse_pangaea_record(raw: Any, organization: str | None = None) -> NormalizedDataset:
    """Parse one PANGAEA-style dataset record into the common schema.

    Missing optional fields map to absent values, never sentinels. Field
    violations (reversed intervals, out-of-range coordinates) raise
    FieldError so the batch layer can reject and continue.
    """
    if not isinstance(raw, dict):
        raise ParseError(f"record must be an object, got {type(raw).__name__}")
    source_key = _source_key(raw, "Dataset")
    title = display_name(_string_field(raw, "dataset_title") or _string_field(raw, "title"))
    if not title:
        raise FieldError("missing dataset_title")

    location = None
    location_raw = raw.get("location_data")
    if location_raw is not None:
        if not isinstance(location_raw, dict):
            raise FieldError("location_data must be an object")
        location = SpatialExtent(
            west_bound_longitude=_float_field(location_raw, "west_bound_longitude", "location_data"),
            east_bound_longitude=_float_field(location_raw, "east_bound_longitude", "location_data"),
            north_bound_latitude=_float_field(location_raw, "north_bound_latitude", "location_data"),
            south_bound_latitude=_float_field(location_raw, "south_bound_latitude", "location_data"),
            mean_latitude=_optional_float(location_raw, "mean_latitude", "location_data"),
            mean_longitude=_optional_float(location_raw, "mean_longitude", "location_data"),
        )

    publication_date = None
    publication_date_text = raw.get("dataset_publication_date")
    if publication_date_text is not None:
        publication_date = parse_timestamp(publication_date_text)

    return NormalizedDataset(
        source_key=source_key,
        organization=_string_field(raw, "organization") or organization or "PANGAEA",
        title=title,
        abstract=_string_field(raw, "abstract"),
        doi=_string_field(raw, "doi"),
        publication_date=publication_date,
        publication_date_text=publication_date_text,
        temporal_coverage=_parse_temporal(raw.get("temporal_coverage")),
        location=location,
        authors=_parse_authors(raw.get("authors")),
        keywords=_keyword_list(raw.get("keywords")),
        node_kind="Dataset",
        extra={k: v for k, v in raw.items() if k not in _PANGAEA_KNOWN_FIELDS},
    )


def parse_stac_collection(raw: Any, organization: str = "DLR_EO") -> NormalizedDataset:
    """Parse a STAC Collection document into the common schema.

    bbox order is west, south, east, north (plus elevation in 6-element
    form); open temporal interval ends map to absent bounds; providers map
    to authors with their roles ignored.
    """
    if not isinstance(raw, dict):
        raise ParseError(f"collection must be an object, got {type(raw).__name__}")
    source_key = _source_key(raw, "STACCollection")
    title = display_name(_string_field(raw, "title")) or source_key

    extent = raw.get("extent") or {}
    if not isinstance(extent, dict):
        raise FieldError("extent must be an object")

    location = None
    bboxes = (extent.get("spatial") or {}).get("bbox") if isinstance(extent.get("spatial"), dict) else None
    if bboxes:
        if not isinstance(bboxes, list) or not isinstance(bboxes[0], list):
            raise FieldError("extent.spatial.bbox must be a list of bboxes")
        bbox = bboxes[0]
        if len(bbox) == 6:
            bbox = [bbox[0], bbox[1], bbox[3], bbox[4]]
        if len(bbox) != 4:
            raise FieldError(f"bbox must have 4 or 6 elements, got {len(bbox)}")
        if any(not isinstance(v, (int, float)) or isinstance(v, bool) for v in bbox):
            raise FieldError("bbox values must be numbers")
        west, south, east, north = (float(v) for v in bbox)
        location = SpatialExtent(
            west_bound_longitude=west,
            east_bound_longitude=east,
            north_bound_latitude=north,
            south_bound_latitude=south,
        )

    coverage = None
    intervals = (extent.get("temporal") or {}).get("interval") if isinstance(extent.get("temporal"), dict) else None
    if intervals:
        if not isinstance(intervals, list) or not isinstance(intervals[0], list) or len(intervals[0]) != 2:
            raise FieldError("extent.temporal.interval must be a list of [start, end] pairs")
        start_text, end_text = intervals[0]
        if start_text is not None or end_text is not None:
            coverage = TemporalCoverage(
                start=parse_timestamp(start_text) if start_text is not None else None,
                end=parse_timestamp(end_text) if end_text is not None else None,
                start_text=start_text,
                end_text=end_text,
            )

    providers = raw.get("providers")
    authors = []
    if providers is not None:
        if not isinstance(providers, list):
            raise FieldError("providers must be a list")
        authors = _parse_authors(
            [p.get("name", "") if isinstance(p, dict) else p for p in providers]
        )

    mission = raw.get("mission")
    if mission is None:
        summaries = raw.get("summaries")
        if isinstance(summaries, dict):
            candidates = summaries.get("mission")
            if isinstance(candidates, list) and candidates:
                mission = candidates[0]
    if mission is not None and not isinstance(mission, str):
        raise FieldError("mission must be a string")

    return NormalizedDataset(
        source_key=source_key,
        organization=organization,
        title=title,
        abstract=_string_field(raw, "description"),
        doi=_string_field(raw, "sci:doi"),
        temporal_coverage=coverage,
        location=location,
        authors=authors,
        keywords=_keyword_list(raw.get("keywords")),
        node_kind="STACCollection",
        mission=mission or source_key,
    )


def parse_publication_record(raw: Any) -> PublicationRecord:
    """Parse a publication record; keywords and mission mentions normalize
    to lowercased, trimmed terms."""
    if not isinstance(raw, dict):
        raise ParseError(f"publication must be an object, got {type(raw).__name__}")
    source_key = _source_key(raw, "Publication")
    title = display_name(_string_field(raw, "title"))
    if not title:
        raise FieldError("missing publication title")
    related = raw.get("related_dataset_keys") or []
    if not isinstance(related, list) or any(not isinstance(v, str) for v in related):
        raise FieldError("related_dataset_keys must be a list of strings")
    related_keys = []
    for value in related:
        key = value.strip()
        if key.startswith("Dataset/"):
            key = key[len("Dataset/") :]
        if key and key not in related_keys:
            related_keys.append(key)
    return PublicationRecord(
        source_key=source_key,
        title=title,
        doi=_string_field(raw, "doi"),
        keywords=_keyword_list(raw.get("keywords")),
        mission_mentions=_keyword_list(raw.get("mission_mentions"), "mission_mentions"),
        related_dataset_keys=related_keys,
    )


def parse_batch(
    raws: Iterable[Any],
    parser: Callable[[Any], Any],
    fallback_keys: Iterable[str] | None = None,
) -> tuple[list, list[Rejection]]:
    """Run a parser over a batch; failures become rejections, never aborts."""
    accepted = []
    rejections = []
    keys = list(fallback_keys) if fallback_keys is not None else None
    for index, raw in enumerate(raws):
        try:
            accepted.append(parser(raw))
        except (ParseError, FieldError) as exc:
            key = None
            if isinstance(raw, dict):
                candidate = raw.get("source_key") or raw.get("id")
                if isinstance(candidate, str) and candidate.strip():
                    key = candidate.strip()
            if key is None and keys is not None and index < len(keys):
                key = keys[index]
            rejections.append(Rejection(source_key=key or f"record-{index}", reason=str(exc)))
    return accepted, rejections


# ---- graph population ----


def ingest(
    store: GraphStore,
    datasets: list[NormalizedDataset],
    publications: list[PublicationRecord],
    corpus_name: str | None,
) -> IngestReport:
    """Populate the graph from parsed records.

    One Corpus node per corpus_name; dataset and collection nodes link to it
    via belongsToCorpus. Author and Keyword nodes deduplicate globally;
    relation edges carry provenance "direct". Re-ingesting the same input is
    a no-op keyed by source_key. corpus_name may be None only for a
    publications-only call.
    """
    if datasets and corpus_name is None:
        raise ValueError("corpus_name is required when ingesting datasets")
    report = IngestReport()

    corpus_id = None
    if corpus_name is not None:
        corpus_id = f"Corpus/{corpus_name}"
        if not store.has_node(corpus_id):
            corpus_id = store.add_node("Corpus", corpus_name, {"name": corpus_name})
            report.corpora_added += 1

    edges_before = store.edge_count

    def ensure_author(ref: AuthorRef) -> str:
        author_id = f"Author/{author_slug(ref.name)}"
        if not store.has_node(author_id):
            attrs = {"name": ref.name}
            if ref.organization:
                attrs["organization"] = ref.organization
            store.add_node("Author", author_slug(ref.name), attrs)
            report.authors_added += 1
        return author_id

    def ensure_keyword(term: str) -> str:
        keyword_id = store.keyword_node(term)
        if keyword_id is None:
            keyword_id = store.add_node("Keyword", term, {"term": term})
            report.keywords_added += 1
        return keyword_id

    for dataset in datasets:
        node_id = f"{dataset.node_kind}/{dataset.source_key}"
        if store.has_node(node_id):
            continue
        store.add_node(dataset.node_kind, dataset.source_key, dataset.node_attrs())
        if dataset.node_kind == "STACCollection":
            report.collections_added += 1
        else:
            report.datasets_added += 1
        store.add_edge("belongsToCorpus", node_id, corpus_id)
        for ref in dataset.authors:
            store.add_edge("hasAuthor", node_id, ensure_author(ref))
        for term in dataset.keywords:
            store.add_edge("hasKeyword", node_id, ensure_keyword(term), {"provenance": "direct"})

    for publication in publications:
        pub_id = f"Publication/{publication.source_key}"
        if store.has_node(pub_id):
            continue
        attrs = {
            "title": publication.title,
            "doi": publication.doi,
            "keywords": list(publication.keywords),
            "mission_mentions": list(publication.mission_mentions),
            "related_dataset_keys": list(publication.related_dataset_keys),
        }
        store.add_node("Publication", publication.source_key, attrs)
        report.publications_added += 1
        for term in publication.keywords:
            store.add_edge("hasKeyword", pub_id, ensure_keyword(term), {"provenance": "direct"})
        for key in publication.related_dataset_keys:
            dataset_id = f"Dataset/{key}"
            if store.has_node(dataset_id):
                store.add_edge("hasPublication", dataset_id, pub_id)

    report.edges_added = store.edge_count - edges_before
    return report
