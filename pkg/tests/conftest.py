"""Shared fixtures: the demo corpus, quick store builders, a mock remote."""

from __future__ import annotations

import json
import random
import socket
import threading
from datetime import datetime, timedelta, timezone
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

import pytest

from vesa.build import build_store
from vesa.config import load_sources_config
from vesa.graph import GraphStore
from vesa.ingest import (
    AuthorRef,
    author_slug,
    NormalizedDataset,
    PublicationRecord,
    SpatialExtent,
    TemporalCoverage,
    ingest,
)
from vesa.keywords import mediate_stac_keywords
from vesa.query import SelectionState, SpatialBox, TimeRange

REPO_ROOT = Path(__file__).resolve().parents[1]
FIXTURES_DIR = REPO_ROOT / "fixtures" / "demo"
SOURCES_PATH = REPO_ROOT / "fixtures" / "sources.json"


@pytest.fixture
def golden_record() -> dict:
    return json.loads((FIXTURES_DIR / "PANGAEA" / "495977132.json").read_text())


@pytest.fixture
def demo_build():
    """(store, report) built from the shipped demo fixtures, still mutable."""
    sources = load_sources_config(SOURCES_PATH)
    return build_store(sources, fixtures_dir=FIXTURES_DIR)


@pytest.fixture
def demo_store(demo_build) -> GraphStore:
    store, _ = demo_build
    store.freeze()
    return store


def utc(year, month=1, day=1, hour=0, minute=0, second=0) -> datetime:
    return datetime(year, month, day, hour, minute, second, tzinfo=timezone.utc)


def make_dataset(
    key: str,
    title: str = "",
    *,
    organization: str = "PANGAEA",
    node_kind: str = "Dataset",
    abstract: str = "",
    doi: str = "",
    keywords: list[str] | None = None,
    authors: list[str] | None = None,
    start: datetime | None = None,
    end: datetime | None = None,
    bbox: tuple[float, float, float, float] | None = None,
    mean: tuple[float, float] | None = None,
    mission: str | None = None,
) -> NormalizedDataset:
    """Terse builder for synthetic datasets (bbox order: west, south, east, north)."""
    coverage = None
    if start is not None or end is not None:
        coverage = TemporalCoverage(start=start, end=end)
    location = None
    if bbox is not None:
        west, south, east, north = bbox
        location = SpatialExtent(
            west_bound_longitude=west,
            east_bound_longitude=east,
            north_bound_latitude=north,
            south_bound_latitude=south,
            mean_latitude=mean[0] if mean else None,
            mean_longitude=mean[1] if mean else None,
        )
    return NormalizedDataset(
        source_key=key,
        organization=organization,
        title=title or f"Dataset {key}",
        abstract=abstract,
        doi=doi,
        temporal_coverage=coverage,
        location=location,
        authors=[AuthorRef(name=n) for n in (authors or [])],
        keywords=list(keywords or []),
        node_kind=node_kind,
        mission=mission if node_kind == "STACCollection" else None,
    )


def quick_store(
    datasets: list[NormalizedDataset],
    publications: list[PublicationRecord] | None = None,
    corpus: str = "PANGAEA",
    mediate: bool = False,
    freeze: bool = True,
) -> GraphStore:
    """One-corpus store from prepared records; optionally mediate and freeze."""
    store = GraphStore()
    ingest(store, datasets, publications or [], corpus)
    if mediate:
        mediate_stac_keywords(store)
    if freeze:
        store.freeze()
    return store


# ---- mock remote repositories ----

COLLECTIONS = [
    {"id": f"C{i:02d}", "title": f"Collection {i}", "extent": {}} for i in range(12)
]
PANGAEA_RESULTS = [{"id": str(i), "dataset_title": f"Record {i}"} for i in range(9)]
STAC_PAGE_SIZE = 5
PANGAEA_PAGE_SIZE = 4


class MockRepositoryHandler(BaseHTTPRequestHandler):
    def log_message(self, *args):  # keep test output quiet
        pass

    def do_GET(self):
        parsed = urlparse(self.path)
        params = parse_qs(parsed.query)
        if parsed.path == "/stac":
            page = int(params.get("page", ["1"])[0])
            start = (page - 1) * STAC_PAGE_SIZE
            chunk = COLLECTIONS[start : start + STAC_PAGE_SIZE]
            body = {"collections": chunk, "links": []}
            if start + STAC_PAGE_SIZE < len(COLLECTIONS):
                base = f"http://{self.headers['Host']}/stac?page={page + 1}"
                body["links"] = [{"rel": "next", "href": base}]
            self._json(body)
        elif parsed.path == "/pangaea":
            offset = int(params.get("offset", ["0"])[0])
            chunk = PANGAEA_RESULTS[offset : offset + PANGAEA_PAGE_SIZE]
            self._json({"results": chunk, "total": len(PANGAEA_RESULTS)})
        elif parsed.path == "/html":
            self.send_response(200)
            self.send_header("Content-Type", "text/html")
            self.end_headers()
            self.wfile.write(b"<html>not json</html>")
        elif parsed.path == "/badshape":
            self._json({"unexpected": True})
        else:
            self.send_response(404)
            self.end_headers()

    def _json(self, payload):
        body = json.dumps(payload).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.end_headers()
        self.wfile.write(body)


@pytest.fixture(scope="session")
def mock_server():
    server = ThreadingHTTPServer(("127.0.0.1", 0), MockRepositoryHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_port}"
    server.shutdown()


@pytest.fixture
def closed_port_url():
    probe = socket.socket()
    probe.bind(("127.0.0.1", 0))
    port = probe.getsockname()[1]
    probe.close()
    return f"http://127.0.0.1:{port}"


# ---- synthetic corpus with a hand-trackable definition ----

KEYWORD_POOL = ["temperature", "climate", "precipitation", "ocean", "ice", "radar"]
AUTHOR_POOL = ["Anna Smith", "Ben Larsen", "Clara Vogel", "Daniel Opitz", "Emma Fischer"]


def synthetic_records(n: int, seed: int):
    """Random dataset definitions over two corpora; returns (records, corpus_of)."""
    rng = random.Random(seed)
    records = []
    corpus_of = {}
    for i in range(n):
        corpus = "PANGAEA" if rng.random() < 0.6 else "DLR_EO"
        node_kind = "Dataset" if corpus == "PANGAEA" else "STACCollection"
        key = f"s{i:04d}"
        start_year = rng.randint(1970, 2015)
        span = rng.randint(0, 12)
        has_time = rng.random() < 0.85
        has_location = rng.random() < 0.8
        west = rng.uniform(-170, 150)
        south = rng.uniform(-80, 60)
        record = make_dataset(
            key,
            title=f"Series {i} measurements",
            organization=corpus,
            node_kind=node_kind,
            keywords=rng.sample(KEYWORD_POOL, k=rng.randint(0, 3)),
            authors=rng.sample(AUTHOR_POOL, k=rng.randint(0, 2)),
            start=utc(start_year) if has_time else None,
            end=utc(start_year + span, 12, 31) if has_time else None,
            bbox=(west, south, west + rng.uniform(1, 25), south + rng.uniform(1, 20))
            if has_location
            else None,
        )
        records.append(record)
        corpus_of[f"{node_kind}/{key}"] = corpus
    return records, corpus_of


def synthetic_store(records) -> GraphStore:
    store = GraphStore()
    pangaea = [r for r in records if r.organization == "PANGAEA"]
    dlr = [r for r in records if r.organization == "DLR_EO"]
    ingest(store, pangaea, [], "PANGAEA")
    ingest(store, dlr, [], "DLR_EO")
    store.freeze()
    return store


def naive_filter(records, corpus_of, selection: SelectionState) -> list[str]:
    """Linear scan over the fixture definitions, independent of the graph."""
    matches = []
    for record in records:
        dataset_id = f"{record.node_kind}/{record.source_key}"
        if any(term not in record.keywords for term in selection.keywords):
            continue
        if selection.authors:
            ids = {f"Author/{author_slug(a.name)}" for a in record.authors}
            if not ids & set(selection.authors):
                continue
        if selection.sources and corpus_of[dataset_id] not in selection.sources:
            continue
        if selection.time_range is not None:
            coverage = record.temporal_coverage
            if coverage is None:
                continue
            if coverage.start is not None and coverage.start > selection.time_range.end:
                continue
            if coverage.end is not None and coverage.end < selection.time_range.start:
                continue
        if selection.spatial_box is not None:
            if record.location is None:
                continue
            loc = record.location
            lat = (loc.south_bound_latitude + loc.north_bound_latitude) / 2
            west, east = loc.west_bound_longitude, loc.east_bound_longitude
            lon = (west + east) / 2 if west <= east else ((west + east + 360) / 2)
            if lon > 180:
                lon -= 360
            box = selection.spatial_box
            if not box.south <= lat <= box.north:
                continue
            if box.west <= box.east:
                if not box.west <= lon <= box.east:
                    continue
            elif not (lon >= box.west or lon <= box.east):
                continue
        matches.append(dataset_id)
    return sorted(matches)


def random_selection(rng: random.Random) -> SelectionState:
    selection = SelectionState()
    if rng.random() < 0.5:
        selection.keywords = rng.sample(KEYWORD_POOL, k=rng.randint(1, 2))
    if rng.random() < 0.5:
        start = utc(rng.randint(1970, 2010))
        selection.time_range = TimeRange(start, start + timedelta(days=rng.randint(30, 8000)))
    if rng.random() < 0.5:
        west = rng.uniform(-180, 170)
        south = rng.uniform(-85, 60)
        selection.spatial_box = SpatialBox(
            west=west,
            south=south,
            east=min(west + rng.uniform(5, 120), 180.0),
            north=min(south + rng.uniform(5, 60), 90.0),
        )
    if rng.random() < 0.3:
        selection.authors = [
            f"Author/{author_slug(a)}" for a in rng.sample(AUTHOR_POOL, k=rng.randint(1, 2))
        ]
    if rng.random() < 0.3:
        selection.sources = rng.sample(["PANGAEA", "DLR_EO"], k=rng.randint(1, 2))
    return selection


@pytest.hookimpl(tryfirst=True, hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # expose the call-phase report so the acceptance module can print
    # one PASS/FAIL line per criterion
    outcome = yield
    report = outcome.get_result()
    setattr(item, "rep_" + report.when, report)
