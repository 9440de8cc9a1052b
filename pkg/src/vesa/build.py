"""End-to-end graph construction from configured sources.

Reads one document directory per source (fixtures or harvest cache), parses
per source kind, populates the graph, and runs publication mediation. The
caller decides when to freeze and dump.
"""

from __future__ import annotations

import logging
from pathlib import Path

from .config import SourceConfig
from .graph import GraphStore
from .harvest import read_document_dir
from .ingest import (
    IngestReport,
    PublicationRecord,
    ingest,
    parse_batch,
    parse_pangaea_record,
    parse_stac_collection,
    parse_publication_record,
)
from .keywords import mediate_stac_keywords

logger = logging.getLogger(__name__)


def _document_dir(source: SourceConfig, fixtures_dir, cache_dir) -> Path:
    candidates = []
    if fixtures_dir is not None:
        candidates.append(Path(fixtures_dir) / source.name)
    if cache_dir is not None:
        candidates.append(Path(cache_dir) / source.name)
    for candidate in candidates:
        if candidate.is_dir():
            return candidate
    tried = ", ".join(str(c) for c in candidates) or "(no directories given)"
    raise FileNotFoundError(f"no documents for source {source.name!r}; tried {tried}")


def build_store(
    sources: list[SourceConfig],
    fixtures_dir: str | Path | None = None,
    cache_dir: str | Path | None = None,
) -> tuple[GraphStore, IngestReport]:
    """Ingest every configured source and mediate collection keywords.

    Dataset sources ingest in configuration order, publications afterwards so
    their dataset references resolve across all sources. The returned store
    is still in the build phase.
    """
    store = GraphStore()
    report = IngestReport()
    publications: list[PublicationRecord] = []

    for source in sources:
        directory = _document_dir(source, fixtures_dir, cache_dir)
        named_docs = read_document_dir(directory)
        docs = [doc for _, doc in named_docs]
        stems = [stem for stem, _ in named_docs]
        if source.kind == "publications":
            parsed, rejections = parse_batch(docs, parse_publication_record, stems)
            publications.extend(parsed)
        else:
            if source.kind == "stac":
                organization = source.organization or "DLR_EO"
                parser = lambda raw, org=organization: parse_stac_collection(raw, org)
            else:
                organization = source.organization or "PANGAEA"
                parser = lambda raw, org=organization: parse_pangaea_record(raw, org)
            parsed, rejections = parse_batch(docs, parser, stems)
            report.merge(ingest(store, parsed, [], source.name))
        report.records_rejected += len(rejections)
        report.rejections.extend(rejections)
        logger.info(
            "source %s: %d documents, %d rejected", source.name, len(docs), len(rejections)
        )

    if publications:
        report.merge(ingest(store, [], publications, None))

    edges_before = store.edge_count
    mediated = mediate_stac_keywords(store)
    report.edges_added += store.edge_count - edges_before
    if mediated:
        logger.info("mediated %d keyword edges via publications", mediated)
    return store, report
