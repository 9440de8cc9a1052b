"""Operator CLI: build a graph dump from sources, harvest remote metadata,
and serve the search API.

Exit codes: 0 success, 2 configuration error, 3 parse failures beyond the
accepted threshold, 4 I/O or network error.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path

import click

from . import build as build_mod
from . import graph as graph_mod
from .config import (
    DEFAULT_STAC_ENDPOINT,
    ServiceConfig,
    effective_port,
    load_service_config,
    load_sources_config,
)
from .errors import ConfigError, CorruptDump, EmptyStore, NetworkError, RemoteFormatError
from .harvest import harvest_remote
from .keywords import compute_tfidf, link_common_keywords

EXIT_CONFIG = 2
EXIT_PARSE = 3
EXIT_IO = 4


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Enable debug logging.")
def main(verbose: bool) -> None:
    """Knowledge-graph dataset discovery: build, harvest, serve."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


@main.command()
@click.option("--sources", "sources_path", required=True, type=click.Path(), help="Sources config JSON.")
@click.option("--fixtures", "fixtures_dir", type=click.Path(), help="Fixture directory (one subdir per source).")
@click.option("--cache", "cache_dir", type=click.Path(), help="Harvest cache directory fallback.")
@click.option("--out", "out_path", required=True, type=click.Path(), help="Graph dump output path.")
@click.option("--max-reject", default=0.2, show_default=True, help="Accepted fraction of rejected records.")
def build(sources_path, fixtures_dir, cache_dir, out_path, max_reject) -> None:
    """Build the knowledge graph dump from configured sources."""
    try:
        sources = load_sources_config(sources_path)
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))
    if fixtures_dir is None and cache_dir is None:
        _fail(EXIT_CONFIG, "one of --fixtures or --cache is required")

    try:
        store, report = build_mod.build_store(sources, fixtures_dir, cache_dir)
    except FileNotFoundError as exc:
        _fail(EXIT_IO, str(exc))
    except OSError as exc:
        _fail(EXIT_IO, str(exc))

    for line in report.summary_lines():
        click.echo(line)

    total_records = (
        report.datasets_added
        + report.collections_added
        + report.publications_added
        + report.records_rejected
    )
    if total_records and report.records_rejected / total_records > max_reject:
        _fail(
            EXIT_PARSE,
            f"{report.records_rejected}/{total_records} records rejected "
            f"(threshold {max_reject})",
        )

    try:
        scores = compute_tfidf(store)
        click.echo(f"vocabulary terms:    {len(scores)}")
    except EmptyStore:
        click.echo("vocabulary terms:    0")
    shared = link_common_keywords(store)
    click.echo(f"shared keywords:     {len(shared)}")

    store.freeze()
    try:
        graph_mod.dump(store, out_path)
    except OSError as exc:
        _fail(EXIT_IO, f"cannot write dump {out_path}: {exc}")
    click.echo(f"wrote {out_path}")


@main.command()
@click.option("--sources", "sources_path", required=True, type=click.Path(), help="Sources config JSON.")
@click.option("--cache", "cache_dir", required=True, type=click.Path(), help="Cache directory to fill.")
def harvest(sources_path, cache_dir) -> None:
    """Fetch raw metadata from remote endpoints into the cache."""
    try:
        sources = load_sources_config(sources_path)
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))
    remote_sources = [s for s in sources if s.kind in ("pangaea", "stac")]
    if not remote_sources:
        _fail(EXIT_CONFIG, "no harvestable (pangaea/stac) sources configured")
    for source in remote_sources:
        endpoint = source.endpoint
        if not endpoint and source.kind == "stac":
            endpoint = DEFAULT_STAC_ENDPOINT
        if not endpoint:
            _fail(EXIT_CONFIG, f"source {source.name}: endpoint is required for harvest")
        try:
            docs = harvest_remote(
                endpoint,
                source.kind,
                source.limit,
                cache_dir=Path(cache_dir) / source.name,
            )
        except (NetworkError, RemoteFormatError, OSError) as exc:
            _fail(EXIT_IO, f"source {source.name}: {exc}")
        click.echo(f"{source.name}: {len(docs)} documents cached")


@main.command()
@click.option("--graph", "graph_path", type=click.Path(), help="Graph dump to serve (overrides config).")
@click.option("--config", "config_path", type=click.Path(), help="Service config JSON.")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=None, help="Override the configured port.")
def serve(graph_path, config_path, host, port) -> None:
    """Serve the search API over a frozen graph dump."""
    try:
        config = load_service_config(config_path) if config_path else ServiceConfig()
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))

    dump_path = graph_path or config.graph
    if not dump_path:
        _fail(EXIT_CONFIG, "a graph dump is required (--graph or config graph path)")
    if not Path(dump_path).is_file():
        _fail(EXIT_IO, f"graph dump not found: {dump_path}")
    try:
        store = graph_mod.load(dump_path)
    except CorruptDump as exc:
        _fail(EXIT_IO, f"cannot load {dump_path}: {exc}")

    try:
        bind_port = port if port is not None else effective_port(config)
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))

    from .server import ServerState, create_app

    state = ServerState.build(store, config)
    app = create_app(state)
    click.echo(f"serving {dump_path} on http://{host}:{bind_port}")

    import uvicorn

    uvicorn.run(app, host=host, port=bind_port, log_level="warning")


if __name__ == "__main__":
    main()
