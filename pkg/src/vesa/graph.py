"""Embedded typed property graph: the central data model.

Nodes and edges are held in process with adjacency and secondary indexes
kept incrementally consistent. The store has two phases: a single-writer
build phase and, after freeze(), an immutable serving phase that is safe
for concurrent readers. Persistence is a deterministic JSON Lines dump.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Iterator

from .errors import (
    BuildPhaseError,
    CorruptDump,
    DuplicateNode,
    IllegalEndpointKind,
    MissingEndpoint,
    MissingNode,
    NodeInUse,
)
from .schema import validate_node_attrs
from .timeutil import parse_timestamp

NODE_KINDS = frozenset(
    {"Corpus", "Dataset", "STACCollection", "Author", "Keyword", "Publication"}
)

DATASET_KINDS = frozenset({"Dataset", "STACCollection"})

# Allowed (source kinds, target kinds) per edge kind.
EDGE_ENDPOINT_KINDS = {
    "belongsToCorpus": (frozenset({"Dataset", "STACCollection"}), frozenset({"Corpus"})),
    "hasAuthor": (frozenset({"Dataset", "STACCollection", "Publication"}), frozenset({"Author"})),
    "hasKeyword": (frozenset({"Dataset", "STACCollection", "Publication"}), frozenset({"Keyword"})),
    "hasPublication": (frozenset({"Dataset"}), frozenset({"Publication"})),
    "mentionsMission": (frozenset({"Publication"}), frozenset({"STACCollection"})),
}

EDGE_KINDS = frozenset(EDGE_ENDPOINT_KINDS)

DUMP_FORMAT = "vesa-graph"
DUMP_VERSION = 1


def make_node_id(kind: str, key: str) -> str:
    if kind not in NODE_KINDS:
        raise ValueError(f"unknown node kind {kind!r}")
    if not key or "/" in key:
        raise ValueError(f"invalid node key {key!r}")
    return f"{kind}/{key}"


def split_node_id(node_id: str) -> tuple[str, str]:
    """Split "<Collection>/<key>" and validate both segments."""
    kind, sep, key = node_id.partition("/")
    if not sep or kind not in NODE_KINDS or not key:
        raise ValueError(f"invalid node id {node_id!r}")
    return kind, key


@dataclass
class GraphNode:
    id: str
    kind: str
    attrs: dict

    @property
    def key(self) -> str:
        return self.id.split("/", 1)[1]


@dataclass
class GraphEdge:
    id: str
    kind: str
    from_id: str
    to_id: str
    attrs: dict = field(default_factory=dict)


def _edge_id(kind: str, from_id: str, to_id: str) -> str:
    # Deterministic ids make duplicate detection and dump ordering trivial.
    return f"{kind}:{from_id}->{to_id}"


class GraphStore:
    """Typed property graph with incremental adjacency and secondary indexes."""

    def __init__(self) -> None:
        self._nodes: dict[str, GraphNode] = {}
        self._edges: dict[str, GraphEdge] = {}
        self._out: dict[str, dict[str, set[str]]] = {}
        self._in: dict[str, dict[str, set[str]]] = {}
        self._keyword_index: dict[str, str] = {}
        self._temporal_index: dict[str, tuple[datetime | None, datetime | None]] = {}
        self._frozen = False

    # ---- phase control ----

    @property
    def frozen(self) -> bool:
        return self._frozen

    def freeze(self) -> None:
        """End the build phase; the store becomes immutable and read-safe."""
        self._frozen = True

    def _writable(self) -> None:
        if self._frozen:
            raise BuildPhaseError("store is frozen")

    # ---- nodes ----

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def has_node(self, node_id: str) -> bool:
        return node_id in self._nodes

    def node(self, node_id: str) -> GraphNode:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise MissingNode(node_id) from None

    def add_node(self, kind: str, key: str, attrs: dict) -> str:
        self._writable()
        node_id = make_node_id(kind, key)
        if node_id in self._nodes:
            raise DuplicateNode(node_id)
        validate_node_attrs(kind, attrs)
        self._nodes[node_id] = GraphNode(id=node_id, kind=kind, attrs=dict(attrs))
        self._index_node(node_id)
        return node_id

    def remove_node(self, node_id: str) -> None:
        """Remove a node; refused while any incident edge exists."""
        self._writable()
        node = self.node(node_id)
        if self._out.get(node_id) or self._in.get(node_id):
            raise NodeInUse(node_id)
        del self._nodes[node.id]
        if node.kind == "Keyword":
            self._keyword_index.pop(node.attrs.get("term", ""), None)
        self._temporal_index.pop(node_id, None)

    def iter_nodes(self, kind: str | None = None) -> Iterator[GraphNode]:
        """Nodes in deterministic (id-sorted) order, optionally one kind."""
        for node_id in sorted(self._nodes):
            node = self._nodes[node_id]
            if kind is None or node.kind == kind:
                yield node

    def _index_node(self, node_id: str) -> None:
        node = self._nodes[node_id]
        if node.kind == "Keyword":
            self._keyword_index[node.attrs["term"]] = node_id
        if node.kind in DATASET_KINDS:
            coverage = node.attrs.get("temporal_coverage")
            if coverage:
                start = coverage.get("start")
                end = coverage.get("end")
                self._temporal_index[node_id] = (
                    parse_timestamp(start) if start is not None else None,
                    parse_timestamp(end) if end is not None else None,
                )

    # ---- edges ----

    def has_edge(self, kind: str, from_id: str, to_id: str) -> bool:
        return _edge_id(kind, from_id, to_id) in self._edges

    def edge_between(self, kind: str, from_id: str, to_id: str) -> GraphEdge | None:
        return self._edges.get(_edge_id(kind, from_id, to_id))

    def edge(self, edge_id: str) -> GraphEdge:
        try:
            return self._edges[edge_id]
        except KeyError:
            raise MissingNode(edge_id) from None

    def add_edge(self, kind: str, from_id: str, to_id: str, attrs: dict | None = None) -> str:
        """Insert an edge; repeating an existing (kind, from, to) is a no-op."""
        self._writable()
        if kind not in EDGE_KINDS:
            raise ValueError(f"unknown edge kind {kind!r}")
        for endpoint in (from_id, to_id):
            if endpoint not in self._nodes:
                raise MissingEndpoint(endpoint)
        from_kinds, to_kinds = EDGE_ENDPOINT_KINDS[kind]
        from_kind = self._nodes[from_id].kind
        to_kind = self._nodes[to_id].kind
        if from_kind not in from_kinds or to_kind not in to_kinds:
            raise IllegalEndpointKind(f"{kind}: {from_kind} -> {to_kind}")
        edge_id = _edge_id(kind, from_id, to_id)
        if edge_id in self._edges:
            return edge_id
        self._edges[edge_id] = GraphEdge(
            id=edge_id, kind=kind, from_id=from_id, to_id=to_id, attrs=dict(attrs or {})
        )
        self._out.setdefault(from_id, {}).setdefault(kind, set()).add(to_id)
        self._in.setdefault(to_id, {}).setdefault(kind, set()).add(from_id)
        return edge_id

    def iter_edges(self) -> Iterator[GraphEdge]:
        for edge_id in sorted(self._edges):
            yield self._edges[edge_id]

    def neighbors(self, node_id: str, kind: str, direction: str = "out") -> list[str]:
        """Endpoints of matching incident edges, sorted by node id."""
        if node_id not in self._nodes:
            raise MissingNode(node_id)
        if kind not in EDGE_KINDS:
            raise ValueError(f"unknown edge kind {kind!r}")
        if direction not in ("out", "in"):
            raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")
        table = self._out if direction == "out" else self._in
        return sorted(table.get(node_id, {}).get(kind, ()))

    # ---- secondary indexes ----

    def keyword_node(self, term: str) -> str | None:
        return self._keyword_index.get(term)

    def datasets_in_range(self, start: datetime, end: datetime) -> list[str]:
        """Dataset ids whose temporal coverage intersects the closed range."""
        hits = []
        for node_id, (cov_start, cov_end) in self._temporal_index.items():
            if (cov_start is None or cov_start <= end) and (cov_end is None or cov_end >= start):
                hits.append(node_id)
        return sorted(hits)

    def temporal_coverage(self, node_id: str) -> tuple[datetime | None, datetime | None] | None:
        return self._temporal_index.get(node_id)

    # ---- integrity ----

    def check_integrity(self) -> list[str]:
        """Full-scan referential and index consistency check.

        Returns a list of problems; empty means the store is sound.
        """
        problems = []
        for edge in self._edges.values():
            for endpoint in (edge.from_id, edge.to_id):
                if endpoint not in self._nodes:
                    problems.append(f"edge {edge.id}: dangling endpoint {endpoint}")
        rebuilt_out: dict[str, dict[str, set[str]]] = {}
        rebuilt_in: dict[str, dict[str, set[str]]] = {}
        for edge in self._edges.values():
            rebuilt_out.setdefault(edge.from_id, {}).setdefault(edge.kind, set()).add(edge.to_id)
            rebuilt_in.setdefault(edge.to_id, {}).setdefault(edge.kind, set()).add(edge.from_id)
        if rebuilt_out != {k: v for k, v in self._out.items() if v} or rebuilt_in != {
            k: v for k, v in self._in.items() if v
        }:
            problems.append("adjacency indexes diverge from the edge set")
        rebuilt_keywords = {
            node.attrs["term"]: node.id for node in self._nodes.values() if node.kind == "Keyword"
        }
        if rebuilt_keywords != self._keyword_index:
            problems.append("keyword index diverges from the node set")
        rebuilt_temporal = {}
        for node in self._nodes.values():
            if node.kind in DATASET_KINDS:
                coverage = node.attrs.get("temporal_coverage")
                if coverage:
                    start = coverage.get("start")
                    end = coverage.get("end")
                    rebuilt_temporal[node.id] = (
                        parse_timestamp(start) if start is not None else None,
                        parse_timestamp(end) if end is not None else None,
                    )
        if rebuilt_temporal != self._temporal_index:
            problems.append("temporal index diverges from the node set")
        return problems


# ---- persistence ----


def _dump_line(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def dump(store: GraphStore, path: str | Path) -> None:
    """Write the store as JSON Lines; byte-deterministic for equal stores."""
    lines = [
        _dump_line(
            {
                "format": DUMP_FORMAT,
                "version": DUMP_VERSION,
                "counts": {"nodes": store.node_count, "edges": store.edge_count},
            }
        )
    ]
    for node in store.iter_nodes():
        lines.append(_dump_line({"kind": "node", "id": node.id, "attrs": node.attrs}))
    for edge in store.iter_edges():
        lines.append(
            _dump_line(
                {
                    "kind": "edge",
                    "id": edge.id,
                    "edge_kind": edge.kind,
                    "from": edge.from_id,
                    "to": edge.to_id,
                    "attrs": edge.attrs,
                }
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load(path: str | Path) -> GraphStore:
    """Load a dump, re-validating schemas and referential integrity."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CorruptDump(f"cannot read dump {path}: {exc}") from exc
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise CorruptDump("empty dump file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise CorruptDump(f"bad header: {exc}") from exc
    if not isinstance(header, dict) or header.get("format") != DUMP_FORMAT:
        raise CorruptDump("not a vesa-graph dump")
    if header.get("version") != DUMP_VERSION:
        raise CorruptDump(f"unsupported dump version {header.get('version')!r}")

    store = GraphStore()
    edge_records = []
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorruptDump(f"line {lineno}: {exc}") from exc
        record_kind = record.get("kind") if isinstance(record, dict) else None
        if record_kind == "node":
            try:
                node_kind, key = split_node_id(record["id"])
                store.add_node(node_kind, key, record["attrs"])
            except Exception as exc:
                raise CorruptDump(f"line {lineno}: invalid node: {exc}") from exc
        elif record_kind == "edge":
            edge_records.append((lineno, record))
        else:
            raise CorruptDump(f"line {lineno}: unknown record kind {record_kind!r}")
    for lineno, record in edge_records:
        try:
            store.add_edge(
                record["edge_kind"], record["from"], record["to"], record.get("attrs") or {}
            )
        except Exception as exc:
            raise CorruptDump(f"line {lineno}: invalid edge: {exc}") from exc

    counts = header.get("counts") or {}
    if counts.get("nodes") != store.node_count or counts.get("edges") != store.edge_count:
        raise CorruptDump(
            f"header counts {counts} do not match loaded "
            f"{{'nodes': {store.node_count}, 'edges': {store.edge_count}}}"
        )
    return store
