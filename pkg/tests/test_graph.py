"""Graph store: node/edge typing, adjacency, indexes, dump/load."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vesa.errors import (
    BuildPhaseError,
    CorruptDump,
    DuplicateNode,
    IllegalEndpointKind,
    MissingEndpoint,
    MissingNode,
    NodeInUse,
    SchemaViolation,
)
from vesa.graph import GraphStore, dump, load, make_node_id, split_node_id


def small_store() -> GraphStore:
    store = GraphStore()
    store.add_node(
        "Dataset",
        "495977132",
        {
            "source_key": "495977132",
            "title": "Shell sizes in the Labrador Sea",
            "organization": "PANGAEA",
            "authors": ["Franziska Tell"],
            "keywords": ["temperature"],
        },
    )
    store.add_node("Author", "franziska-tell", {"name": "Franziska Tell"})
    store.add_node("Keyword", "temperature", {"term": "temperature"})
    store.add_node("Corpus", "PANGAEA", {"name": "PANGAEA"})
    store.add_edge("hasAuthor", "Dataset/495977132", "Author/franziska-tell")
    store.add_edge("hasKeyword", "Dataset/495977132", "Keyword/temperature", {"provenance": "direct"})
    store.add_edge("belongsToCorpus", "Dataset/495977132", "Corpus/PANGAEA")
    return store


class TestNodeIds:
    def test_make_and_split(self):
        node_id = make_node_id("Dataset", "495977132")
        assert node_id == "Dataset/495977132"
        assert split_node_id(node_id) == ("Dataset", "495977132")

    def test_key_may_contain_spaces(self):
        assert make_node_id("Keyword", "flood events") == "Keyword/flood events"

    @pytest.mark.parametrize("kind,key", [("Dataset", ""), ("Dataset", "a/b"), ("Thing", "x")])
    def test_invalid_ids_rejected(self, kind, key):
        with pytest.raises(ValueError):
            make_node_id(kind, key)


class TestAddNode:
    def test_add_and_retrieve(self):
        store = GraphStore()
        node_id = store.add_node(
            "Dataset",
            "495977132",
            {"source_key": "495977132", "title": "T", "organization": "PANGAEA"},
        )
        assert node_id == "Dataset/495977132"
        assert store.node(node_id).kind == "Dataset"

    def test_keyword_identity_key(self):
        store = GraphStore()
        assert store.add_node("Keyword", "temperature", {"term": "temperature"}) == (
            "Keyword/temperature"
        )
        assert store.keyword_node("temperature") == "Keyword/temperature"

    def test_duplicate_rejected(self):
        store = GraphStore()
        store.add_node("Keyword", "x", {"term": "x"})
        with pytest.raises(DuplicateNode):
            store.add_node("Keyword", "x", {"term": "x"})

    def test_schema_violation(self):
        store = GraphStore()
        with pytest.raises(SchemaViolation):
            store.add_node("Dataset", "1", {"title": "no organization/source_key"})
        with pytest.raises(SchemaViolation):
            store.add_node("Keyword", "x", {})

    def test_unknown_extra_attrs_preserved(self):
        store = GraphStore()
        node_id = store.add_node("Keyword", "x", {"term": "x", "curated_by": "someone"})
        assert store.node(node_id).attrs["curated_by"] == "someone"


class TestAddEdge:
    def test_edge_visible_via_neighbors(self):
        store = small_store()
        assert store.neighbors("Dataset/495977132", "hasAuthor", "out") == [
            "Author/franziska-tell"
        ]
        assert store.neighbors("Author/franziska-tell", "hasAuthor", "in") == [
            "Dataset/495977132"
        ]

    def test_reversed_direction_illegal(self):
        store = small_store()
        with pytest.raises(IllegalEndpointKind):
            store.add_edge("hasKeyword", "Keyword/temperature", "Dataset/495977132")

    def test_missing_endpoint(self):
        store = small_store()
        with pytest.raises(MissingEndpoint):
            store.add_edge("hasKeyword", "Dataset/495977132", "Keyword/absent")

    def test_duplicate_triple_idempotent(self):
        store = small_store()
        before = store.edge_count
        first = store.add_edge("hasKeyword", "Dataset/495977132", "Keyword/temperature")
        assert store.edge_count == before
        second = store.add_edge("hasKeyword", "Dataset/495977132", "Keyword/temperature")
        assert first == second
        assert store.edge_count == before

    def test_unknown_kind(self):
        store = small_store()
        with pytest.raises(ValueError):
            store.add_edge("coversLocation", "Dataset/495977132", "Corpus/PANGAEA")


class TestNeighbors:
    def test_no_edges_is_empty(self):
        store = GraphStore()
        store.add_node("Keyword", "alone", {"term": "alone"})
        assert store.neighbors("Keyword/alone", "hasKeyword", "in") == []

    def test_missing_node(self):
        store = GraphStore()
        with pytest.raises(MissingNode):
            store.neighbors("Dataset/none", "hasKeyword", "out")

    def test_two_hop_reachability_matches_edge_scan(self):
        # Dataset -> Keyword -> Dataset reachability against a brute-force
        # scan over the full edge set.
        store = GraphStore()
        for i in range(6):
            store.add_node(
                "Dataset",
                f"d{i}",
                {"source_key": f"d{i}", "title": f"D{i}", "organization": "X"},
            )
        for term in ("alpha", "beta", "gamma"):
            store.add_node("Keyword", term, {"term": term})
        pairs = [
            ("d0", "alpha"), ("d1", "alpha"), ("d1", "beta"), ("d2", "beta"),
            ("d3", "gamma"), ("d4", "alpha"), ("d4", "gamma"),
        ]
        for d, t in pairs:
            store.add_edge("hasKeyword", f"Dataset/{d}", f"Keyword/{t}")

        edges = [(e.kind, e.from_id, e.to_id) for e in store.iter_edges()]

        def brute_two_hop(start):
            keywords = {t for k, f, t in edges if k == "hasKeyword" and f == start}
            return sorted(
                {f for k, f, t in edges if k == "hasKeyword" and t in keywords and f != start}
            )

        for i in range(6):
            start = f"Dataset/d{i}"
            via_api = set()
            for keyword in store.neighbors(start, "hasKeyword", "out"):
                via_api.update(store.neighbors(keyword, "hasKeyword", "in"))
            via_api.discard(start)
            assert sorted(via_api) == brute_two_hop(start)


class TestPhases:
    def test_frozen_store_rejects_mutation(self):
        store = small_store()
        store.freeze()
        with pytest.raises(BuildPhaseError):
            store.add_node("Keyword", "new", {"term": "new"})
        with pytest.raises(BuildPhaseError):
            store.add_edge("hasKeyword", "Dataset/495977132", "Keyword/temperature")

    def test_remove_node_guarded_by_edges(self):
        store = small_store()
        with pytest.raises(NodeInUse):
            store.remove_node("Keyword/temperature")
        store.add_node("Keyword", "orphan", {"term": "orphan"})
        store.remove_node("Keyword/orphan")
        assert not store.has_node("Keyword/orphan")
        assert store.keyword_node("orphan") is None


class TestDumpLoad:
    def test_empty_round_trip(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        dump(GraphStore(), path)
        lines = path.read_text().splitlines()
        assert len(lines) == 1  # header only
        header = json.loads(lines[0])
        assert header == {"format": "vesa-graph", "version": 1, "counts": {"nodes": 0, "edges": 0}}
        loaded = load(path)
        assert loaded.node_count == 0 and loaded.edge_count == 0

    def test_round_trip_structural_equality(self, tmp_path):
        store = self._fixture_store()
        assert store.node_count == 10 and store.edge_count == 12
        path = tmp_path / "g.jsonl"
        dump(store, path)
        loaded = load(path)
        assert {n.id: (n.kind, n.attrs) for n in loaded.iter_nodes()} == {
            n.id: (n.kind, n.attrs) for n in store.iter_nodes()
        }
        assert {(e.kind, e.from_id, e.to_id, tuple(sorted(e.attrs.items()))) for e in loaded.iter_edges()} == {
            (e.kind, e.from_id, e.to_id, tuple(sorted(e.attrs.items()))) for e in store.iter_edges()
        }

    def test_dump_bytes_deterministic(self, tmp_path):
        first = tmp_path / "a.jsonl"
        second = tmp_path / "b.jsonl"
        dump(self._fixture_store(), first)
        dump(self._fixture_store(shuffle=True), second)
        assert first.read_bytes() == second.read_bytes()

    def test_corrupted_edge_endpoint(self, tmp_path):
        # Remove a node whose id edges still reference; adjust the header so
        # the failure is the dangling endpoint, not the count check.
        store = self._fixture_store()
        path = tmp_path / "g.jsonl"
        dump(store, path)
        lines = path.read_text().splitlines()
        kept = [line for line in lines[1:] if json.loads(line).get("id") != "Keyword/alpha"]
        header = json.loads(lines[0])
        header["counts"]["nodes"] -= 1
        path.write_text(
            "\n".join([json.dumps(header, sort_keys=True, separators=(",", ":"))] + kept) + "\n"
        )
        with pytest.raises(CorruptDump):
            load(path)

    def test_header_count_mismatch(self, tmp_path):
        store = self._fixture_store()
        path = tmp_path / "g.jsonl"
        dump(store, path)
        lines = path.read_text().splitlines()
        header = json.loads(lines[0])
        header["counts"]["nodes"] += 1
        lines[0] = json.dumps(header, sort_keys=True, separators=(",", ":"))
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(CorruptDump):
            load(path)

    def test_not_a_dump(self, tmp_path):
        path = tmp_path / "junk.jsonl"
        path.write_text('{"format":"other"}\n')
        with pytest.raises(CorruptDump):
            load(path)

    @staticmethod
    def _fixture_store(shuffle: bool = False) -> GraphStore:
        """10 nodes / 12 edges; shuffle flips insertion order."""
        store = GraphStore()
        dataset_keys = ["d1", "d2", "d3"]
        terms = ["alpha", "beta", "gamma"]
        authors = ["a-one", "a-two"]
        node_plan = (
            [("Corpus", "C", {"name": "C"}), ("Publication", "p1", {"title": "P one"})]
            + [
                ("Dataset", k, {"source_key": k, "title": k.upper(), "organization": "C"})
                for k in dataset_keys
            ]
            + [("Keyword", t, {"term": t}) for t in terms]
            + [("Author", a, {"name": a}) for a in authors]
        )
        edge_plan = [
            ("belongsToCorpus", "Dataset/d1", "Corpus/C"),
            ("belongsToCorpus", "Dataset/d2", "Corpus/C"),
            ("belongsToCorpus", "Dataset/d3", "Corpus/C"),
            ("hasKeyword", "Dataset/d1", "Keyword/alpha"),
            ("hasKeyword", "Dataset/d2", "Keyword/alpha"),
            ("hasKeyword", "Dataset/d2", "Keyword/beta"),
            ("hasKeyword", "Dataset/d3", "Keyword/gamma"),
            ("hasAuthor", "Dataset/d1", "Author/a-one"),
            ("hasAuthor", "Dataset/d2", "Author/a-one"),
            ("hasAuthor", "Dataset/d3", "Author/a-two"),
            ("hasPublication", "Dataset/d1", "Publication/p1"),
            ("hasKeyword", "Publication/p1", "Keyword/beta"),
        ]
        if shuffle:
            node_plan = list(reversed(node_plan))
            edge_plan = list(reversed(edge_plan))
        for kind, key, attrs in node_plan:
            store.add_node(kind, key, attrs)
        for kind, from_id, to_id in edge_plan:
            store.add_edge(kind, from_id, to_id)
        return store


# ---- property: incremental indexes equal a full rebuild ----

_TERMS = ["t1", "t2", "t3", "t4"]
_KEYS = ["d1", "d2", "d3"]


@st.composite
def op_sequences(draw):
    ops = draw(
        st.lists(
            st.tuples(st.sampled_from(_KEYS), st.sampled_from(_TERMS)),
            min_size=1,
            max_size=30,
        )
    )
    return ops


@given(op_sequences())
@settings(max_examples=60, deadline=None)
def test_index_consistency_over_random_op_sequences(ops):
    store = GraphStore()
    store.add_node("Corpus", "C", {"name": "C"})
    for key in _KEYS:
        store.add_node(
            "Dataset",
            key,
            {
                "source_key": key,
                "title": key,
                "organization": "C",
                "temporal_coverage": {"start": "2000-01-01T00:00:00Z", "end": "2001-01-01T00:00:00Z"},
            },
        )
    edge_count_expected = set()
    for key, term in ops:
        if store.keyword_node(term) is None:
            store.add_node("Keyword", term, {"term": term})
        store.add_edge("hasKeyword", f"Dataset/{key}", f"Keyword/{term}")
        edge_count_expected.add((key, term))
        assert store.check_integrity() == []
    assert store.edge_count == len(edge_count_expected)
