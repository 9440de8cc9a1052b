"""Keyword semantics: tokenization, TF-IDF scoring, cross-corpus linking,
publication-mediated keyword propagation, and related-keyword lookup.

All functions here are pure reads except mediate_stac_keywords, which adds
edges during the build phase.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field

from .errors import BuildPhaseError, EmptyStore, UnknownKeyword
from .graph import DATASET_KINDS, GraphStore

# Fixed 50-word default list; overridable via the tokenizer config file.
DEFAULT_STOPWORDS = frozenset(
    """
    a about above after all also an and are as at be been between both but by
    during for from had has have here in into is it its more no not of on or
    other over such than that the their then there these this to was were with
    """.split()
)

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)
_WS_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class TokenizerConfig:
    stopwords: frozenset[str] = DEFAULT_STOPWORDS
    min_token_length: int = 3
    lowercase: bool = True

    def __post_init__(self) -> None:
        if self.min_token_length < 1:
            raise ValueError("min_token_length must be >= 1")
        # Keep the stopword list closed under its own normalization.
        normalized = frozenset(
            w.lower() if self.lowercase else w for w in self.stopwords
        )
        object.__setattr__(self, "stopwords", normalized)


DEFAULT_TOKENIZER = TokenizerConfig()


def tokenize(text: str, config: TokenizerConfig = DEFAULT_TOKENIZER) -> list[str]:
    """Split free text into terms: lowercase, alphanumeric runs, stopwords
    and short tokens dropped. Duplicates are preserved for frequency counts."""
    if not text:
        return []
    if config.lowercase:
        text = text.lower()
    return [
        token
        for token in _TOKEN_RE.findall(text)
        if len(token) >= config.min_token_length and token not in config.stopwords
    ]


def normalize_term(term: str) -> str:
    """Normalize a curated keyword as one whole term.

    Lowercased, whitespace collapsed; "/" folds to a space so the term stays
    a legal node key.
    """
    return _WS_RE.sub(" ", term.lower().replace("/", " ")).strip()


@dataclass
class KeywordScore:
    term: str
    score: float
    document_frequency: int
    dataset_ids: list[str] = field(default_factory=list)


def _document_tokens(store: GraphStore, node_id: str, config: TokenizerConfig) -> list[str]:
    """Token stream of one dataset document: title + abstract tokens plus the
    attached keyword terms (curated keywords stay whole terms)."""
    attrs = store.node(node_id).attrs
    tokens = tokenize(attrs.get("title", ""), config)
    tokens += tokenize(attrs.get("abstract", ""), config)
    for keyword_id in store.neighbors(node_id, "hasKeyword", "out"):
        tokens.append(store.node(keyword_id).attrs["term"])
    return tokens


def dataset_ids(store: GraphStore) -> list[str]:
    """All dataset document ids (both repository kinds), sorted."""
    return sorted(
        node.id for kind in sorted(DATASET_KINDS) for node in store.iter_nodes(kind)
    )


def compute_tfidf(
    store: GraphStore, config: TokenizerConfig = DEFAULT_TOKENIZER
) -> dict[str, KeywordScore]:
    """Score every term over the dataset documents.

    tf(t, d) is the raw count in the document token stream, idf(t) is
    ln(N / df) with N the number of dataset documents, and a term's score
    aggregates as max over documents of tf * idf. Terms present in every
    document score exactly zero.
    """
    docs = dataset_ids(store)
    if not docs:
        raise EmptyStore("no dataset nodes in store")
    n_docs = len(docs)
    max_tf: dict[str, int] = {}
    postings: dict[str, list[str]] = {}
    for doc_id in docs:
        counts = Counter(_document_tokens(store, doc_id, config))
        for term, count in counts.items():
            postings.setdefault(term, []).append(doc_id)
            if count > max_tf.get(term, 0):
                max_tf[term] = count
    scores = {}
    for term, posting in postings.items():
        df = len(posting)
        idf = math.log(n_docs / df)
        scores[term] = KeywordScore(
            term=term,
            score=max_tf[term] * idf,
            document_frequency=df,
            dataset_ids=sorted(posting),
        )
    return scores


def select_cloud_keywords(scores: dict[str, KeywordScore], k: int) -> list[KeywordScore]:
    """Top-k terms for the cloud: score desc, then document frequency desc,
    then term. k beyond the vocabulary returns everything."""
    if k < 1:
        raise ValueError("cloud size k must be >= 1")
    ranked = sorted(
        scores.values(), key=lambda s: (-s.score, -s.document_frequency, s.term)
    )
    return ranked[:k]


def _dataset_corpus(store: GraphStore, node_id: str) -> str | None:
    corpora = store.neighbors(node_id, "belongsToCorpus", "out")
    if not corpora:
        return None
    return store.node(corpora[0]).attrs["name"]


def link_common_keywords(store: GraphStore) -> dict[str, list[str]]:
    """Keyword terms attached to datasets of two or more corpora.

    Keyword nodes are global, so cross-source linkage needs no new edges;
    this materializes the report of shared terms -> sorted corpus names.
    """
    shared = {}
    for node in store.iter_nodes("Keyword"):
        corpora = set()
        for dataset_id in store.neighbors(node.id, "hasKeyword", "in"):
            if store.node(dataset_id).kind not in DATASET_KINDS:
                continue
            corpus = _dataset_corpus(store, dataset_id)
            if corpus:
                corpora.add(corpus)
        if len(corpora) >= 2:
            shared[node.attrs["term"]] = sorted(corpora)
    return shared


def _has_direct_keywords(store: GraphStore, node_id: str) -> bool:
    for keyword_id in store.neighbors(node_id, "hasKeyword", "out"):
        edge = store.edge_between("hasKeyword", node_id, keyword_id)
        if edge is not None and edge.attrs.get("provenance") == "direct":
            return True
    return False


def mediate_stac_keywords(store: GraphStore) -> int:
    """Propagate publication keywords onto collections that lack direct ones.

    A publication whose mission mentions include a collection's mission
    identifier (case-insensitive exact match) donates its keywords to that
    collection as provenance "mediated" edges, and gets a mentionsMission
    edge as the witness. Returns the number of mediated keyword edges added.
    """
    if store.frozen:
        raise BuildPhaseError("store is frozen")
    bare_collections = [
        node for node in store.iter_nodes("STACCollection")
        if not _has_direct_keywords(store, node.id)
    ]
    if not bare_collections:
        return 0
    added = 0
    for publication in store.iter_nodes("Publication"):
        mentions = {m.lower() for m in publication.attrs.get("mission_mentions", [])}
        if not mentions:
            continue
        keyword_ids = store.neighbors(publication.id, "hasKeyword", "out")
        for collection in bare_collections:
            mission = collection.attrs.get("mission") or collection.key
            if mission.lower() not in mentions:
                continue
            store.add_edge("mentionsMission", publication.id, collection.id)
            for keyword_id in keyword_ids:
                if not store.has_edge("hasKeyword", collection.id, keyword_id):
                    store.add_edge(
                        "hasKeyword", collection.id, keyword_id, {"provenance": "mediated"}
                    )
                    added += 1
    return added


def datasets_with_term(
    store: GraphStore,
    term: str,
    scores: dict[str, KeywordScore] | None = None,
) -> list[str]:
    """Dataset ids carrying a term.

    Resolution order: hasKeyword edges when the term has a Keyword node,
    otherwise the TF-IDF posting list (free-text cloud terms have no node).
    Raises UnknownKeyword if neither knows the term.
    """
    normalized = normalize_term(term)
    keyword_id = store.keyword_node(normalized)
    if keyword_id is not None:
        return [
            node_id
            for node_id in store.neighbors(keyword_id, "hasKeyword", "in")
            if store.node(node_id).kind in DATASET_KINDS
        ]
    if scores is not None and normalized in scores:
        return list(scores[normalized].dataset_ids)
    raise UnknownKeyword(term)


@dataclass
class RelatedKeyword:
    term: str
    co_count: int


def related_keywords(
    store: GraphStore,
    term: str,
    scores: dict[str, KeywordScore] | None = None,
) -> list[RelatedKeyword]:
    """Keywords co-occurring with term, ranked by shared-dataset count.

    Co-occurrence is over the keywords attached to the datasets that carry
    term; the term itself is excluded. Ties break lexicographically.
    """
    normalized = normalize_term(term)
    carriers = datasets_with_term(store, normalized, scores)
    counts: Counter[str] = Counter()
    for dataset_id in carriers:
        for keyword_id in store.neighbors(dataset_id, "hasKeyword", "out"):
            counts[store.node(keyword_id).attrs["term"]] += 1
    counts.pop(normalized, None)
    return [
        RelatedKeyword(term=t, co_count=c)
        for t, c in sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    ]
