"""HTTP search service: the five data routes plus the cross-filter route.

The store is frozen before serving, so every handler is a pure read and the
service is stateless: the selection travels with each request. Responses
whose content is selection-independent are serialized once at startup and
served as cached bytes. A graph (re)load swaps the whole state object
atomically between requests.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .config import ServiceConfig
from .errors import UnknownAuthor, UnknownKeyword
from .graph import GraphStore
from .keywords import (
    KeywordScore,
    normalize_term,
    related_keywords,
    select_cloud_keywords,
)
from .query import (
    FilterResult,
    SelectionState,
    build_payloads,
    evaluate,
    get_catalog,
    selection_from_json,
)
from .timeutil import parse_timestamp

HISTOGRAM_BINS = ("day", "month", "year")
AUTOCOMPLETE_LIMIT = 20  # suggestions per /keyword?prefix= query


def _dumps(payload) -> str:
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":"))


def _json_response(payload, status_code: int = 200) -> Response:
    return Response(
        content=_dumps(payload), status_code=status_code, media_type="application/json"
    )


def _cached_response(body: str) -> Response:
    return Response(content=body, media_type="application/json")


def _keyword_entry(score: KeywordScore) -> dict:
    return {
        "keyword": score.term,
        "score": score.score,
        "document_frequency": score.document_frequency,
        "dataset_ids": list(score.dataset_ids),
    }


@dataclass
class ServerState:
    """Everything a request handler needs, built once per loaded graph."""

    store: GraphStore
    config: ServiceConfig
    main_all_body: str = ""
    map_body: str = ""
    cloud_body: str = ""
    _overview_bodies: dict[str, str] = field(default_factory=dict)

    @classmethod
    def build(cls, store: GraphStore, config: ServiceConfig | None = None) -> "ServerState":
        config = config or ServiceConfig()
        if not store.frozen:
            store.freeze()
        state = cls(store=store, config=config)
        catalog = get_catalog(store, config.tokenizer)
        state.main_all_body = _dumps(
            {"result": [catalog.wire_record[d] for d in catalog.dataset_ids]}
        )
        full = state.full_result()
        state.map_body = _dumps({"result": state.map_payload(full)})
        cloud = select_cloud_keywords(catalog.scores, config.cloud_k) if catalog.scores else []
        state.cloud_body = _dumps({"result": [_keyword_entry(s) for s in cloud]})
        state.overview_body("month")
        return state

    @property
    def catalog(self):
        return get_catalog(self.store, self.config.tokenizer)

    def full_result(self) -> FilterResult:
        catalog = self.catalog
        per_source = Counter(
            catalog.corpus_of[d] for d in catalog.dataset_ids if d in catalog.corpus_of
        )
        return FilterResult(
            dataset_ids=list(catalog.dataset_ids),
            total=len(catalog.dataset_ids),
            per_source=dict(sorted(per_source.items())),
        )

    def map_payload(self, result: FilterResult) -> list[dict]:
        catalog = self.catalog
        points = []
        for dataset_id in result.dataset_ids:
            point = catalog.point.get(dataset_id)
            if point is None:
                continue
            points.append(
                {
                    "dataset_id": dataset_id,
                    "lat": point[0],
                    "lon": point[1],
                    "source": catalog.corpus_of.get(dataset_id, ""),
                }
            )
        return points

    def filter_body(self, selection, bin: str) -> str:
        result = evaluate(self.store, selection, self.config.tokenizer)
        payloads = build_payloads(
            self.store, selection, result, self.config.cloud_k, bin, self.config.tokenizer
        )
        return _dumps(
            {
                "filter": {
                    "dataset_ids": result.dataset_ids,
                    "total": result.total,
                    "per_source": result.per_source,
                },
                "payloads": payloads,
            }
        )

    def overview_body(self, bin: str) -> str:
        body = self._overview_bodies.get(bin)
        if body is None:
            body = self.filter_body(SelectionState(), bin)
            self._overview_bodies[bin] = body
        return body


def create_app(state: ServerState | None = None, cors_origins: list[str] | None = None) -> FastAPI:
    """App factory; a None state answers 503 until a graph is attached."""
    app = FastAPI(title="vesa", docs_url=None, redoc_url=None)
    origins = cors_origins
    if origins is None:
        origins = state.config.cors_origins if state is not None else ["*"]
    app.add_middleware(
        CORSMiddleware,
        allow_origins=origins,
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )
    app.state.vesa = state

    def current_state() -> ServerState:
        current = app.state.vesa
        if current is None:
            raise HTTPException(status_code=503, detail="graph not loaded")
        return current

    @app.get("/main/all")
    def main_all() -> Response:
        return _cached_response(current_state().main_all_body)

    @app.get("/keyword")
    def keyword(request: Request) -> Response:
        state = current_state()
        if "term" not in request.query_params:
            if "prefix" in request.query_params:
                prefix = request.query_params["prefix"].strip().lower()
                if not prefix:
                    raise HTTPException(status_code=400, detail="prefix must be non-empty")
                catalog = state.catalog
                hits = sorted(
                    (s for t, s in catalog.scores.items() if t.startswith(prefix)),
                    key=lambda s: (-s.document_frequency, s.term),
                )[:AUTOCOMPLETE_LIMIT]
                return _json_response({"result": [_keyword_entry(s) for s in hits]})
            return _cached_response(state.cloud_body)
        term = request.query_params["term"]
        if not term.strip():
            raise HTTPException(status_code=400, detail="term must be non-empty")
        normalized = normalize_term(term)
        catalog = state.catalog
        score = catalog.scores.get(normalized)
        if score is None and catalog.store.keyword_node(normalized) is None:
            raise HTTPException(status_code=404, detail=f"unknown keyword: {term}")
        related = related_keywords(state.store, normalized, catalog.scores)
        record = {
            "keyword": normalized,
            "score": score.score if score else 0.0,
            "document_frequency": score.document_frequency if score else 0,
            "dataset_ids": list(score.dataset_ids) if score else [],
            "related": [{"keyword": r.term, "co_count": r.co_count} for r in related],
        }
        return _json_response({"result": record})

    @app.get("/time")
    def time_range(request: Request) -> Response:
        state = current_state()
        start_text = request.query_params.get("start")
        end_text = request.query_params.get("end")
        if start_text is None or end_text is None:
            raise HTTPException(status_code=400, detail="start and end are required")
        try:
            start = parse_timestamp(start_text)
            end = parse_timestamp(end_text)
        except Exception as exc:
            raise HTTPException(status_code=400, detail=f"unparsable bound: {exc}") from exc
        if start > end:
            raise HTTPException(status_code=400, detail="start is after end")
        catalog = state.catalog
        hits = state.store.datasets_in_range(start, end)
        return _json_response({"result": [catalog.wire_record[d] for d in hits]})

    @app.get("/abstract")
    def abstract(request: Request) -> Response:
        state = current_state()
        dataset_id = request.query_params.get("id")
        if not dataset_id:
            raise HTTPException(status_code=400, detail="id is required")
        catalog = state.catalog
        if dataset_id not in catalog.dataset_set:
            raise HTTPException(status_code=404, detail=f"unknown dataset id: {dataset_id}")
        text = state.store.node(dataset_id).attrs.get("abstract", "")
        return _json_response({"id": dataset_id, "abstract": text})

    @app.get("/map")
    def map_route() -> Response:
        return _cached_response(current_state().map_body)

    @app.post("/filter")
    async def filter_route(request: Request) -> Response:
        state = current_state()
        bin = request.query_params.get("bin", "month")
        if bin not in HISTOGRAM_BINS:
            raise HTTPException(status_code=400, detail=f"bin must be one of {HISTOGRAM_BINS}")
        try:
            payload = await request.json()
        except Exception as exc:
            raise HTTPException(status_code=400, detail=f"body is not valid JSON: {exc}") from exc
        try:
            selection = selection_from_json(payload)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        if selection.is_empty():
            return _cached_response(state.overview_body(bin))
        try:
            body = state.filter_body(selection, bin)
        except UnknownKeyword as exc:
            raise HTTPException(status_code=404, detail=f"unknown keyword: {exc}") from exc
        except UnknownAuthor as exc:
            raise HTTPException(status_code=404, detail=f"unknown author: {exc}") from exc
        return _cached_response(body)

    return app


def attach_store(app: FastAPI, state: ServerState | None) -> None:
    """Atomically swap the serving state between requests."""
    app.state.vesa = state
