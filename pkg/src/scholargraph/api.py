"""HTTP/JSON service over the store, domain, comparison and similarity layers.

Handlers are stateless; the store's readers/writer contract carries the
concurrency guarantees. Saved comparisons persist the request (ids plus
threshold), never the table: every read recomputes against the live graph.
Setting the ORKG_WRITE_TOKEN environment variable gates mutating routes
behind an X-Write-Token header.
"""

from __future__ import annotations

import json
import os
import secrets
import string
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Sequence

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import domain
from .comparison import ComparisonConfig, ComparisonTable, compare
from .embeddings import EmbeddingTable
from .errors import (
    GraphError,
    TooFewContributions,
    UnknownPredicate,
    UnknownReferent,
)
from .graph import DEFAULT_DEPTH_LIMIT, GraphStore, format_timestamp
from .rdf import UriScheme, export_ntriples
from .render import comparison_to_csv, comparison_to_latex
from .similarity import SimilarityService

_SHORT_ID_ALPHABET = string.digits + string.ascii_uppercase + string.ascii_lowercase


@dataclass(frozen=True)
class SavedComparison:
    short_id: str
    contribution_ids: tuple[str, ...]
    threshold: float
    created_at: str


class ServiceState:
    def __init__(self, store: GraphStore, table: EmbeddingTable | None = None,
                 threshold: float = 0.9,
                 data_dir: str | os.PathLike | None = None,
                 write_token: str | None = None,
                 short_id_source: Callable[[], str] | None = None):
        self.store = store
        self.table = table
        self.threshold = threshold
        self.write_token = write_token
        self.similarity = SimilarityService(
            store, lambda s: domain.list_contribution_nodes(s))
        self.saved: dict[str, SavedComparison] = {}
        self._saved_lock = threading.Lock()
        self._short_id_source = short_id_source or self._random_short_id
        self._saved_path: Path | None = None
        if data_dir is not None:
            self._saved_path = Path(data_dir) / "comparisons.jsonl"
            if self._saved_path.exists():
                for line in self._saved_path.read_text(encoding="utf-8").splitlines():
                    if not line.strip():
                        continue
                    payload = json.loads(line)
                    saved = SavedComparison(
                        payload["short_id"], tuple(payload["contribution_ids"]),
                        payload["threshold"], payload["created_at"])
                    self.saved[saved.short_id] = saved

    @staticmethod
    def _random_short_id() -> str:
        return "".join(secrets.choice(_SHORT_ID_ALPHABET) for _ in range(8))

    def comparison_config(self, threshold: float | None = None) -> ComparisonConfig:
        return ComparisonConfig(threshold=threshold if threshold is not None
                                else self.threshold, table=self.table)

    def save_comparison(self, contribution_ids: Sequence[str],
                        threshold: float) -> SavedComparison:
        with self._saved_lock:
            short_id = self._short_id_source()
            while short_id in self.saved:
                short_id = self._random_short_id()
            saved = SavedComparison(
                short_id, tuple(contribution_ids), threshold,
                format_timestamp(datetime.now(timezone.utc)))
            self.saved[short_id] = saved
            if self._saved_path is not None:
                self._saved_path.parent.mkdir(parents=True, exist_ok=True)
                with open(self._saved_path, "a", encoding="utf-8") as fh:
                    fh.write(json.dumps({
                        "short_id": saved.short_id,
                        "contribution_ids": list(saved.contribution_ids),
                        "threshold": saved.threshold,
                        "created_at": saved.created_at,
                    }) + "\n")
            return saved


class ResourceIn(BaseModel):
    label: str
    classes: list[str] = Field(default_factory=list)


class PredicateIn(BaseModel):
    label: str


class LiteralIn(BaseModel):
    value: str
    datatype: str = "string"


class StatementIn(BaseModel):
    subject: str
    predicate: str
    object: str
    agent: str = "api"


class ContributionSpecIn(BaseModel):
    problem: str | None = None
    method: str | None = None
    results: list[str] = Field(default_factory=list)
    complete: bool = True
    description: list = Field(default_factory=list)


class PaperIn(BaseModel):
    title: str
    doi: str | None = None
    authors: list[str] = Field(default_factory=list)
    year: int | None = None
    contributions: list[ContributionSpecIn] = Field(default_factory=list)


class SaveComparisonIn(BaseModel):
    contribution_ids: list[str]
    threshold: float | None = None


_ERROR_STATUS = {
    UnknownReferent: 404,
    UnknownPredicate: 404,
    TooFewContributions: 422,
}


def _error_body(code: str, message: str, detail: object = None) -> dict:
    return {"code": code, "message": message, "detail": detail}


def _statement_json(store: GraphStore, statement) -> dict:
    return {
        "id": statement.id,
        "subject": statement.subject,
        "predicate": statement.predicate,
        "object": statement.object,
        "created_at": format_timestamp(statement.provenance.created_at),
        "created_by": statement.provenance.created_by,
    }


def _resource_json(resource) -> dict:
    return {"id": resource.id, "label": resource.label,
            "classes": sorted(resource.classes)}


def _paper_json(paper: domain.Paper) -> dict:
    return {
        "node": paper.node,
        "title": paper.title,
        "doi": paper.doi,
        "authors": list(paper.authors),
        "year": paper.publication_year,
        "contributions": list(paper.contributions),
    }


def _table_json(table: ComparisonTable) -> dict:
    return {
        "contributions": [
            {"id": cid, "label": label}
            for cid, label in zip(table.contributions, table.contribution_labels)
        ],
        "threshold": table.threshold,
        "groups": [
            {
                "label": group.display_label,
                "frequency": group.frequency,
                "predicates": sorted(group.members),
                "cells": [list(cell) for cell in group.cells],
            }
            for group in table.groups
        ],
    }


def create_app(state: ServiceState) -> FastAPI:
    app = FastAPI(title="scholargraph", docs_url=None, redoc_url=None)
    store = state.store

    @app.exception_handler(GraphError)
    async def graph_error_handler(request: Request, exc: GraphError):
        status = 400
        for err_type, mapped in _ERROR_STATUS.items():
            if isinstance(exc, err_type):
                status = mapped
                break
        return JSONResponse(status_code=status,
                            content=_error_body(exc.code, str(exc)))

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content=_error_body("bad_request", "invalid request body",
                                                json.loads(json.dumps(exc.errors(),
                                                                      default=str))))

    @app.exception_handler(StarletteHTTPException)
    async def http_error_handler(request: Request, exc: StarletteHTTPException):
        return JSONResponse(status_code=exc.status_code,
                            content=_error_body("http_error", str(exc.detail)))

    @app.exception_handler(ValueError)
    async def value_error_handler(request: Request, exc: ValueError):
        return JSONResponse(status_code=400,
                            content=_error_body("bad_request", str(exc)))

    def check_write(request: Request) -> Response | None:
        if state.write_token is None:
            return None
        if request.headers.get("X-Write-Token") == state.write_token:
            return None
        return JSONResponse(status_code=401,
                            content=_error_body("unauthorized", "write token required"))

    @app.post("/api/resources", status_code=201)
    def create_resource(body: ResourceIn, request: Request):
        denied = check_write(request)
        if denied:
            return denied
        return _resource_json(store.create_resource(body.label, set(body.classes)))

    @app.get("/api/resources")
    def search_resources(q: str = "", limit: int = 10):
        return [_resource_json(r) for r in store.find_by_label("resource", q, limit)]

    @app.get("/api/resources/{resource_id}")
    def get_resource(resource_id: str):
        return _resource_json(store.get_resource(resource_id))

    @app.post("/api/predicates", status_code=201)
    def create_predicate(body: PredicateIn, request: Request):
        denied = check_write(request)
        if denied:
            return denied
        predicate = store.create_predicate(body.label)
        return {"id": predicate.id, "label": predicate.label}

    @app.get("/api/predicates")
    def search_predicates(q: str = "", limit: int = 10):
        return [{"id": p.id, "label": p.label}
                for p in store.find_by_label("predicate", q, limit)]

    @app.post("/api/literals", status_code=201)
    def create_literal(body: LiteralIn, request: Request):
        denied = check_write(request)
        if denied:
            return denied
        literal = store.create_literal(body.value, body.datatype)
        return {"id": literal.id, "value": literal.value, "datatype": literal.datatype}

    @app.post("/api/statements", status_code=201)
    def create_statement(body: StatementIn, request: Request):
        denied = check_write(request)
        if denied:
            return denied
        statement = store.create_statement(body.subject, body.predicate,
                                           body.object, body.agent)
        return _statement_json(store, statement)

    @app.get("/api/statements/{statement_id}")
    def get_statement(statement_id: str):
        return _statement_json(store, store.get_statement(statement_id))

    @app.post("/api/papers", status_code=201)
    def create_paper(body: PaperIn, request: Request):
        denied = check_write(request)
        if denied:
            return denied
        specs = [domain.ContributionSpec(
            problem=c.problem, method=c.method, results=tuple(c.results),
            complete=c.complete,
            description=tuple(
                (p, domain.LiteralValue(o["value"], o.get("datatype", "string"))
                 if isinstance(o, dict) else o)
                for p, o in c.description),
        ) for c in body.contributions]
        paper = domain.create_paper(store, body.title, body.doi, body.authors,
                                    body.year, specs, agent="api")
        return _paper_json(paper)

    @app.get("/api/papers/{paper_id}")
    def get_paper(paper_id: str):
        paper = domain.get_paper(store, paper_id)
        contributions = []
        for node in paper.contributions:
            contribution = domain.get_contribution(store, node)
            contributions.append({
                "node": node,
                "label": store.node_label(node),
                "problem": _node_ref(node_id=contribution.problem),
                "method": _node_ref(node_id=contribution.method),
                "results": [_node_ref(node_id=r) for r in contribution.results],
                "statements": [_statement_json(store, st)
                               for st in store.statements_about(node)],
            })
        return {"paper": _paper_json(paper), "contributions": contributions}

    def _node_ref(node_id: str | None) -> dict | None:
        if node_id is None:
            return None
        return {"id": node_id, "label": store.node_label(node_id)}

    @app.get("/api/contributions/{contribution_id}/subgraph")
    def get_subgraph(contribution_id: str, depth: int = DEFAULT_DEPTH_LIMIT):
        subgraph = store.subgraph(contribution_id, depth)
        return {
            "root": subgraph.root,
            "depth_limit": subgraph.depth_limit,
            "statements": [_statement_json(store, st) for st in subgraph.statements],
        }

    @app.get("/api/contributions/{contribution_id}/similar")
    def get_similar(contribution_id: str, k: int = 5):
        if not store.has_node(contribution_id):
            raise UnknownReferent(contribution_id)
        results = state.similarity.most_similar(contribution_id, k)
        return {
            "contribution": contribution_id,
            "k": k,
            "results": [
                {"id": cid, "label": store.node_label(cid), "score": score}
                for cid, score in results
            ],
        }

    @app.get("/api/comparison")
    def get_comparison(contributions: str = "", threshold: float | None = None):
        ids = [c for c in contributions.split(",") if c]
        table = compare(store, ids, state.comparison_config(threshold))
        return _table_json(table)

    @app.post("/api/comparisons", status_code=201)
    def save_comparison(body: SaveComparisonIn, request: Request):
        denied = check_write(request)
        if denied:
            return denied
        threshold = body.threshold if body.threshold is not None else state.threshold
        # Validate eagerly so broken requests are never persisted.
        compare(store, body.contribution_ids, state.comparison_config(threshold))
        saved = state.save_comparison(body.contribution_ids, threshold)
        return {"short_id": saved.short_id, "created_at": saved.created_at}

    def _saved_table(short_id: str) -> ComparisonTable:
        saved = state.saved.get(short_id)
        if saved is None:
            raise UnknownReferent(short_id)
        return compare(store, saved.contribution_ids,
                       state.comparison_config(saved.threshold))

    @app.get("/api/comparisons/{short_id}")
    def get_saved_comparison(short_id: str):
        return _table_json(_saved_table(short_id))

    @app.get("/api/comparisons/{short_id}/export")
    def export_saved_comparison(short_id: str, format: str = "csv"):
        table = _saved_table(short_id)
        if format == "csv":
            return PlainTextResponse(comparison_to_csv(table), media_type="text/csv")
        if format == "latex":
            return PlainTextResponse(comparison_to_latex(table),
                                     media_type="application/x-latex")
        return JSONResponse(status_code=400,
                            content=_error_body("bad_request",
                                                f"unsupported format: {format}"))

    @app.get("/api/export/rdf")
    def export_rdf():
        return PlainTextResponse(export_ntriples(store, UriScheme()),
                                 media_type="application/n-triples")

    @app.get("/api/health")
    def health():
        return {
            "status": "ok",
            "paper_count": domain.paper_count(store),
            "statement_count": store.statement_count(),
        }

    return app


def build_default_app() -> FastAPI:
    """App factory for ``uvicorn scholargraph.api:build_default_app``."""
    state = ServiceState(GraphStore(), write_token=os.environ.get("ORKG_WRITE_TOKEN"))
    return create_app(state)
