"""Scholarly domain layer: papers and research contributions over the graph store.

A paper node links to one or more contribution nodes; each contribution
relates a research problem, optionally a method, and one or more results
through a small set of reserved predicate labels. Everything beyond that
shape is free-form description. The layer is stateless: papers and
contributions are reconstructed from statements on demand.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Sequence, TypeAlias

from .errors import (
    EmptyLabel,
    InvalidDoi,
    MissingProblem,
    MissingResult,
    ParseError,
    UnknownReferent,
)
from .graph import GraphStore, Statement

# Reserved predicate labels; free-form vocabularies remain open via
# describe_freely.
HAS_CONTRIBUTION = "has contribution"
ADDRESSES = "addresses"
EMPLOYS = "employs"
YIELDS = "yields"
HAS_DOI = "has doi"
HAS_AUTHOR = "has author"
HAS_YEAR = "has publication year"

_DOI_RE = re.compile(r"^10\.\d{2,9}(\.\d+)*/\S+$")


@dataclass(frozen=True, slots=True)
class LiteralValue:
    """Literal object spec for free-form description triples."""

    value: str
    datatype: str = "string"


ObjectSpec: TypeAlias = "str | LiteralValue"


@dataclass(frozen=True, slots=True)
class ContributionSpec:
    problem: str | None
    method: str | None = None
    results: tuple[str, ...] = ()
    complete: bool = True
    description: tuple[tuple[str, ObjectSpec], ...] = ()


@dataclass(frozen=True, slots=True)
class Paper:
    node: str
    title: str
    doi: str | None
    authors: tuple[str, ...]
    publication_year: int | None
    contributions: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class ResearchContribution:
    node: str
    problem: str | None
    method: str | None
    results: tuple[str, ...]
    extra_statements: tuple[Statement, ...]


@dataclass(frozen=True, slots=True)
class ValidationReport:
    node: str
    ok: bool
    missing: tuple[str, ...]


def get_or_create_predicate(store: GraphStore, label: str) -> str:
    existing = store.find_predicate_by_exact_label(label)
    if existing is not None:
        return existing.id
    return store.create_predicate(label).id


def get_or_create_resource(store: GraphStore, label: str,
                           classes: Iterable[str] = ()) -> str:
    existing = store.find_resource_by_exact_label(label)
    if existing is not None:
        return existing.id
    return store.create_resource(label, classes).id


def get_or_create_literal(store: GraphStore, value: str, datatype: str = "string") -> str:
    existing = store.find_literal_by_value(value, datatype)
    if existing is not None:
        return existing.id
    return store.create_literal(value, datatype).id


def validate_doi(doi: str) -> None:
    if not _DOI_RE.match(doi):
        raise InvalidDoi(f"not a DOI: {doi!r}")


def create_paper(store: GraphStore, title: str, doi: str | None = None,
                 authors: Sequence[str] = (), year: int | None = None,
                 contributions: Sequence[ContributionSpec] = (),
                 agent: str = "system") -> Paper:
    """Materialize a paper, its contributions and their linkage statements."""
    if not title.strip():
        raise EmptyLabel("paper title must be non-empty")
    if doi is not None:
        validate_doi(doi)
    if not contributions:
        raise ValueError("a paper needs at least one contribution spec")
    for spec in contributions:
        if not spec.problem:
            raise MissingProblem("contribution spec has no research problem")
        if spec.complete and not spec.results:
            raise MissingResult("complete contribution spec has no results")

    paper_node = store.create_resource(title, {"Paper"}).id
    p_has_contribution = get_or_create_predicate(store, HAS_CONTRIBUTION)
    p_addresses = get_or_create_predicate(store, ADDRESSES)

    if doi is not None:
        p_doi = get_or_create_predicate(store, HAS_DOI)
        store.create_statement(paper_node, p_doi,
                               get_or_create_literal(store, doi), agent)
    if authors:
        p_author = get_or_create_predicate(store, HAS_AUTHOR)
        for author in authors:
            store.create_statement(paper_node, p_author,
                                   get_or_create_literal(store, author), agent)
    if year is not None:
        p_year = get_or_create_predicate(store, HAS_YEAR)
        store.create_statement(paper_node, p_year,
                               get_or_create_literal(store, str(year), "integer"), agent)

    contribution_nodes: list[str] = []
    for index, spec in enumerate(contributions, start=1):
        contribution = store.create_resource(f"Contribution {index}", {"Contribution"}).id
        store.create_statement(paper_node, p_has_contribution, contribution, agent)
        problem = get_or_create_resource(store, spec.problem, {"Problem"})
        store.create_statement(contribution, p_addresses, problem, agent)
        if spec.method:
            p_employs = get_or_create_predicate(store, EMPLOYS)
            method = get_or_create_resource(store, spec.method, {"Method"})
            store.create_statement(contribution, p_employs, method, agent)
        if spec.results:
            p_yields = get_or_create_predicate(store, YIELDS)
            for result in spec.results:
                result_node = get_or_create_resource(store, result, {"Result"})
                store.create_statement(contribution, p_yields, result_node, agent)
        if spec.description:
            describe_freely(store, contribution, spec.description, agent)
        contribution_nodes.append(contribution)

    return Paper(paper_node, title, doi, tuple(authors), year, tuple(contribution_nodes))


def describe_freely(store: GraphStore, contribution: str,
                    triples: Sequence[tuple[str, ObjectSpec]],
                    agent: str = "system") -> list[Statement]:
    """Attach arbitrary-vocabulary statements to a contribution.

    Predicates and resource objects are reused by exact label when present.
    """
    if not store.has_node(contribution):
        raise UnknownReferent(contribution)
    created: list[Statement] = []
    for predicate_label, obj_spec in triples:
        predicate = get_or_create_predicate(store, predicate_label)
        if isinstance(obj_spec, LiteralValue):
            obj = get_or_create_literal(store, obj_spec.value, obj_spec.datatype)
        else:
            obj = get_or_create_resource(store, obj_spec)
        created.append(store.create_statement(contribution, predicate, obj, agent))
    return created


def _reserved_objects(store: GraphStore, node: str, predicate_label: str) -> list[str]:
    predicate = store.find_predicate_by_exact_label(predicate_label)
    if predicate is None:
        return []
    return [st.object for st in store.statements_about(node)
            if st.predicate == predicate.id]


def validate_contribution(store: GraphStore, node: str) -> ValidationReport:
    if not store.has_node(node):
        raise UnknownReferent(node)
    missing: list[str] = []
    if not _reserved_objects(store, node, ADDRESSES):
        missing.append("missing problem")
    if not _reserved_objects(store, node, YIELDS):
        missing.append("missing result")
    return ValidationReport(node, not missing, tuple(missing))


def get_contribution(store: GraphStore, node: str) -> ResearchContribution:
    if not store.has_node(node):
        raise UnknownReferent(node)
    reserved_ids = set()
    problem = method = None
    results: list[str] = []
    for label in (ADDRESSES, EMPLOYS, YIELDS):
        predicate = store.find_predicate_by_exact_label(label)
        if predicate is not None:
            reserved_ids.add(predicate.id)
    extra: list[Statement] = []
    for st in store.statements_about(node):
        label = store.get_predicate(st.predicate).label
        if label == ADDRESSES and problem is None:
            problem = st.object
        elif label == EMPLOYS and method is None:
            method = st.object
        elif label == YIELDS:
            results.append(st.object)
        elif st.predicate not in reserved_ids:
            extra.append(st)
    return ResearchContribution(node, problem, method, tuple(results), tuple(extra))


def get_paper(store: GraphStore, node: str) -> Paper:
    resource = store.get_resource(node)
    contributions = _reserved_objects(store, node, HAS_CONTRIBUTION)
    doi_values = [store.get_literal(o).value
                  for o in _reserved_objects(store, node, HAS_DOI)]
    authors = tuple(store.get_literal(o).value
                    for o in _reserved_objects(store, node, HAS_AUTHOR))
    years = [store.get_literal(o).value
             for o in _reserved_objects(store, node, HAS_YEAR)]
    year = int(years[0]) if years else None
    return Paper(node, resource.label, doi_values[0] if doi_values else None,
                 authors, year, tuple(contributions))


def list_paper_nodes(store: GraphStore) -> list[str]:
    """Paper nodes in creation order: distinct subjects of linkage statements."""
    predicate = store.find_predicate_by_exact_label(HAS_CONTRIBUTION)
    if predicate is None:
        return []
    seen: dict[str, None] = {}
    for st in store.all_statements():
        if st.predicate == predicate.id:
            seen.setdefault(st.subject, None)
    return list(seen)


def list_contribution_nodes(store: GraphStore) -> list[str]:
    predicate = store.find_predicate_by_exact_label(HAS_CONTRIBUTION)
    if predicate is None:
        return []
    seen: dict[str, None] = {}
    for st in store.all_statements():
        if st.predicate == predicate.id:
            seen.setdefault(st.object, None)
    return list(seen)


def paper_count(store: GraphStore) -> int:
    return len(list_paper_nodes(store))


def contribution_display_label(store: GraphStore, contribution: str) -> str:
    """Column heading for a contribution: its paper's title when linked."""
    predicate = store.find_predicate_by_exact_label(HAS_CONTRIBUTION)
    if predicate is not None:
        for st in store.statements_with_object(contribution):
            if st.predicate == predicate.id:
                return store.node_label(st.subject)
    return store.node_label(contribution)


# ----------------------------------------------------------------------
# bulk import / export (one JSON object per line)

def _spec_from_json(payload: dict) -> ContributionSpec:
    description = []
    for item in payload.get("description", []):
        predicate_label, obj = item
        if isinstance(obj, dict):
            obj = LiteralValue(obj["value"], obj.get("datatype", "string"))
        description.append((predicate_label, obj))
    return ContributionSpec(
        problem=payload.get("problem"),
        method=payload.get("method"),
        results=tuple(payload.get("results", [])),
        complete=payload.get("complete", True),
        description=tuple(description),
    )


def import_papers(store: GraphStore, text: str, agent: str = "bulk-import") -> list[Paper]:
    papers: list[Paper] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            payload = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line_no) from exc
        try:
            specs = [_spec_from_json(c) for c in payload["contributions"]]
            papers.append(create_paper(
                store,
                title=payload["title"],
                doi=payload.get("doi"),
                authors=payload.get("authors", []),
                year=payload.get("year"),
                contributions=specs,
                agent=agent,
            ))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad paper record: {exc}", line_no) from exc
    return papers


def _spec_to_json(store: GraphStore, contribution: ResearchContribution) -> dict:
    description = []
    for st in contribution.extra_statements:
        predicate_label = store.get_predicate(st.predicate).label
        if store.is_literal(st.object):
            literal = store.get_literal(st.object)
            obj: object = {"value": literal.value, "datatype": literal.datatype}
        else:
            obj = store.node_label(st.object)
        description.append([predicate_label, obj])
    payload: dict = {"problem": store.node_label(contribution.problem)
                     if contribution.problem else None}
    if contribution.method:
        payload["method"] = store.node_label(contribution.method)
    payload["results"] = [store.node_label(r) for r in contribution.results]
    payload["complete"] = bool(contribution.results)
    if description:
        payload["description"] = description
    return payload


def export_papers(store: GraphStore) -> str:
    """Re-importable JSON-lines snapshot of every paper."""
    lines = []
    for node in list_paper_nodes(store):
        paper = get_paper(store, node)
        record: dict = {"title": paper.title}
        if paper.doi:
            record["doi"] = paper.doi
        if paper.authors:
            record["authors"] = list(paper.authors)
        if paper.publication_year is not None:
            record["year"] = paper.publication_year
        record["contributions"] = [
            _spec_to_json(store, get_contribution(store, c))
            for c in paper.contributions
        ]
        lines.append(json.dumps(record, ensure_ascii=False, sort_keys=True))
    return "".join(line + "\n" for line in lines)
