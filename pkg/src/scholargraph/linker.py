"""Coverage evaluation of entity-linking services over an annotated corpus.

Coverage is the fraction of corpus entities a linker maps to a target
identifier. Absence of a link is a value, not an error; client failures
count as unlinked and are tallied separately. CI runs against recorded
responses only; the HTTP adapter exists for live runs.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol, Sequence

from .errors import EmptyCorpus, ParseError

CONCEPT_CLASSES = ("process", "method", "material", "data")
UNTAGGED = "untagged"


@dataclass(frozen=True)
class AnnotatedEntity:
    surface_form: str
    doc_id: str
    concept_class: str | None = None

    def __post_init__(self) -> None:
        if not self.surface_form.strip():
            raise ValueError("surface form must be non-empty")
        if self.concept_class is not None and self.concept_class not in CONCEPT_CLASSES:
            raise ValueError(f"unknown concept class: {self.concept_class!r}")


class LinkerClient(Protocol):
    name: str

    def link(self, surface_form: str) -> str | None: ...


@dataclass(frozen=True)
class ClassCoverage:
    linked: int
    total: int

    @property
    def coverage(self) -> float:
        return self.linked / self.total if self.total else 0.0


@dataclass(frozen=True)
class CoverageReport:
    linker: str
    linked: int
    total: int
    failures: int
    per_class: dict[str, ClassCoverage] = field(default_factory=dict)

    @property
    def coverage(self) -> float:
        return self.linked / self.total


def load_corpus(text: str) -> list[AnnotatedEntity]:
    """Tab-separated corpus lines: doc id, surface form, optional class."""
    entities: list[AnnotatedEntity] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) not in (2, 3):
            raise ParseError(f"expected 2 or 3 tab-separated fields, got {len(fields)}",
                             line_no)
        concept_class = fields[2].strip() if len(fields) == 3 and fields[2].strip() else None
        try:
            entities.append(AnnotatedEntity(fields[1], fields[0], concept_class))
        except ValueError as exc:
            raise ParseError(str(exc), line_no) from exc
    return entities


def evaluate(corpus: Sequence[AnnotatedEntity], client: LinkerClient,
             max_workers: int = 1) -> CoverageReport:
    """Coverage of a linker over the corpus; deterministic for a fixed corpus."""
    if not corpus:
        raise EmptyCorpus("corpus is empty")

    def attempt(entity: AnnotatedEntity) -> tuple[str | None, bool]:
        try:
            return client.link(entity.surface_form), False
        except Exception:
            return None, True

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            outcomes = list(pool.map(attempt, corpus))
    else:
        outcomes = [attempt(entity) for entity in corpus]

    linked = 0
    failures = 0
    per_class_counts: dict[str, list[int]] = {}
    for entity, (target, failed) in zip(corpus, outcomes):
        key = entity.concept_class or UNTAGGED
        bucket = per_class_counts.setdefault(key, [0, 0])
        bucket[1] += 1
        if failed:
            failures += 1
        elif target is not None:
            linked += 1
            bucket[0] += 1
    per_class = {key: ClassCoverage(linked=c[0], total=c[1])
                 for key, c in sorted(per_class_counts.items())}
    return CoverageReport(client.name, linked, len(corpus), failures, per_class)


def report_to_csv(report: CoverageReport) -> str:
    lines = ["linker,class,linked,total,coverage"]
    lines.append(f"{report.linker},all,{report.linked},{report.total},"
                 f"{report.coverage:.6f}")
    for key, cov in report.per_class.items():
        lines.append(f"{report.linker},{key},{cov.linked},{cov.total},"
                     f"{cov.coverage:.6f}")
    return "".join(line + "\n" for line in lines)


class FixtureLinker:
    """Recorded-response client: surface form to target id (empty = unlinked)."""

    def __init__(self, path: str | os.PathLike):
        self.name = f"fixture:{Path(path).name}"
        self._responses: dict[str, str | None] = {}
        for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(),
                                       start=1):
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) not in (1, 2):
                raise ParseError("expected 'surface<TAB>target' or 'surface'", line_no)
            target = fields[1].strip() if len(fields) == 2 else ""
            self._responses[fields[0]] = target or None

    def link(self, surface_form: str) -> str | None:
        return self._responses.get(surface_form)


class StaticLinker:
    """In-memory client for tests."""

    def __init__(self, name: str, responses: dict[str, str | None]):
        self.name = name
        self._responses = responses

    def link(self, surface_form: str) -> str | None:
        return self._responses.get(surface_form)


class HttpLinker:
    """Generic JSON-over-HTTP adapter with per-call timeout and disk cache.

    The target identifier is extracted from the response body by walking
    ``result_path`` (a sequence of keys/indexes); a missing path means no
    link. API keys come from the environment so configurations stay inert
    in CI.
    """

    def __init__(self, name: str, base_url: str,
                 api_key_env: str | None = None,
                 result_path: Sequence[object] = ("entities", 0, "id"),
                 timeout_s: float = 10.0,
                 cache_dir: str | os.PathLike | None = None,
                 fetch=None):
        self.name = name
        self.base_url = base_url
        self.api_key = os.environ.get(api_key_env) if api_key_env else None
        self.result_path = tuple(result_path)
        self.timeout_s = timeout_s
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self._fetch = fetch or self._requests_fetch

    def _requests_fetch(self, url: str, params: dict, headers: dict) -> dict:
        import requests

        response = requests.get(url, params=params, headers=headers,
                                timeout=self.timeout_s)
        response.raise_for_status()
        return response.json()

    def _cache_path(self, surface_form: str) -> Path | None:
        if self.cache_dir is None:
            return None
        import hashlib

        digest = hashlib.sha256(f"{self.name}:{surface_form}".encode()).hexdigest()
        return self.cache_dir / f"{digest}.json"

    def link(self, surface_form: str) -> str | None:
        cache_path = self._cache_path(surface_form)
        if cache_path is not None and cache_path.exists():
            payload = json.loads(cache_path.read_text(encoding="utf-8"))
        else:
            headers = {"Accept": "application/json"}
            if self.api_key:
                headers["Authorization"] = f"Bearer {self.api_key}"
            payload = self._fetch(self.base_url, {"text": surface_form}, headers)
            if cache_path is not None:
                cache_path.parent.mkdir(parents=True, exist_ok=True)
                cache_path.write_text(json.dumps(payload), encoding="utf-8")
        value: object = payload
        for step in self.result_path:
            try:
                value = value[step]  # type: ignore[index]
            except (KeyError, IndexError, TypeError):
                return None
        return str(value) if value is not None else None
