"""Optional DOI metadata resolution against public registries.

Enrichment only: the engine never requires network access. Responses are
cached on disk so a populated cache keeps resolution fully offline.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Callable
from urllib.parse import quote

CROSSREF_URL = "https://api.crossref.org/works/{doi}"
DATACITE_URL = "https://api.datacite.org/dois/{doi}"

Fetcher = Callable[[str, float], "dict | None"]


@dataclass(frozen=True)
class PaperMetadata:
    doi: str
    title: str | None
    authors: tuple[str, ...]
    year: int | None
    source: str


def _requests_fetch(url: str, timeout_s: float) -> dict | None:
    import requests

    response = requests.get(url, headers={"Accept": "application/json"},
                            timeout=timeout_s)
    if response.status_code != 200:
        return None
    return response.json()


def _parse_crossref(doi: str, payload: dict) -> PaperMetadata | None:
    message = payload.get("message")
    if not isinstance(message, dict):
        return None
    titles = message.get("title") or []
    authors = tuple(
        " ".join(part for part in (a.get("given"), a.get("family")) if part)
        for a in message.get("author", []) if isinstance(a, dict)
    )
    year = None
    issued = message.get("issued", {}).get("date-parts", [])
    if issued and issued[0]:
        year = issued[0][0]
    return PaperMetadata(doi, titles[0] if titles else None, authors, year,
                         "crossref")


def _parse_datacite(doi: str, payload: dict) -> PaperMetadata | None:
    attributes = payload.get("data", {}).get("attributes")
    if not isinstance(attributes, dict):
        return None
    titles = [t.get("title") for t in attributes.get("titles", []) if t.get("title")]
    authors = tuple(c.get("name") for c in attributes.get("creators", [])
                    if c.get("name"))
    return PaperMetadata(doi, titles[0] if titles else None, authors,
                         attributes.get("publicationYear"), "datacite")


def resolve_doi(doi: str, cache_dir: str | os.PathLike | None = None,
                fetch: Fetcher | None = None,
                timeout_s: float = 10.0) -> PaperMetadata | None:
    """Resolve title/authors/year for a DOI; None when no registry knows it."""
    fetch = fetch or _requests_fetch
    cache_path = None
    if cache_dir is not None:
        digest = hashlib.sha256(doi.encode()).hexdigest()
        cache_path = Path(cache_dir) / f"{digest}.json"
        if cache_path.exists():
            cached = json.loads(cache_path.read_text(encoding="utf-8"))
            if cached is None:
                return None
            return PaperMetadata(cached["doi"], cached["title"],
                                 tuple(cached["authors"]), cached["year"],
                                 cached["source"])

    resolved: PaperMetadata | None = None
    payload = fetch(CROSSREF_URL.format(doi=quote(doi, safe="")), timeout_s)
    if payload is not None:
        resolved = _parse_crossref(doi, payload)
    if resolved is None:
        payload = fetch(DATACITE_URL.format(doi=quote(doi, safe="")), timeout_s)
        if payload is not None:
            resolved = _parse_datacite(doi, payload)

    if cache_path is not None:
        cache_path.parent.mkdir(parents=True, exist_ok=True)
        body = None if resolved is None else {
            "doi": resolved.doi, "title": resolved.title,
            "authors": list(resolved.authors), "year": resolved.year,
            "source": resolved.source,
        }
        cache_path.write_text(json.dumps(body), encoding="utf-8")
    return resolved
