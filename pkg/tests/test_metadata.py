from __future__ import annotations

from scholargraph.metadata import resolve_doi

CROSSREF_PAYLOAD = {
    "message": {
        "title": ["Structured descriptions of research"],
        "author": [{"given": "Ada", "family": "Lovelace"},
                   {"given": "Alan", "family": "Turing"}],
        "issued": {"date-parts": [[2019, 5]]},
    }
}

DATACITE_PAYLOAD = {
    "data": {
        "attributes": {
            "titles": [{"title": "A dataset of contributions"}],
            "creators": [{"name": "Grace Hopper"}],
            "publicationYear": 2020,
        }
    }
}


def test_crossref_resolution():
    def fetch(url, timeout):
        assert "api.crossref.org" in url
        return CROSSREF_PAYLOAD

    meta = resolve_doi("10.1000/x", fetch=fetch)
    assert meta.title == "Structured descriptions of research"
    assert meta.authors == ("Ada Lovelace", "Alan Turing")
    assert meta.year == 2019
    assert meta.source == "crossref"


def test_datacite_fallback():
    def fetch(url, timeout):
        if "crossref" in url:
            return None
        return DATACITE_PAYLOAD

    meta = resolve_doi("10.5281/zenodo.1", fetch=fetch)
    assert meta.title == "A dataset of contributions"
    assert meta.source == "datacite"
    assert meta.year == 2020


def test_unresolvable_doi_returns_none():
    meta = resolve_doi("10.9999/nope", fetch=lambda url, timeout: None)
    assert meta is None


def test_cache_short_circuits_fetch(tmp_path):
    calls = []

    def fetch(url, timeout):
        calls.append(url)
        return CROSSREF_PAYLOAD

    first = resolve_doi("10.1000/x", cache_dir=tmp_path, fetch=fetch)
    second = resolve_doi("10.1000/x", cache_dir=tmp_path,
                         fetch=lambda url, timeout: (_ for _ in ()).throw(
                             AssertionError("network hit")))
    assert first == second
    assert calls == ["https://api.crossref.org/works/10.1000%2Fx"]


def test_negative_result_cached(tmp_path):
    resolve_doi("10.9999/nope", cache_dir=tmp_path, fetch=lambda u, t: None)
    cached = resolve_doi("10.9999/nope", cache_dir=tmp_path,
                         fetch=lambda u, t: CROSSREF_PAYLOAD)
    assert cached is None
