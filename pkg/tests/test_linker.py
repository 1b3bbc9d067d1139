from __future__ import annotations

import random

import pytest

from conftest import FIXTURES
from scholargraph.errors import EmptyCorpus, ParseError
from scholargraph.linker import (
    AnnotatedEntity,
    FixtureLinker,
    HttpLinker,
    StaticLinker,
    evaluate,
    load_corpus,
    report_to_csv,
)

CORPUS_PATH = FIXTURES / "corpus.tsv"
RESPONSES_PATH = FIXTURES / "linker_responses.tsv"


def entities(n=4):
    return [AnnotatedEntity(f"term {i}", f"doc{i}") for i in range(n)]


def test_entity_validation():
    with pytest.raises(ValueError):
        AnnotatedEntity("  ", "doc1")
    with pytest.raises(ValueError):
        AnnotatedEntity("x", "doc1", "verb")
    assert AnnotatedEntity("x", "doc1", "process").concept_class == "process"


def test_load_corpus():
    corpus = load_corpus(CORPUS_PATH.read_text(encoding="utf-8"))
    assert len(corpus) == 8
    assert corpus[0].surface_form == "electrophoresis"
    assert corpus[0].concept_class == "process"


def test_load_corpus_rejects_bad_rows():
    with pytest.raises(ParseError):
        load_corpus("only-one-field\n")


def test_coverage_three_of_four():
    corpus = entities(4)
    client = StaticLinker("mock", {e.surface_form: "id" for e in corpus[:3]})
    report = evaluate(corpus, client)
    assert report.coverage == 0.75
    assert (report.linked, report.total) == (3, 4)


def test_coverage_full():
    corpus = entities(4)
    client = StaticLinker("mock", {e.surface_form: "id" for e in corpus})
    assert evaluate(corpus, client).coverage == 1.0


def test_empty_corpus_rejected():
    with pytest.raises(EmptyCorpus):
        evaluate([], StaticLinker("mock", {}))


def test_client_failures_count_as_unlinked():
    corpus = entities(4)

    class Flaky:
        name = "flaky"

        def link(self, surface_form):
            if surface_form.endswith("0"):
                raise TimeoutError("simulated timeout")
            return "id"

    report = evaluate(corpus, Flaky())
    assert report.failures == 1
    assert report.linked == 3
    assert report.coverage == 0.75


def test_ranking_matches_link_counts():
    corpus = entities(10)
    reports = []
    for linked in (2, 7, 5):
        client = StaticLinker(f"mock{linked}",
                              {e.surface_form: "id" for e in corpus[:linked]})
        reports.append(evaluate(corpus, client))
    ranked = sorted(reports, key=lambda r: -r.coverage)
    assert [r.linker for r in ranked] == ["mock7", "mock5", "mock2"]


def test_order_independence():
    corpus = load_corpus(CORPUS_PATH.read_text(encoding="utf-8"))
    client = FixtureLinker(RESPONSES_PATH)
    forward = evaluate(corpus, client)
    shuffled = corpus[:]
    random.Random(3).shuffle(shuffled)
    backward = evaluate(shuffled, client)
    assert forward.coverage == backward.coverage
    assert forward.per_class == backward.per_class


def test_concurrent_evaluation_is_deterministic():
    corpus = load_corpus(CORPUS_PATH.read_text(encoding="utf-8"))
    client = FixtureLinker(RESPONSES_PATH)
    serial = evaluate(corpus, client, max_workers=1)
    parallel = evaluate(corpus, client, max_workers=4)
    assert serial == parallel


def test_fixture_report_byte_reproducible():
    corpus = load_corpus(CORPUS_PATH.read_text(encoding="utf-8"))
    client = FixtureLinker(RESPONSES_PATH)
    first = report_to_csv(evaluate(corpus, client))
    second = report_to_csv(evaluate(corpus, client))
    assert first == second
    lines = first.splitlines()
    assert lines[0] == "linker,class,linked,total,coverage"
    assert lines[1] == "fixture:linker_responses.tsv,all,5,8,0.625000"
    assert "fixture:linker_responses.tsv,process,2,2,1.000000" in lines
    assert "fixture:linker_responses.tsv,data,0,2,0.000000" in lines


def test_per_class_breakdown():
    corpus = [
        AnnotatedEntity("a", "d", "process"),
        AnnotatedEntity("b", "d", "process"),
        AnnotatedEntity("c", "d", "data"),
        AnnotatedEntity("d", "d"),
    ]
    client = StaticLinker("mock", {"a": "id", "c": "id"})
    report = evaluate(corpus, client)
    assert report.per_class["process"].linked == 1
    assert report.per_class["process"].total == 2
    assert report.per_class["data"].coverage == 1.0
    assert report.per_class["untagged"].coverage == 0.0


def test_http_linker_with_fake_transport_and_cache(tmp_path):
    calls = []

    def fake_fetch(url, params, headers):
        calls.append(params["text"])
        if params["text"] == "known":
            return {"entities": [{"id": "Q1"}]}
        return {"entities": []}

    client = HttpLinker("fake", "https://linker.example/api",
                        cache_dir=tmp_path, fetch=fake_fetch)
    assert client.link("known") == "Q1"
    assert client.link("unknown") is None
    assert client.link("known") == "Q1"  # served from cache
    assert calls == ["known", "unknown"]
