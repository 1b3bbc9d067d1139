from __future__ import annotations

import random

import pytest

from scholargraph.errors import ParseError
from scholargraph.graph import GraphStore
from scholargraph.rdf import (
    RDFS_LABEL,
    UriScheme,
    export_ntriples,
    import_ntriples,
    parse_ntriples,
)

XSD_INT = "http://www.w3.org/2001/XMLSchema#integer"


def test_empty_store_exports_nothing(store):
    assert export_ntriples(store) == ""


def test_export_single_statement(store):
    r = store.create_resource("Quick Sort")
    p = store.create_predicate("uses")
    l = store.create_literal("42", "integer")
    store.create_statement(r.id, p.id, l.id)
    lines = export_ntriples(store).splitlines()
    assert len(lines) == 3  # statement + two label triples
    assert (f"<http://orkg.example/resource/R1> <http://orkg.example/predicate/P1> "
            f'"42"^^<{XSD_INT}> .') in lines
    assert f'<http://orkg.example/resource/R1> <{RDFS_LABEL}> "Quick Sort" .' in lines
    assert f'<http://orkg.example/predicate/P1> <{RDFS_LABEL}> "uses" .' in lines


def test_export_sorted_and_idempotent(store):
    for i in range(5):
        store.create_resource(f"node {i}")
    first = export_ntriples(store)
    assert first == export_ntriples(store)
    assert first.splitlines() == sorted(first.splitlines())


def test_export_line_count_law(store):
    r1 = store.create_resource("A")
    r2 = store.create_resource("B")
    p = store.create_predicate("uses")
    store.create_statement(r1.id, p.id, r2.id)
    store.create_statement(r1.id, p.id, r2.id)
    store.create_literal("unreferenced")
    text = export_ntriples(store)
    labeled_entities = 3  # two resources + one predicate; literals carry no label
    assert len(text.splitlines()) == store.statement_count() + labeled_entities


def test_every_exported_line_parses(store):
    r = store.create_resource('tricky "label"\nwith newline\tand tab \\')
    p = store.create_predicate("says")
    l = store.create_literal('multi\nline "quoted" value')
    store.create_statement(r.id, p.id, l.id)
    text = export_ntriples(store)
    triples = parse_ntriples(text)
    assert len(triples) == len(text.splitlines())
    literal_values = [t[2][1] for t in triples if t[2][0] == "literal"]
    assert 'multi\nline "quoted" value' in literal_values


def test_self_import_reexport_byte_identical(store):
    r1 = store.create_resource("Quick Sort")
    r2 = store.create_resource("Merge Sort")
    p = store.create_predicate("compares with")
    store.create_statement(r1.id, p.id, r2.id)
    store.create_statement(r1.id, p.id, store.create_literal("98", "integer").id)
    first = export_ntriples(store)
    report = import_ntriples(store, first)
    assert report.statements_created == 0
    assert report.resources_created == 0
    assert export_ntriples(store) == first


def test_foreign_triple_creates_entities(store):
    report = import_ntriples(store, '<http://ex/a> <http://ex/p> "x" .\n')
    assert (report.resources_created, report.predicates_created,
            report.literals_created, report.statements_created) == (1, 1, 1, 1)
    resource = store.find_resource_by_exact_label("http://ex/a")
    assert resource is not None
    predicate = store.find_predicate_by_exact_label("http://ex/p")
    assert predicate is not None


def test_foreign_import_respects_label_triples(store):
    text = ('<http://ex/a> <http://ex/p> "x" .\n'
            f'<http://ex/a> <{RDFS_LABEL}> "Entity A" .\n'
            f'<http://ex/p> <{RDFS_LABEL}> "property p" .\n')
    import_ntriples(store, text)
    assert store.find_resource_by_exact_label("Entity A") is not None
    assert store.find_predicate_by_exact_label("property p") is not None


def test_import_round_trip_into_fresh_store(store):
    r1 = store.create_resource("Quick Sort")
    r2 = store.create_resource("Merge Sort")
    p = store.create_predicate("compares with")
    store.create_statement(r1.id, p.id, r2.id)
    exported = export_ntriples(store)
    fresh = GraphStore()
    import_ntriples(fresh, exported)
    assert export_ntriples(fresh) == exported  # same ids, same bytes


def test_malformed_line_raises_and_applies_nothing(store):
    text = ('<http://ex/a> <http://ex/p> "x" .\n'
            "this is not a triple\n")
    with pytest.raises(ParseError) as exc:
        import_ntriples(store, text)
    assert exc.value.line == 2
    assert store.statement_count() == 0
    assert store.node_count() == 0


def test_import_typed_literals(store):
    text = (f'<http://ex/a> <http://ex/p> "42"^^<{XSD_INT}> .\n'
            '<http://ex/a> <http://ex/q> "plain"@en .\n')
    import_ntriples(store, text)
    assert store.find_literal_by_value("42", "integer") is not None
    assert store.find_literal_by_value("plain", "string") is not None


def test_import_malformed_typed_value_falls_back_to_string(store):
    import_ntriples(store, f'<http://ex/a> <http://ex/p> "abc"^^<{XSD_INT}> .\n')
    assert store.find_literal_by_value("abc", "string") is not None


def test_import_blank_nodes(store):
    import_ntriples(store, '_:b0 <http://ex/p> _:b1 .\n')
    assert store.statement_count() == 1
    assert store.resource_count() == 2


def test_scheme_validation():
    with pytest.raises(ValueError):
        UriScheme(base="http://no-slash.example")


def _random_store(rng: random.Random) -> GraphStore:
    store = GraphStore()
    resources = [store.create_resource(f"res {rng.randint(0, 999)} {i}")
                 for i in range(rng.randint(1, 6))]
    predicates = [store.create_predicate(f"pred {rng.randint(0, 999)} {i}")
                  for i in range(rng.randint(1, 4))]
    literals = [store.create_literal(str(rng.randint(0, 99)), "integer")
                if rng.random() < 0.5 else
                store.create_literal(f"text {rng.randint(0, 99)}")
                for _ in range(rng.randint(0, 4))]
    for _ in range(rng.randint(0, 12)):
        subject = rng.choice(resources)
        predicate = rng.choice(predicates)
        objects = resources + literals
        store.create_statement(subject.id, predicate.id, rng.choice(objects).id)
    return store


def test_randomized_round_trips():
    rng = random.Random(99)
    for _ in range(30):
        store = _random_store(rng)
        exported = export_ntriples(store)
        parse_ntriples(exported)
        import_ntriples(store, exported)
        assert export_ntriples(store) == exported
