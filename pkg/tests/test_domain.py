from __future__ import annotations

import pytest

from scholargraph import domain
from scholargraph.domain import ContributionSpec, LiteralValue
from scholargraph.errors import (
    EmptyLabel,
    InvalidDoi,
    MissingProblem,
    MissingResult,
    ParseError,
    UnknownReferent,
)
from scholargraph.graph import GraphStore


def make_paper(store, **overrides):
    kwargs = dict(
        title="Quick Sort paper",
        doi=None,
        authors=("A. Author",),
        year=1962,
        contributions=[ContributionSpec(problem="sorting",
                                        results=("O(n log n) average",))],
    )
    kwargs.update(overrides)
    return domain.create_paper(store, **kwargs)


def test_create_paper_single_contribution(store):
    paper = make_paper(store)
    assert len(paper.contributions) == 1
    assert store.get_resource(paper.node).label == "Quick Sort paper"


def test_create_paper_round_trip(store):
    paper = make_paper(store, doi="10.1000/quick.sort", year=1962)
    fetched = domain.get_paper(store, paper.node)
    assert fetched == paper


def test_missing_result_for_complete_spec(store):
    with pytest.raises(MissingResult):
        make_paper(store, contributions=[ContributionSpec(problem="sorting")])


def test_draft_spec_may_lack_results(store):
    paper = make_paper(store,
                       contributions=[ContributionSpec(problem="sorting",
                                                       complete=False)])
    report = domain.validate_contribution(store, paper.contributions[0])
    assert not report.ok
    assert report.missing == ("missing result",)


def test_problem_always_required(store):
    with pytest.raises(MissingProblem):
        make_paper(store, contributions=[ContributionSpec(problem=None,
                                                          complete=False)])


def test_invalid_doi(store):
    with pytest.raises(InvalidDoi):
        make_paper(store, doi="not-a-doi")


def test_empty_title(store):
    with pytest.raises(EmptyLabel):
        make_paper(store, title="   ")


def test_at_least_one_contribution(store):
    with pytest.raises(ValueError):
        make_paper(store, contributions=[])


def test_validate_contribution_complete(store):
    paper = make_paper(store)
    report = domain.validate_contribution(store, paper.contributions[0])
    assert report.ok
    assert report.missing == ()


def test_validate_non_contribution_resource(store):
    plain = store.create_resource("just a node")
    report = domain.validate_contribution(store, plain.id)
    assert report.missing == ("missing problem", "missing result")


def test_validate_unknown_node(store):
    with pytest.raises(UnknownReferent):
        domain.validate_contribution(store, "R404")


def test_describe_freely_creates_and_reuses(store):
    paper = make_paper(store)
    contribution = paper.contributions[0]
    first = domain.describe_freely(store, contribution,
                                   [("uses", "Lepidoptera genome")])
    assert len(first) == 1
    second = domain.describe_freely(store, contribution,
                                    [("uses", "CRISPR-Cas9")])
    assert second[0].predicate == first[0].predicate
    assert domain.describe_freely(store, contribution, []) == []


def test_describe_freely_is_append_only(store):
    paper = make_paper(store)
    contribution = paper.contributions[0]
    before = [s.id for s in store.statements_about(contribution)]
    domain.describe_freely(store, contribution, [("uses", "X")])
    after = [s.id for s in store.statements_about(contribution)]
    assert after[:len(before)] == before


def test_describe_freely_literal_objects(store):
    paper = make_paper(store)
    contribution = paper.contributions[0]
    statements = domain.describe_freely(
        store, contribution, [("accuracy", LiteralValue("97.5", "decimal"))])
    literal = store.get_literal(statements[0].object)
    assert (literal.value, literal.datatype) == ("97.5", "decimal")


def test_problem_resources_shared_between_papers(store):
    first = make_paper(store)
    second = make_paper(store, title="Merge Sort paper")
    c1 = domain.get_contribution(store, first.contributions[0])
    c2 = domain.get_contribution(store, second.contributions[0])
    assert c1.problem == c2.problem


def test_get_contribution_fields(store):
    paper = make_paper(store, contributions=[
        ContributionSpec(problem="sorting", method="divide and conquer",
                         results=("fast", "stable"),
                         description=(("uses", "arrays"),))])
    contribution = domain.get_contribution(store, paper.contributions[0])
    assert store.node_label(contribution.problem) == "sorting"
    assert store.node_label(contribution.method) == "divide and conquer"
    assert [store.node_label(r) for r in contribution.results] == ["fast", "stable"]
    assert len(contribution.extra_statements) == 1


def test_contribution_display_label_uses_paper_title(store):
    paper = make_paper(store)
    label = domain.contribution_display_label(store, paper.contributions[0])
    assert label == "Quick Sort paper"
    loose = store.create_resource("standalone contribution")
    assert domain.contribution_display_label(store, loose.id) == "standalone contribution"


def test_paper_listing_order(store):
    first = make_paper(store)
    second = make_paper(store, title="Merge Sort paper")
    assert domain.list_paper_nodes(store) == [first.node, second.node]
    assert domain.paper_count(store) == 2
    assert domain.list_contribution_nodes(store) == [
        first.contributions[0], second.contributions[0]]


BULK = """\
{"title": "Quick Sort paper", "doi": "10.1000/qs", "authors": ["A. Author"], "year": 1962, "contributions": [{"problem": "sorting", "results": ["O(n log n) average"], "description": [["uses", "arrays"], ["accuracy", {"value": "97.5", "datatype": "decimal"}]]}]}
{"title": "Merge Sort paper", "contributions": [{"problem": "sorting", "method": "divide and conquer", "results": ["stable sort"]}]}
"""


def test_bulk_import(store):
    papers = domain.import_papers(store, BULK)
    assert [p.title for p in papers] == ["Quick Sort paper", "Merge Sort paper"]
    assert papers[0].doi == "10.1000/qs"


def test_bulk_import_bad_json(store):
    with pytest.raises(ParseError) as exc:
        domain.import_papers(store, '{"title": "x"\n')
    assert exc.value.line == 1


def test_bulk_round_trip_identical_graphs():
    from scholargraph.bench import counter_clock

    first = GraphStore(clock=counter_clock())
    domain.import_papers(first, BULK)
    exported = domain.export_papers(first)

    second = GraphStore(clock=counter_clock())
    domain.import_papers(second, exported)
    assert second.dumps() == first.dumps()
    assert domain.export_papers(second) == exported
