from __future__ import annotations

import pytest

from scholargraph import domain
from scholargraph.bench import (
    NODES_PER_PAPER,
    STATEMENTS_PER_PAPER,
    SyntheticSpec,
    TimingReport,
    bench_comparison,
    bench_fetch,
    comparison_table_csv,
    counter_clock,
    environment_note,
    fetch_paper_with_contribution,
    generate,
    make_comparison_fixture,
    reports_csv,
)


def test_spec_rejects_zero_papers():
    with pytest.raises(ValueError):
        SyntheticSpec(paper_count=0)


def test_single_paper_node_law():
    store = generate(SyntheticSpec(paper_count=1, seed=0))
    assert store.node_count() == NODES_PER_PAPER
    assert store.statement_count() == STATEMENTS_PER_PAPER


@pytest.mark.parametrize("papers", [1, 7, 40])
def test_node_and_statement_law_scales(papers):
    store = generate(SyntheticSpec(paper_count=papers, seed=3))
    assert store.node_count() == NODES_PER_PAPER * papers
    assert store.statement_count() == STATEMENTS_PER_PAPER * papers


def test_generator_determinism():
    first = generate(SyntheticSpec(paper_count=50, seed=123)).dumps()
    second = generate(SyntheticSpec(paper_count=50, seed=123)).dumps()
    assert first == second
    different = generate(SyntheticSpec(paper_count=50, seed=124)).dumps()
    assert different != first


def test_generated_papers_are_fetchable():
    store = generate(SyntheticSpec(paper_count=5, seed=1))
    papers = domain.list_paper_nodes(store)
    assert len(papers) == 5
    paper = domain.get_paper(store, papers[2])
    assert len(paper.contributions) == 1
    statements = store.statements_about(paper.contributions[0])
    assert len(statements) == 4  # problem linkage + three descriptions
    assert fetch_paper_with_contribution(store, papers[2]) == 4


def test_counter_clock_is_monotonic():
    clock = counter_clock()
    values = [clock() for _ in range(10)]
    assert values == sorted(values)
    assert len(set(values)) == len(values)


def test_bench_fetch_report_shape():
    store = generate(SyntheticSpec(paper_count=50, seed=0))
    report = bench_fetch(store, samples=30, seed=0, warmup=2)
    assert report.sample_count >= 30
    assert report.median_s <= report.p95_s
    assert report.mean_s > 0
    assert "cpu_count=" in report.environment


def test_bench_fetch_rejects_empty_store(store):
    with pytest.raises(ValueError):
        bench_fetch(store)


def test_comparison_fixture_shape():
    store, table, ids = make_comparison_fixture(contributions=4,
                                                predicates_per_contribution=10,
                                                pool_size=12, seed=5)
    assert len(ids) == 4
    for contribution in ids:
        assert len(store.statements_about(contribution)) == 10
    assert table.dimension == 32


def test_bench_comparison_reports_and_csv():
    store, table, ids = make_comparison_fixture(contributions=4,
                                                predicates_per_contribution=6,
                                                pool_size=8, seed=5)
    reports = bench_comparison(store, table, ids, sizes=[2, 3],
                               engine_samples=30, engine_warmup=2,
                               baseline_budget_s=30.0)
    operations = [r.operation for r in reports]
    assert "compare[size=2]" in operations
    assert "compare_baseline[size=2]" in operations
    engine = next(r for r in reports if r.operation == "compare[size=2]")
    assert engine.sample_count >= 30
    csv_text = comparison_table_csv(reports)
    lines = csv_text.splitlines()
    assert lines[0] == "approach,2,3"
    assert lines[1].startswith("baseline,")
    assert lines[2].startswith("engine,")
    detail = reports_csv(reports)
    assert detail.splitlines()[0].startswith("operation,samples,")


def test_bench_comparison_size_validation():
    store, table, ids = make_comparison_fixture(contributions=3, seed=5,
                                                predicates_per_contribution=4,
                                                pool_size=6)
    with pytest.raises(ValueError):
        bench_comparison(store, table, ids, sizes=[5])


def test_environment_note_mentions_python():
    assert "python=" in environment_note()


def test_report_is_plain_data():
    report = TimingReport("op", 30, 0.1, 0.1, 0.2, "env")
    assert report.operation == "op"
