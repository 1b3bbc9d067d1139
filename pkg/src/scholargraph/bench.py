"""Synthetic dataset generation and wall-clock benchmarks.

The generator materializes a fixed per-paper template: ten nodes (paper,
contribution, problem, method, result, author and field resources plus
three description literals) and five statements (contribution linkage,
problem linkage and three description statements). Output is deterministic
per (paper_count, seed), including timestamps, so dumps are byte-identical.

The comparison benchmark mirrors the two-approach timing table: the engine
route against the brute-force baseline on a fixture of contributions with
roughly forty predicates each. Baseline runs are capped by a time budget
because their cost grows exponentially with the number of contributions.
"""

from __future__ import annotations

import csv
import io
import os
import platform
import random
import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import domain
from .comparison import ComparisonConfig, compare, compare_baseline
from .embeddings import EmbeddingTable
from .graph import GraphStore

GENERATOR_EPOCH_MS = 1_577_836_800_000  # 2020-01-01T00:00:00Z
NODES_PER_PAPER = 10
STATEMENTS_PER_PAPER = 5

_ADJECTIVES = ["adaptive", "robust", "scalable", "neural", "sparse", "hybrid",
               "parallel", "bayesian", "efficient", "modular", "semantic",
               "probabilistic", "incremental", "distributed", "compact"]
_NOUNS = ["sorting", "alignment", "clustering", "retrieval", "parsing",
          "annotation", "classification", "segmentation", "indexing",
          "sampling", "editing", "linking", "reasoning", "ranking", "storage"]
_FIELDS = ["genomics", "linguistics", "databases", "robotics", "chemistry",
           "astronomy", "ecology", "materials", "medicine", "economics"]
_SURNAMES = ["Ada", "Bose", "Curie", "Darwin", "Euler", "Franklin", "Gauss",
             "Hopper", "Ibn Sina", "Jemison", "Kepler", "Lovelace"]
_DESCRIPTION_PREDICATES = ["uses", "evaluates on", "achieves", "measures",
                           "reports", "requires", "applies to", "compares with",
                           "implements", "extends"]
_VALUE_UNITS = ["ms", "s", "%", "MB", "nodes", "samples"]


@dataclass(frozen=True)
class SyntheticSpec:
    paper_count: int
    seed: int = 0
    predicates_per_contribution: int = 3

    def __post_init__(self) -> None:
        if self.paper_count < 1:
            raise ValueError("paper_count must be >= 1")


@dataclass(frozen=True)
class TimingReport:
    operation: str
    sample_count: int
    mean_s: float
    median_s: float
    p95_s: float
    environment: str


def counter_clock(start_ms: int = GENERATOR_EPOCH_MS) -> Callable[[], int]:
    """Monotonically increasing millisecond clock for reproducible stores."""
    state = {"ms": start_ms}

    def tick() -> int:
        state["ms"] += 1
        return state["ms"]

    return tick


def environment_note() -> str:
    mem_gb = _total_memory_gb()
    mem = f"{mem_gb:.1f}" if mem_gb is not None else "unknown"
    return (f"cpu_count={os.cpu_count()} mem_gb={mem} "
            f"python={platform.python_version()} machine={platform.machine()}")


def _total_memory_gb() -> float | None:
    try:
        with open("/proc/meminfo", encoding="ascii") as fh:
            for line in fh:
                if line.startswith("MemTotal:"):
                    return int(line.split()[1]) / (1024 * 1024)
    except OSError:
        pass
    return None


def generate(spec: SyntheticSpec, data_dir: str | os.PathLike | None = None) -> GraphStore:
    """Populate a store with the per-paper template; deterministic per spec."""
    rng = random.Random(spec.seed)
    store = GraphStore(data_dir=data_dir, clock=counter_clock())
    p_has_contribution = store.create_predicate(domain.HAS_CONTRIBUTION).id
    p_addresses = store.create_predicate(domain.ADDRESSES).id
    description_pool = [store.create_predicate(label).id
                        for label in _DESCRIPTION_PREDICATES]

    for index in range(1, spec.paper_count + 1):
        adjective = rng.choice(_ADJECTIVES)
        noun = rng.choice(_NOUNS)
        field = rng.choice(_FIELDS)
        paper = store.create_resource(
            f"On {adjective} {noun} for {field} ({index})", {"Paper"}).id
        contribution = store.create_resource(f"Contribution {index}",
                                             {"Contribution"}).id
        problem = store.create_resource(f"{noun} in {field}", {"Problem"}).id
        store.create_resource(f"{adjective} {rng.choice(_NOUNS)} method",
                              {"Method"})
        store.create_resource(
            f"{rng.randint(1, 99)}.{rng.randint(0, 9)} {rng.choice(_VALUE_UNITS)} "
            f"{rng.choice(_NOUNS)}", {"Result"})
        store.create_resource(rng.choice(_SURNAMES) + f" {index}", {"Author"})
        store.create_resource(f"field of {rng.choice(_FIELDS)}", {"Field"})

        store.create_statement(paper, p_has_contribution, contribution, "generator")
        store.create_statement(contribution, p_addresses, problem, "generator")
        predicates = rng.sample(description_pool, spec.predicates_per_contribution)
        for predicate in predicates:
            literal = store.create_literal(
                f"{rng.randint(0, 999)}.{rng.randint(0, 99):02d} "
                f"{rng.choice(_VALUE_UNITS)}").id
            store.create_statement(contribution, predicate, literal, "generator")
    return store


def fetch_paper_with_contribution(store: GraphStore, paper_node: str) -> int:
    """The benchmarked operation: paper record plus contribution statements."""
    paper = domain.get_paper(store, paper_node)
    touched = 0
    for contribution in paper.contributions:
        touched += len(store.statements_about(contribution))
    return touched


def _percentile(sorted_values: Sequence[float], fraction: float) -> float:
    if not sorted_values:
        return 0.0
    index = min(len(sorted_values) - 1, int(round(fraction * (len(sorted_values) - 1))))
    return sorted_values[index]


def _time_samples(fn: Callable[[], object], samples: int, warmup: int) -> list[float]:
    for _ in range(warmup):
        fn()
    durations = []
    for _ in range(samples):
        start = time.perf_counter()
        fn()
        durations.append(time.perf_counter() - start)
    return durations


def _report(operation: str, durations: list[float], note: str = "") -> TimingReport:
    ordered = sorted(durations)
    environment = environment_note() + (f" {note}" if note else "")
    return TimingReport(
        operation=operation,
        sample_count=len(durations),
        mean_s=statistics.fmean(durations),
        median_s=statistics.median(durations),
        p95_s=_percentile(ordered, 0.95),
        environment=environment,
    )


def bench_fetch(store: GraphStore, samples: int = 100, seed: int = 0,
                warmup: int = 10) -> TimingReport:
    """Time fetching one random paper with its contribution statements."""
    if store.statement_count() == 0:
        raise ValueError("store is empty")
    papers = domain.list_paper_nodes(store)
    if not papers:
        raise ValueError("store has no papers")
    samples = max(samples, 30)
    rng = random.Random(seed)
    picks = [papers[rng.randrange(len(papers))] for _ in range(samples + warmup)]
    iterator = iter(picks)

    durations = _time_samples(lambda: fetch_paper_with_contribution(store, next(iterator)),
                              samples, warmup)
    return _report(f"fetch_paper[papers={len(papers)}]", durations)


def make_comparison_fixture(contributions: int = 8,
                            predicates_per_contribution: int = 40,
                            pool_size: int = 48, seed: int = 7,
                            synonym_pairs: int = 6,
                            dimension: int = 32) -> tuple[GraphStore, EmbeddingTable, list[str]]:
    """Store plus embedding table for the comparison timing runs.

    Predicates come from a shared pool so the union stays near-constant as
    more contributions are compared; a few pool entries are planted synonym
    pairs so grouping has work to do.
    """
    rng = random.Random(seed)
    np_rng = np.random.default_rng(seed)
    store = GraphStore(clock=counter_clock())

    labels = [f"property{i:02d}" for i in range(pool_size)]
    vectors: dict[str, np.ndarray] = {}
    i = 0
    while i < pool_size:
        base = np_rng.normal(size=dimension)
        base /= np.linalg.norm(base)
        vectors[labels[i]] = base
        if i % (pool_size // max(1, synonym_pairs)) == 1 and i + 1 < pool_size:
            noisy = base + np_rng.normal(scale=0.05, size=dimension)
            noisy /= np.linalg.norm(noisy)
            vectors[labels[i + 1]] = noisy
            i += 2
        else:
            i += 1
    for vec in vectors.values():
        vec.setflags(write=False)
    table = EmbeddingTable(dimension, vectors)

    predicate_ids = [store.create_predicate(label).id for label in labels]
    contribution_ids = []
    for index in range(contributions):
        contribution = store.create_resource(f"Fixture contribution {index + 1}",
                                             {"Contribution"}).id
        contribution_ids.append(contribution)
        for predicate in rng.sample(predicate_ids, predicates_per_contribution):
            literal = store.create_literal(f"{rng.randint(0, 9999)} units").id
            store.create_statement(contribution, predicate, literal, "fixture")
    return store, table, contribution_ids


def bench_comparison(store: GraphStore, table: EmbeddingTable,
                     contribution_ids: Sequence[str], sizes: Sequence[int],
                     threshold: float = 0.9, engine_samples: int = 30,
                     engine_warmup: int = 10,
                     baseline_budget_s: float = 120.0) -> list[TimingReport]:
    """Time the engine and baseline routes per comparison size.

    Engine rows always report >= 30 samples. Baseline rows run as many
    samples as the remaining time budget allows (at least one); once the
    budget is spent, larger sizes are skipped entirely.
    """
    for size in sizes:
        if size < 2 or size > len(contribution_ids):
            raise ValueError(f"size {size} outside fixture range")
    config = ComparisonConfig(threshold=threshold, table=table)
    reports: list[TimingReport] = []
    budget_left = baseline_budget_s
    baseline_exhausted = False

    for size in sorted(sizes):
        ids = list(contribution_ids[:size])
        durations = _time_samples(lambda: compare(store, ids, config),
                                  engine_samples, engine_warmup)
        reports.append(_report(f"compare[size={size}]", durations))

        if baseline_exhausted:
            continue
        start = time.perf_counter()
        compare_baseline(store, ids, config)
        first = time.perf_counter() - start
        budget_left -= first
        baseline_durations = [first]
        while budget_left > 0 and len(baseline_durations) < engine_samples \
                and first < 0.5:
            start = time.perf_counter()
            compare_baseline(store, ids, config)
            elapsed = time.perf_counter() - start
            budget_left -= elapsed
            baseline_durations.append(elapsed)
        note = "" if len(baseline_durations) >= 30 else \
            f"samples={len(baseline_durations)} (budget-capped)"
        reports.append(_report(f"compare_baseline[size={size}]",
                               baseline_durations, note))
        # Growing one size multiplies the scan cost by the predicate count;
        # stop when the projection clearly exceeds what is left.
        if first * 20 > budget_left:
            baseline_exhausted = True
    return reports


def comparison_table_csv(reports: Sequence[TimingReport]) -> str:
    """Two-row approach-by-size table of median seconds."""
    by_op: dict[str, dict[int, float]] = {"compare_baseline": {}, "compare": {}}
    sizes: set[int] = set()
    for report in reports:
        name, _, rest = report.operation.partition("[size=")
        if not rest or name not in by_op:
            continue
        size = int(rest.rstrip("]"))
        sizes.add(size)
        by_op[name][size] = report.median_s
    ordered_sizes = sorted(sizes)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["approach", *ordered_sizes])
    for name, row_label in (("compare_baseline", "baseline"), ("compare", "engine")):
        row: list[object] = [row_label]
        for size in ordered_sizes:
            value = by_op[name].get(size)
            row.append(f"{value:.6g}" if value is not None else "")
        writer.writerow(row)
    return out.getvalue()


def reports_csv(reports: Sequence[TimingReport]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["operation", "samples", "mean_s", "median_s", "p95_s",
                     "environment"])
    for report in reports:
        writer.writerow([report.operation, report.sample_count,
                         f"{report.mean_s:.9f}", f"{report.median_s:.9f}",
                         f"{report.p95_s:.9f}", report.environment])
    return out.getvalue()


def write_text(path: str | os.PathLike, text: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
