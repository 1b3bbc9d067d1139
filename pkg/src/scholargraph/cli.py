"""Command line entry points: API server, benchmarks, linker evaluation."""

from __future__ import annotations

import os
import sys
from pathlib import Path

import click

from . import bench as bench_mod
from . import linker as linker_mod
from .api import ServiceState, create_app
from .embeddings import load_table
from .graph import GraphStore


def _parse_sizes(text: str) -> list[int]:
    if ".." in text:
        low, high = text.split("..", 1)
        return list(range(int(low), int(high) + 1))
    return [int(part) for part in text.split(",") if part]


@click.group()
def main() -> None:
    """Scholarly knowledge graph engine."""


@main.command()
@click.option("--listen", default="127.0.0.1:8000", show_default=True,
              help="Address and port to bind.")
@click.option("--data-dir", type=click.Path(file_okay=False), default=None,
              help="Directory for the write-ahead log and saved comparisons.")
@click.option("--embeddings", "embeddings_path", type=click.Path(exists=True,
              dir_okay=False), default=None,
              help="Word-embedding table in the text vector format.")
@click.option("--threshold", default=0.9, show_default=True,
              help="Default predicate-similarity threshold.")
def serve(listen: str, data_dir: str | None, embeddings_path: str | None,
          threshold: float) -> None:
    """Run the HTTP/JSON service."""
    import uvicorn

    host, _, port = listen.partition(":")
    table = load_table(embeddings_path) if embeddings_path else None
    store = GraphStore(data_dir=data_dir)
    state = ServiceState(store, table=table, threshold=threshold,
                         data_dir=data_dir,
                         write_token=os.environ.get("ORKG_WRITE_TOKEN"))
    uvicorn.run(create_app(state), host=host or "127.0.0.1",
                port=int(port or 8000))


@main.group()
def bench() -> None:
    """Synthetic dataset generation and timing runs."""


@bench.command()
@click.option("--papers", required=True, type=int, help="Number of papers.")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", "out_dir", required=True,
              type=click.Path(file_okay=False), help="Output directory.")
def generate(papers: int, seed: int, out_dir: str) -> None:
    """Generate a synthetic store and write its dump."""
    spec = bench_mod.SyntheticSpec(paper_count=papers, seed=seed)
    store = bench_mod.generate(spec)
    target = Path(out_dir)
    target.mkdir(parents=True, exist_ok=True)
    store.dump(target / "graph.tsv")
    (target / "environment.txt").write_text(bench_mod.environment_note() + "\n",
                                            encoding="utf-8")
    click.echo(f"papers={papers} nodes={store.node_count()} "
               f"statements={store.statement_count()} -> {target / 'graph.tsv'}")


@bench.command()
@click.option("--papers", default=10_000, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--samples", default=100, show_default=True, type=int)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
def fetch(papers: int, seed: int, samples: int, out_path: str | None) -> None:
    """Time single-paper fetches against a generated store."""
    store = bench_mod.generate(bench_mod.SyntheticSpec(paper_count=papers, seed=seed))
    report = bench_mod.bench_fetch(store, samples=samples, seed=seed)
    text = bench_mod.reports_csv([report])
    if out_path:
        bench_mod.write_text(out_path, text)
    click.echo(text, nl=False)


@bench.command()
@click.option("--sizes", default="2..8", show_default=True,
              help="Comparison sizes, e.g. '2..8' or '2,4,6'.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False),
              default="results.csv", show_default=True)
@click.option("--seed", default=7, show_default=True, type=int)
@click.option("--baseline-budget", default=120.0, show_default=True,
              help="Total seconds allowed for baseline runs.")
@click.option("--threshold", default=0.9, show_default=True)
def compare(sizes: str, out_path: str, seed: int, baseline_budget: float,
            threshold: float) -> None:
    """Run the two-approach comparison benchmark and write the results table."""
    size_list = _parse_sizes(sizes)
    store, table, contribution_ids = bench_mod.make_comparison_fixture(
        contributions=max(size_list), seed=seed)
    reports = bench_mod.bench_comparison(store, table, contribution_ids,
                                         size_list, threshold=threshold,
                                         baseline_budget_s=baseline_budget)
    bench_mod.write_text(out_path, bench_mod.comparison_table_csv(reports))
    detail_path = Path(out_path).with_name(Path(out_path).stem + "_detail.csv")
    bench_mod.write_text(detail_path, bench_mod.reports_csv(reports))
    click.echo(bench_mod.comparison_table_csv(reports), nl=False)
    click.echo(f"wrote {out_path} and {detail_path}")


@main.command("linker-eval")
@click.option("--corpus", "corpus_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Tab-separated corpus: doc id, surface form, optional class.")
@click.option("--client", "client_spec", required=True,
              help="Client to evaluate: 'fixture:<path>' or '<name>@<base-url>'.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
@click.option("--workers", default=1, show_default=True, type=int)
def linker_eval(corpus_path: str, client_spec: str, out_path: str | None,
                workers: int) -> None:
    """Compute linker coverage over an annotated entity corpus."""
    corpus = linker_mod.load_corpus(Path(corpus_path).read_text(encoding="utf-8"))
    if client_spec.startswith("fixture:"):
        client: linker_mod.LinkerClient = linker_mod.FixtureLinker(
            client_spec.split(":", 1)[1])
    elif "@" in client_spec:
        name, base_url = client_spec.split("@", 1)
        client = linker_mod.HttpLinker(
            name, base_url, api_key_env=f"{name.upper().replace('-', '_')}_API_KEY")
    else:
        click.echo(f"unknown client spec: {client_spec}", err=True)
        sys.exit(2)
    report = linker_mod.evaluate(corpus, client, max_workers=workers)
    text = linker_mod.report_to_csv(report)
    if out_path:
        bench_mod.write_text(out_path, text)
    click.echo(text, nl=False)


if __name__ == "__main__":
    main()
