from __future__ import annotations

import random
from pathlib import Path

import pytest

from scholargraph.embeddings import EmbeddingTable, load_table
from scholargraph.graph import GraphStore

FIXTURES = Path(__file__).parent / "fixtures"

# Mix of in-vocabulary labels (see fixtures/mini_vectors.txt), multi-token
# labels and out-of-vocabulary ones.
RANDOM_PREDICATE_LABELS = [
    "uses", "employs", "reuses", "method", "yields", "produces", "addresses",
    "quick sort", "merge sort", "average runtime", "zz-unknown", "qq unknown",
]


@pytest.fixture(scope="session")
def vectors_path() -> Path:
    return FIXTURES / "mini_vectors.txt"


@pytest.fixture(scope="session")
def table(vectors_path: Path) -> EmbeddingTable:
    return load_table(vectors_path)


@pytest.fixture
def store() -> GraphStore:
    return GraphStore()


def build_random_comparison_store(rng: random.Random,
                                  max_contributions: int = 5,
                                  max_predicates: int = 6
                                  ) -> tuple[GraphStore, list[str]]:
    """Random store plus the contribution ids to compare (duplicates allowed)."""
    store = GraphStore()
    n_contributions = rng.randint(2, max_contributions)
    predicate_pool = [store.create_predicate(rng.choice(RANDOM_PREDICATE_LABELS)).id
                      for _ in range(rng.randint(1, 8))]
    contributions = []
    for i in range(n_contributions):
        contribution = store.create_resource(f"contribution {i + 1}").id
        contributions.append(contribution)
        for _ in range(rng.randint(0, max_predicates)):
            predicate = rng.choice(predicate_pool)
            if rng.random() < 0.3:
                obj = store.create_resource(f"entity {rng.randint(0, 99)}").id
                if rng.random() < 0.5:
                    nested_predicate = rng.choice(predicate_pool)
                    nested_value = store.create_literal(str(rng.randint(0, 9))).id
                    store.create_statement(obj, nested_predicate, nested_value)
            else:
                obj = store.create_literal(f"value {rng.randint(0, 99)}").id
            store.create_statement(contribution, predicate, obj)
    requested = [rng.choice(contributions) for _ in range(rng.randint(2, n_contributions + 1))]
    return store, requested
