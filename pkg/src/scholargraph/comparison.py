"""Side-by-side comparison of research contributions.

Predicates of the compared contributions are embedded and pairwise cosine
similarity forms a symmetric similarity matrix. A binary mask matrix records
which contribution carries which predicate; slicing the mask to the
predicates similar to an anchor yields the per-group incidence from which
group frequency is computed. Groups with identical member sets are merged
and rendered as table rows.

``compare_baseline`` produces the identical table but derives each anchor's
member set by brute force, enumerating the full Cartesian product of the
contributions' predicate sets. Its cost is deliberately exponential in the
number of contributions; it exists as the correctness oracle and the
benchmark counterpart.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import domain
from .embeddings import EmbeddingTable, cosine, embed_label
from .errors import TooFewContributions, UnknownPredicate, UnknownReferent
from .graph import DEFAULT_DEPTH_LIMIT, GraphStore, numeric_suffix
from .textutil import normalize_label

# Chunk size (elements) for the baseline's exhaustive product scan.
_SCAN_CHUNK = 4_000_000


@dataclass(frozen=True)
class ComparisonConfig:
    threshold: float = 0.9
    table: EmbeddingTable | None = None
    depth_limit: int = DEFAULT_DEPTH_LIMIT

    def __post_init__(self) -> None:
        if not (0.0 < self.threshold <= 1.0):
            raise ValueError("threshold must be in (0, 1]")


@dataclass(frozen=True)
class SimilarityMatrix:
    predicates: tuple[str, ...]
    values: np.ndarray

    def index_of(self, predicate_id: str) -> int:
        try:
            return self.predicates.index(predicate_id)
        except ValueError:
            raise UnknownPredicate(predicate_id) from None

    def value(self, p: str, q: str) -> float:
        return float(self.values[self.index_of(p), self.index_of(q)])


@dataclass(frozen=True)
class MaskMatrix:
    contributions: tuple[str, ...]
    predicates: tuple[str, ...]
    values: np.ndarray


@dataclass(frozen=True)
class PredicateGroup:
    anchor: str
    members: frozenset[str]
    display_label: str
    frequency: float
    cells: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class ComparisonTable:
    contributions: tuple[str, ...]
    contribution_labels: tuple[str, ...]
    threshold: float
    groups: tuple[PredicateGroup, ...]


def similarity_matrix(predicate_ids: Sequence[str], labels: Sequence[str],
                      config: ComparisonConfig) -> SimilarityMatrix:
    """Symmetric pairwise label similarity with unit diagonal.

    Out-of-vocabulary labels fall back to exact normalized-string matching,
    so values stay in [-1, 1] and self-similarity is always 1.
    """
    if not predicate_ids:
        raise ValueError("at least one predicate is required")
    n = len(predicate_ids)
    vectors: list = []
    for label in labels:
        vec = embed_label(config.table, label) if config.table is not None else None
        vectors.append(None if vec is None or vec.oov else vec)
    normalized = [normalize_label(label) for label in labels]
    values = np.ones((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            if vectors[i] is not None and vectors[j] is not None:
                sim = cosine(vectors[i], vectors[j])
            else:
                sim = 1.0 if normalized[i] == normalized[j] else 0.0
            values[i, j] = sim
            values[j, i] = sim
    values.setflags(write=False)
    return SimilarityMatrix(tuple(predicate_ids), values)


def contribution_predicates(store: GraphStore, contribution: str,
                            depth_limit: int = DEFAULT_DEPTH_LIMIT) -> list[str]:
    """Predicates of a contribution's depth-limited subgraph, first-seen order."""
    return store.subgraph(contribution, depth_limit).predicate_ids()


def mask_matrix(store: GraphStore, contribution_ids: Sequence[str],
                predicate_ids: Sequence[str],
                depth_limit: int = DEFAULT_DEPTH_LIMIT) -> MaskMatrix:
    """Binary incidence of predicates over the contributions' subgraphs."""
    column = {p: i for i, p in enumerate(predicate_ids)}
    values = np.zeros((len(contribution_ids), len(predicate_ids)), dtype=np.int8)
    for row, contribution in enumerate(contribution_ids):
        for predicate in contribution_predicates(store, contribution, depth_limit):
            col = column.get(predicate)
            if col is not None:
                values[row, col] = 1
    values.setflags(write=False)
    return MaskMatrix(tuple(contribution_ids), tuple(predicate_ids), values)


def sim_set(matrix: SimilarityMatrix, predicate_id: str, threshold: float) -> frozenset[str]:
    """Predicates whose similarity to the anchor meets the threshold."""
    row = matrix.values[matrix.index_of(predicate_id)]
    return frozenset(p for p, v in zip(matrix.predicates, row) if v >= threshold)


def slice_mask(mask: MaskMatrix, sim_predicates: frozenset[str] | set[str]) -> MaskMatrix:
    """Column restriction of the mask to a similar-predicate set."""
    unknown = set(sim_predicates) - set(mask.predicates)
    if unknown:
        raise UnknownPredicate(", ".join(sorted(unknown)))
    keep = [i for i, p in enumerate(mask.predicates) if p in sim_predicates]
    values = mask.values[:, keep]
    values.setflags(write=False)
    return MaskMatrix(mask.contributions,
                      tuple(mask.predicates[i] for i in keep), values)


def compare(store: GraphStore, contribution_ids: Sequence[str],
            config: ComparisonConfig | None = None) -> ComparisonTable:
    """Comparison table via the similarity-matrix route."""
    config = config or ComparisonConfig()

    def members_for(matrix: SimilarityMatrix, anchor: str,
                    per_contribution: list[list[str]]) -> frozenset[str]:
        return sim_set(matrix, anchor, config.threshold)

    return _compare_common(store, contribution_ids, config, members_for)


def compare_baseline(store: GraphStore, contribution_ids: Sequence[str],
                     config: ComparisonConfig | None = None) -> ComparisonTable:
    """Comparison table via exhaustive enumeration; identical output to compare."""
    config = config or ComparisonConfig()

    def members_for(matrix: SimilarityMatrix, anchor: str,
                    per_contribution: list[list[str]]) -> frozenset[str]:
        return _brute_force_members(matrix, anchor, per_contribution, config.threshold)

    return _compare_common(store, contribution_ids, config, members_for)


def _brute_force_members(matrix: SimilarityMatrix, anchor: str,
                         per_contribution: list[list[str]],
                         threshold: float) -> frozenset[str]:
    """Scan every predicate combination across contributions for the anchor.

    Each tuple of the Cartesian product is materialized and tested; a
    predicate joins the member set when it meets the anchor condition in any
    scanned position. Contributions without predicates contribute no product
    axis (their product would otherwise be empty).
    """
    anchor_row = matrix.values[matrix.index_of(anchor)]
    column = {p: i for i, p in enumerate(matrix.predicates)}
    axes = [
        np.array([anchor_row[column[p]] >= threshold for p in preds], dtype=bool)
        for preds in per_contribution if preds
    ]
    members = {anchor}
    if axes:
        _exhaustive_tuple_scan(axes)
        for preds, ok in zip([p for p in per_contribution if p], axes):
            for predicate, passed in zip(preds, ok):
                if passed:
                    members.add(predicate)
    return frozenset(members)


def _exhaustive_tuple_scan(axes: list[np.ndarray]) -> int:
    """Evaluate the anchor condition over the full Cartesian product.

    Broadcasting materializes every combination in chunks along the first
    axis, so the cost is the product of the axis sizes.
    """
    sizes = [len(a) for a in axes]
    total = int(np.prod(sizes, dtype=np.int64))
    if total == 0:
        return 0
    per_slice = total // sizes[0] if sizes[0] else 0
    step = max(1, _SCAN_CHUNK // max(1, per_slice))
    kept = 0
    n = len(axes)
    shaped = [a.reshape((1,) * i + (-1,) + (1,) * (n - i - 1)) for i, a in enumerate(axes)]
    for start in range(0, sizes[0], step):
        block = shaped[0][start:start + step]
        combo = block
        for other in shaped[1:]:
            combo = combo & other
        kept += int(np.count_nonzero(combo))
    return kept


def _compare_common(store: GraphStore, contribution_ids: Sequence[str],
                    config: ComparisonConfig,
                    members_for: Callable[[SimilarityMatrix, str, list[list[str]]],
                                          frozenset[str]]) -> ComparisonTable:
    if len(contribution_ids) < 2:
        raise TooFewContributions("a comparison needs at least two contributions")
    for contribution in contribution_ids:
        if not store.has_node(contribution):
            raise UnknownReferent(contribution)

    per_contribution = [contribution_predicates(store, c, config.depth_limit)
                        for c in contribution_ids]
    union: dict[str, None] = {}
    for preds in per_contribution:
        for p in preds:
            union.setdefault(p, None)
    predicates = sorted(union, key=numeric_suffix)

    labels = tuple(domain.contribution_display_label(store, c) for c in contribution_ids)
    if not predicates:
        return ComparisonTable(tuple(contribution_ids), labels, config.threshold, ())

    predicate_labels = [store.get_predicate(p).label for p in predicates]
    matrix = similarity_matrix(predicates, predicate_labels, config)
    mask = mask_matrix(store, contribution_ids, predicates, config.depth_limit)

    groups: list[PredicateGroup] = []
    seen_member_sets: set[frozenset[str]] = set()
    subgraphs = [store.subgraph(c, config.depth_limit).statements
                 for c in contribution_ids]
    for anchor in predicates:
        members = members_for(matrix, anchor, per_contribution)
        if members in seen_member_sets:
            continue
        seen_member_sets.add(members)
        sliced = slice_mask(mask, members)
        present_rows = int(np.count_nonzero(sliced.values.any(axis=1)))
        if present_rows == 0:
            continue
        frequency = present_rows / len(contribution_ids)
        display = _display_label(store, mask, members)
        cells = tuple(
            tuple(store.node_label(st.object)
                  for st in sorted(statements, key=lambda s: numeric_suffix(s.id))
                  if st.predicate in members)
            for statements in subgraphs
        )
        groups.append(PredicateGroup(anchor, members, display, frequency, cells))

    groups.sort(key=lambda g: (-g.frequency, g.display_label, numeric_suffix(g.anchor)))
    return ComparisonTable(tuple(contribution_ids), labels, config.threshold,
                           tuple(groups))


def _display_label(store: GraphStore, mask: MaskMatrix,
                   members: frozenset[str]) -> str:
    """Label of the member present in the most contributions.

    Ties go to the earliest-created member so the heading is stable under
    contribution reordering.
    """
    column = {p: i for i, p in enumerate(mask.predicates)}
    best: tuple[int, int] | None = None
    best_predicate = ""
    for predicate in members:
        count = int(mask.values[:, column[predicate]].sum())
        rank = (-count, numeric_suffix(predicate))
        if best is None or rank < best:
            best = rank
            best_predicate = predicate
    return store.get_predicate(best_predicate).label
