"""Contribution similarity via TF-IDF over flattened subgraph documents.

A contribution's document is the concatenation, in subgraph statement order,
of subject label, predicate label and object label/value. Documents are
indexed with smoothed idf (ln((1+N)/(1+df)) + 1) and L2-normalized tf*idf
weights; queries are built the same way and scored by cosine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import EmptyCorpus, UnknownReferent
from .graph import DEFAULT_DEPTH_LIMIT, GraphStore, numeric_suffix
from .textutil import tokenize


@dataclass(frozen=True)
class SubgraphDocument:
    contribution: str
    text: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class TfIdfIndex:
    vocabulary: dict[str, int]
    vectors: dict[str, dict[str, float]]
    n_docs: int


def build_document(store: GraphStore, contribution: str,
                   depth_limit: int = DEFAULT_DEPTH_LIMIT) -> SubgraphDocument:
    if not store.has_node(contribution):
        raise UnknownReferent(contribution)
    parts: list[str] = []
    for st in store.subgraph(contribution, depth_limit).statements:
        parts.append(store.node_label(st.subject))
        parts.append(store.get_predicate(st.predicate).label)
        parts.append(store.node_label(st.object))
    text = " ".join(parts)
    return SubgraphDocument(contribution, text, tuple(tokenize(text)))


def _term_counts(tokens: Sequence[str]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for token in tokens:
        counts[token] = counts.get(token, 0) + 1
    return counts


def _idf(n_docs: int, doc_freq: int) -> float:
    return math.log((1 + n_docs) / (1 + doc_freq)) + 1.0


def _weigh(counts: dict[str, int], vocabulary: dict[str, int], n_docs: int) -> dict[str, float]:
    weights = {term: count * _idf(n_docs, vocabulary.get(term, 0))
               for term, count in counts.items()}
    norm = math.sqrt(sum(w * w for w in weights.values()))
    if norm > 0.0:
        weights = {term: w / norm for term, w in weights.items()}
    return weights


def build_index(documents: Sequence[SubgraphDocument]) -> TfIdfIndex:
    if not documents:
        raise EmptyCorpus("cannot index an empty corpus")
    vocabulary: dict[str, int] = {}
    for doc in documents:
        for term in set(doc.tokens):
            vocabulary[term] = vocabulary.get(term, 0) + 1
    n = len(documents)
    vectors = {doc.contribution: _weigh(_term_counts(doc.tokens), vocabulary, n)
               for doc in documents}
    return TfIdfIndex(vocabulary, vectors, n)


def query_weights(index: TfIdfIndex, document: SubgraphDocument) -> dict[str, float]:
    return _weigh(_term_counts(document.tokens), index.vocabulary, index.n_docs)


def most_similar(index: TfIdfIndex, store: GraphStore, query_contribution: str,
                 k: int, depth_limit: int = DEFAULT_DEPTH_LIMIT) -> list[tuple[str, float]]:
    """Top-k contributions by cosine against the query's document.

    The query contribution itself is excluded when indexed; ties break on
    ascending node id.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    query = query_weights(index, build_document(store, query_contribution, depth_limit))
    scored: list[tuple[str, float]] = []
    for contribution, vector in index.vectors.items():
        if contribution == query_contribution:
            continue
        if len(query) > len(vector):
            small, large = vector, query
        else:
            small, large = query, vector
        score = sum(w * large.get(term, 0.0) for term, w in small.items())
        scored.append((contribution, score))
    scored.sort(key=lambda item: (-item[1], numeric_suffix(item[0])))
    return scored[:k]


class SimilarityService:
    """Caches the index until the backing store changes."""

    def __init__(self, store: GraphStore,
                 corpus_provider: Callable[[GraphStore], Sequence[str]],
                 depth_limit: int = DEFAULT_DEPTH_LIMIT):
        self._store = store
        self._corpus_provider = corpus_provider
        self._depth_limit = depth_limit
        self._cached_revision: int | None = None
        self._index: TfIdfIndex | None = None

    def index(self) -> TfIdfIndex:
        revision = self._store.revision
        if self._index is None or self._cached_revision != revision:
            documents = [build_document(self._store, c, self._depth_limit)
                         for c in self._corpus_provider(self._store)]
            if not documents:
                raise EmptyCorpus("no contributions to index")
            self._index = build_index(documents)
            self._cached_revision = revision
        return self._index

    def most_similar(self, query_contribution: str, k: int) -> list[tuple[str, float]]:
        return most_similar(self.index(), self._store, query_contribution, k,
                            self._depth_limit)
