"""Word-embedding tables and label vectors for semantic predicate matching.

Tables load from the common pretrained-vector text format: an optional
"<count> <dimension>" header line, then one "<token> v1 ... vd" line per
token. Labels embed as the average of their in-vocabulary token vectors.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import IO

import numpy as np

from .errors import DimensionMismatch, EmptyTable
from .textutil import nfc, normalize_label, tokenize


@dataclass(frozen=True)
class EmbeddingTable:
    dimension: int
    entries: dict[str, np.ndarray]

    def __contains__(self, token: str) -> bool:
        return token in self.entries

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class LabelVector:
    label: str
    vector: np.ndarray | None
    oov: bool


def load_table(source: str | os.PathLike | IO[str]) -> EmbeddingTable:
    """Load an embedding table from a path or open text stream."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    entries: dict[str, np.ndarray] = {}
    dimension: int | None = None
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split()
        if dimension is None and len(parts) == 2 and _is_int(parts[0]) and _is_int(parts[1]):
            dimension = int(parts[1])
            if dimension < 1:
                raise DimensionMismatch(f"line {line_no}: declared dimension must be >= 1",
                                        line=line_no)
            continue
        token = nfc(parts[0]).lower()
        values = parts[1:]
        if dimension is None:
            dimension = len(values)
            if dimension < 1:
                raise DimensionMismatch(f"line {line_no}: no vector components",
                                        line=line_no)
        if len(values) != dimension:
            raise DimensionMismatch(
                f"line {line_no}: expected {dimension} components, got {len(values)}",
                line=line_no)
        try:
            vector = np.array([float(v) for v in values], dtype=np.float64)
        except ValueError as exc:
            raise DimensionMismatch(f"line {line_no}: bad component: {exc}",
                                    line=line_no) from exc
        if not np.all(np.isfinite(vector)):
            raise DimensionMismatch(f"line {line_no}: non-finite component", line=line_no)
        vector.setflags(write=False)
        entries[token] = vector
    if not entries:
        raise EmptyTable("no embedding entries loaded")
    assert dimension is not None
    return EmbeddingTable(dimension, entries)


def _is_int(text: str) -> bool:
    try:
        int(text)
    except ValueError:
        return False
    return True


def embed_label(table: EmbeddingTable, label: str) -> LabelVector:
    """Average of in-vocabulary token vectors; OOV when no token is known."""
    if not label.strip():
        raise ValueError("label must be non-empty")
    vectors = [table.entries[t] for t in tokenize(label) if t in table.entries]
    if not vectors:
        return LabelVector(label, None, True)
    mean = np.mean(vectors, axis=0)
    mean.setflags(write=False)
    return LabelVector(label, mean, False)


def cosine(a: LabelVector, b: LabelVector) -> float:
    """Cosine similarity in [-1, 1]; zero-norm vectors compare as 0."""
    if a.oov or b.oov or a.vector is None or b.vector is None:
        raise ValueError("cosine is undefined for out-of-vocabulary labels")
    if a.vector.shape != b.vector.shape:
        raise DimensionMismatch(
            f"dimension mismatch: {a.vector.shape[0]} vs {b.vector.shape[0]}")
    norm_a = float(np.linalg.norm(a.vector))
    norm_b = float(np.linalg.norm(b.vector))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    value = float(np.dot(a.vector, b.vector)) / (norm_a * norm_b)
    return max(-1.0, min(1.0, value))


def label_similarity(table: EmbeddingTable | None, label_a: str, label_b: str) -> float:
    """Similarity between two labels with an exact-match fallback.

    When either label is out of vocabulary (or no table is configured) the
    similarity is 1.0 for equal normalized labels and 0.0 otherwise, which
    preserves self-similarity.
    """
    if table is not None:
        va = embed_label(table, label_a)
        vb = embed_label(table, label_b)
        if not va.oov and not vb.oov:
            return cosine(va, vb)
    return 1.0 if normalize_label(label_a) == normalize_label(label_b) else 0.0
