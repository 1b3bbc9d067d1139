from __future__ import annotations

import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scholargraph.embeddings import (
    EmbeddingTable,
    cosine,
    embed_label,
    label_similarity,
    load_table,
)
from scholargraph.errors import DimensionMismatch, EmptyTable


def table_from(text: str) -> EmbeddingTable:
    return load_table(io.StringIO(text))


def test_load_with_header(vectors_path):
    table = load_table(vectors_path)
    assert table.dimension == 3
    assert len(table) == 20
    assert "uses" in table


def test_load_without_header():
    table = table_from("alpha 1 0 0\nbeta 0 1 0\n")
    assert table.dimension == 3
    assert len(table) == 2


def test_load_dimension_mismatch_reports_line():
    with pytest.raises(DimensionMismatch) as exc:
        table_from("alpha 1 0 0\nbeta 0 1\n")
    assert exc.value.line == 2


def test_load_bad_component_rejected():
    with pytest.raises(DimensionMismatch):
        table_from("alpha 1 x 0\n")


def test_load_empty_file():
    with pytest.raises(EmptyTable):
        table_from("")


def test_tokens_lowercased():
    table = table_from("ALPHA 1 0\n")
    assert "alpha" in table


def test_embed_single_token_identity(table):
    vec = embed_label(table, "uses")
    assert not vec.oov
    assert np.allclose(vec.vector, [1.0, 0.0, 0.0])


def test_embed_multi_token_average():
    table = table_from("data 1 0\nset 0 1\n")
    vec = embed_label(table, "data set")
    assert np.allclose(vec.vector, [0.5, 0.5])


def test_embed_oov(table):
    vec = embed_label(table, "zzz")
    assert vec.oov
    assert vec.vector is None


def test_embed_rejects_empty_label(table):
    with pytest.raises(ValueError):
        embed_label(table, "   ")


def test_embed_tokenizes_on_non_alphanumeric():
    table = table_from("data 1 0\nset 0 1\n")
    vec = embed_label(table, "DATA-set!")
    assert np.allclose(vec.vector, [0.5, 0.5])


def test_cosine_identical(table):
    a = embed_label(table, "uses")
    assert cosine(a, a) == pytest.approx(1.0, abs=1e-12)


def test_cosine_orthogonal(table):
    assert cosine(embed_label(table, "uses"),
                  embed_label(table, "yields")) == pytest.approx(0.0, abs=1e-12)


def test_cosine_hand_computed():
    table = table_from("a 1 0\nb 0.8 0.6\n")
    assert cosine(embed_label(table, "a"),
                  embed_label(table, "b")) == pytest.approx(0.8, abs=1e-12)


def test_cosine_zero_norm_vector():
    table = table_from("zero 0 0\none 1 0\n")
    assert cosine(embed_label(table, "zero"), embed_label(table, "one")) == 0.0


def test_cosine_rejects_oov(table):
    with pytest.raises(ValueError):
        cosine(embed_label(table, "uses"), embed_label(table, "zzz"))


def test_cosine_dimension_mismatch():
    t2 = table_from("a 1 0\n")
    t3 = table_from("b 1 0 0\n")
    with pytest.raises(DimensionMismatch):
        cosine(embed_label(t2, "a"), embed_label(t3, "b"))


finite_components = st.lists(
    st.floats(min_value=-100, max_value=100, allow_nan=False), min_size=2,
    max_size=5)


@given(finite_components, finite_components)
@settings(max_examples=100, deadline=None)
def test_cosine_symmetry_property(a_vals, b_vals):
    dim = min(len(a_vals), len(b_vals))
    table = EmbeddingTable(dim, {
        "a": np.array(a_vals[:dim]),
        "b": np.array(b_vals[:dim]),
    })
    a, b = embed_label(table, "a"), embed_label(table, "b")
    assert abs(cosine(a, b) - cosine(b, a)) < 1e-12


@given(finite_components, st.floats(min_value=1e-3, max_value=1e3))
@settings(max_examples=100, deadline=None)
def test_cosine_scale_invariance_property(vals, k):
    table = EmbeddingTable(len(vals), {
        "a": np.array(vals),
        "b": np.array([v + 1.0 for v in vals]),
        "bk": np.array([(v + 1.0) * k for v in vals]),
    })
    a = embed_label(table, "a")
    assert abs(cosine(a, embed_label(table, "b"))
               - cosine(a, embed_label(table, "bk"))) < 1e-9


def test_embed_determinism(table):
    first = embed_label(table, "quick sort")
    second = embed_label(table, "quick sort")
    assert first.vector.tobytes() == second.vector.tobytes()


def test_label_similarity_oov_fallback(table):
    assert label_similarity(table, "zzz", "zzz") == 1.0
    assert label_similarity(table, "zzz", "qqq") == 0.0
    assert label_similarity(table, "zzz", "ZZZ") == 1.0
    assert label_similarity(None, "same", "same") == 1.0


def test_label_similarity_in_vocab(table):
    expected = 0.95 / math.sqrt(0.95**2 + 0.312**2)
    assert label_similarity(table, "uses", "employs") == pytest.approx(expected,
                                                                       abs=1e-12)
