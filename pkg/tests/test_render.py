from __future__ import annotations

from scholargraph.comparison import ComparisonTable, PredicateGroup
from scholargraph.render import comparison_to_csv, comparison_to_latex, latex_escape


def sample_table() -> ComparisonTable:
    group = PredicateGroup(
        anchor="P1", members=frozenset({"P1", "P2"}), display_label="uses",
        frequency=1.0, cells=(("A", "A2"), ("B,with comma",)))
    return ComparisonTable(("R1", "R2"), ("Alpha paper", "Beta paper"), 0.9,
                           (group,))


def test_csv_quoting_and_multivalue():
    text = comparison_to_csv(sample_table())
    assert text.splitlines() == [
        "Property,Alpha paper,Beta paper",
        'uses,A; A2,"B,with comma"',
    ]
    assert text.endswith("\r\n")
    assert "\r\n" in text


def test_csv_escapes_quotes():
    group = PredicateGroup("P1", frozenset({"P1"}), 'say "hi"', 0.5,
                           (('va"l',), ()))
    table = ComparisonTable(("R1", "R2"), ("c1", "c2"), 0.9, (group,))
    text = comparison_to_csv(table)
    assert '"say ""hi""","va""l",' in text


def test_latex_structure():
    text = comparison_to_latex(sample_table())
    lines = text.splitlines()
    assert lines[0] == "\\begin{tabular}{l|ll}"
    assert lines[1] == "Property & Alpha paper & Beta paper \\\\"
    assert lines[2] == "\\hline"
    assert lines[3] == "uses & A; A2 & B,with comma \\\\"
    assert lines[-1] == "\\end{tabular}"


def test_latex_escaping():
    assert latex_escape("a & b_c 100%") == "a \\& b\\_c 100\\%"
    assert latex_escape("x^2 ~ {y} \\ $#") == \
        "x\\textasciicircum{}2 \\textasciitilde{} \\{y\\} \\textbackslash{} \\$\\#"
