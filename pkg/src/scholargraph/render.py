"""Comparison table renderers: CSV (RFC 4180) and LaTeX tabular."""

from __future__ import annotations

from .comparison import ComparisonTable

MULTI_VALUE_SEPARATOR = "; "


def _csv_field(value: str) -> str:
    if any(ch in value for ch in (",", '"', "\n", "\r")):
        return '"' + value.replace('"', '""') + '"'
    return value


def comparison_to_csv(table: ComparisonTable) -> str:
    rows = [["Property", *table.contribution_labels]]
    for group in table.groups:
        rows.append([group.display_label,
                     *(MULTI_VALUE_SEPARATOR.join(cell) for cell in group.cells)])
    return "".join(",".join(_csv_field(f) for f in row) + "\r\n" for row in rows)


_LATEX_SPECIALS = {
    "\\": r"\textbackslash{}",
    "&": r"\&",
    "%": r"\%",
    "$": r"\$",
    "#": r"\#",
    "_": r"\_",
    "{": r"\{",
    "}": r"\}",
    "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}",
}


def latex_escape(text: str) -> str:
    return "".join(_LATEX_SPECIALS.get(ch, ch) for ch in text)


def comparison_to_latex(table: ComparisonTable) -> str:
    columns = "l|" + "l" * len(table.contribution_labels)
    lines = [f"\\begin{{tabular}}{{{columns}}}"]
    header = " & ".join(["Property", *(latex_escape(l) for l in table.contribution_labels)])
    lines.append(header + " \\\\")
    lines.append("\\hline")
    for group in table.groups:
        cells = [latex_escape(MULTI_VALUE_SEPARATOR.join(cell)) for cell in group.cells]
        lines.append(" & ".join([latex_escape(group.display_label), *cells]) + " \\\\")
    lines.append("\\end{tabular}")
    return "".join(line + "\n" for line in lines)
