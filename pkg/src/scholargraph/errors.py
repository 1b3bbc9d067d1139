"""Exception types shared across the engine."""

from __future__ import annotations


class GraphError(Exception):
    """Base class for all engine errors; ``code`` feeds the API error body."""

    code = "graph_error"


class EmptyLabel(GraphError):
    code = "empty_label"


class DatatypeMismatch(GraphError):
    code = "datatype_mismatch"


class UnknownReferent(GraphError):
    code = "unknown_referent"

    def __init__(self, referent: str):
        super().__init__(f"unknown referent: {referent}")
        self.referent = referent


class LiteralAsSubject(GraphError):
    code = "literal_as_subject"


class DanglingStatements(GraphError):
    code = "dangling_statements"


class InvalidDoi(GraphError):
    code = "invalid_doi"


class MissingProblem(GraphError):
    code = "missing_problem"


class MissingResult(GraphError):
    code = "missing_result"


class TooFewContributions(GraphError):
    code = "too_few_contributions"


class UnknownPredicate(GraphError):
    code = "unknown_predicate"


class DimensionMismatch(GraphError):
    code = "dimension_mismatch"

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class EmptyTable(GraphError):
    code = "empty_table"


class EmptyCorpus(GraphError):
    code = "empty_corpus"


class ParseError(GraphError):
    code = "parse_error"

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line
