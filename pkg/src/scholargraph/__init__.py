"""Scholarly knowledge graph engine."""

from .graph import GraphStore, Literal, Predicate, Provenance, Resource, Statement, Subgraph

__version__ = "0.1.0"

__all__ = [
    "GraphStore",
    "Resource",
    "Literal",
    "Predicate",
    "Statement",
    "Provenance",
    "Subgraph",
    "__version__",
]
