"""Statement-centric graph store.

Nodes are resources ("R<n>" ids) and literals ("L<n>"); predicates ("P<n>")
are first-class, label-bearing entities. Edges are stored as identified,
annotatable statements ("S<n>") carrying provenance. Ids are assigned
monotonically per kind and never reused within a store lifetime.

Persistence is a write-ahead append log of creation/deletion records whose
line grammar doubles as the snapshot dump format. Readers work on immutable
snapshots and never take the write lock; writers are serialized.
"""

from __future__ import annotations

import io
import os
import re
import threading
import time
from dataclasses import dataclass, replace
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

from .errors import (
    DanglingStatements,
    DatatypeMismatch,
    EmptyLabel,
    LiteralAsSubject,
    ParseError,
    UnknownReferent,
)
from .textutil import label_key, nfc

DEFAULT_DEPTH_LIMIT = 5
MAX_LABEL_LENGTH = 512

LITERAL_DATATYPES = ("string", "integer", "decimal", "boolean", "uri")

_INT_RE = re.compile(r"^[+-]?\d+$")
_DECIMAL_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)$")
_URI_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:\S+$")
_BOOLEANS = {"true", "false", "0", "1"}

_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)


def _system_clock_ms() -> int:
    return time.time_ns() // 1_000_000


def ms_to_datetime(ms: int) -> datetime:
    return _EPOCH + timedelta(milliseconds=ms)


def datetime_to_ms(dt: datetime) -> int:
    return round((dt - _EPOCH).total_seconds() * 1000)


def format_timestamp(dt: datetime) -> str:
    return dt.isoformat(timespec="milliseconds").replace("+00:00", "Z")


def parse_timestamp(text: str) -> datetime:
    return datetime.fromisoformat(text.replace("Z", "+00:00"))


def numeric_suffix(entity_id: str) -> int:
    return int(entity_id[1:])


@dataclass(frozen=True, slots=True)
class Resource:
    id: str
    label: str
    classes: frozenset[str]


@dataclass(frozen=True, slots=True)
class Literal:
    id: str
    value: str
    datatype: str = "string"


@dataclass(frozen=True, slots=True)
class Predicate:
    id: str
    label: str


@dataclass(frozen=True, slots=True)
class Provenance:
    created_at: datetime
    created_by: str = "system"


@dataclass(frozen=True, slots=True)
class Statement:
    id: str
    subject: str
    predicate: str
    object: str
    provenance: Provenance


@dataclass(frozen=True, slots=True)
class Subgraph:
    root: str
    statements: tuple[Statement, ...]
    depth_limit: int

    def predicate_ids(self) -> list[str]:
        seen: dict[str, None] = {}
        for st in self.statements:
            seen.setdefault(st.predicate, None)
        return list(seen)


def validate_literal(value: str, datatype: str) -> None:
    if datatype not in LITERAL_DATATYPES:
        raise DatatypeMismatch(f"unknown datatype: {datatype}")
    if datatype == "integer" and not _INT_RE.match(value):
        raise DatatypeMismatch(f"not an integer: {value!r}")
    if datatype == "decimal" and not _DECIMAL_RE.match(value):
        raise DatatypeMismatch(f"not a decimal: {value!r}")
    if datatype == "boolean" and value not in _BOOLEANS:
        raise DatatypeMismatch(f"not a boolean: {value!r}")
    if datatype == "uri" and not _URI_RE.match(value):
        raise DatatypeMismatch(f"not an absolute URI: {value!r}")


def _escape_field(text: str) -> str:
    return (
        text.replace("\\", "\\\\")
        .replace("\t", "\\t")
        .replace("\n", "\\n")
        .replace("\r", "\\r")
    )


def _unescape_field(text: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            nxt = text[i + 1]
            out.append({"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}.get(nxt, nxt))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


class GraphStore:
    """In-memory graph with optional write-ahead log persistence.

    Writers are serialized behind a single lock; read methods only perform
    atomic container operations on immutable values, so concurrent readers
    never block and never observe torn state. Statements are immutable after
    creation; the only mutation besides create/delete is relabeling, used by
    the RDF importer.
    """

    def __init__(self, data_dir: str | os.PathLike | None = None,
                 clock: Callable[[], int] | None = None):
        self._resources: dict[str, Resource] = {}
        self._literals: dict[str, Literal] = {}
        self._predicates: dict[str, Predicate] = {}
        self._statements: dict[str, Statement] = {}
        self._by_subject: dict[str, list[str]] = {}
        self._by_object: dict[str, list[str]] = {}
        self._by_spo: dict[tuple[str, str, str], int] = {}
        self._predicate_use: dict[str, int] = {}
        self._resource_ids_by_label: dict[str, list[str]] = {}
        self._predicate_ids_by_label: dict[str, list[str]] = {}
        self._literal_ids_by_key: dict[tuple[str, str], list[str]] = {}
        self._counters = {"R": 0, "L": 0, "P": 0, "S": 0}
        self._revision = 0
        self._last_ts_ms = 0
        self._clock = clock or _system_clock_ms
        self._lock = threading.RLock()
        self._wal: io.TextIOWrapper | None = None
        if data_dir is not None:
            path = Path(data_dir)
            path.mkdir(parents=True, exist_ok=True)
            log_path = path / "graph.log"
            if log_path.exists():
                self._replay(log_path.read_text(encoding="utf-8"))
            self._wal = open(log_path, "a", encoding="utf-8", newline="\n")

    # ------------------------------------------------------------------
    # creation

    def create_resource(self, label: str, classes: Iterable[str] = ()) -> Resource:
        label = self._check_label(label)
        with self._lock:
            rid = self._next_id("R")
            resource = Resource(rid, label, frozenset(classes))
            self._resources[rid] = resource
            self._resource_ids_by_label.setdefault(label, []).append(rid)
            self._log(self._resource_record(resource))
            self._revision += 1
            return resource

    def create_literal(self, value: str, datatype: str = "string") -> Literal:
        validate_literal(value, datatype)
        with self._lock:
            lid = self._next_id("L")
            literal = Literal(lid, value, datatype)
            self._literals[lid] = literal
            self._literal_ids_by_key.setdefault((value, datatype), []).append(lid)
            self._log(self._literal_record(literal))
            self._revision += 1
            return literal

    def create_predicate(self, label: str) -> Predicate:
        label = self._check_label(label)
        with self._lock:
            pid = self._next_id("P")
            predicate = Predicate(pid, label)
            self._predicates[pid] = predicate
            self._predicate_ids_by_label.setdefault(label, []).append(pid)
            self._log(self._predicate_record(predicate))
            self._revision += 1
            return predicate

    def create_statement(self, subject: str, predicate: str, obj: str,
                         agent: str = "system") -> Statement:
        with self._lock:
            if subject in self._literals:
                raise LiteralAsSubject(f"literal {subject} cannot be a statement subject")
            if subject not in self._resources:
                raise UnknownReferent(subject)
            if predicate not in self._predicates:
                raise UnknownReferent(predicate)
            if obj not in self._resources and obj not in self._literals:
                raise UnknownReferent(obj)
            sid = self._next_id("S")
            ts = max(self._clock(), self._last_ts_ms)
            self._last_ts_ms = ts
            statement = Statement(sid, subject, predicate, obj,
                                  Provenance(ms_to_datetime(ts), agent))
            self._insert_statement(statement)
            self._log(self._statement_record(statement))
            self._revision += 1
            return statement

    def _insert_statement(self, statement: Statement) -> None:
        self._statements[statement.id] = statement
        self._by_subject.setdefault(statement.subject, []).append(statement.id)
        self._by_object.setdefault(statement.object, []).append(statement.id)
        key = (statement.subject, statement.predicate, statement.object)
        self._by_spo[key] = self._by_spo.get(key, 0) + 1
        self._predicate_use[statement.predicate] = (
            self._predicate_use.get(statement.predicate, 0) + 1
        )

    # ------------------------------------------------------------------
    # deletion (edits are delete + create)

    def delete_statement(self, statement_id: str) -> None:
        with self._lock:
            statement = self._statements.get(statement_id)
            if statement is None:
                raise UnknownReferent(statement_id)
            del self._statements[statement_id]
            self._by_subject[statement.subject].remove(statement_id)
            self._by_object[statement.object].remove(statement_id)
            key = (statement.subject, statement.predicate, statement.object)
            self._by_spo[key] -= 1
            if self._by_spo[key] == 0:
                del self._by_spo[key]
            self._predicate_use[statement.predicate] -= 1
            self._log(f"D\t{statement_id}")
            self._revision += 1

    def delete_node(self, node_id: str) -> None:
        with self._lock:
            if node_id in self._resources:
                if self._by_subject.get(node_id) or self._by_object.get(node_id):
                    raise DanglingStatements(f"{node_id} has incident statements")
                resource = self._resources.pop(node_id)
                self._resource_ids_by_label[resource.label].remove(node_id)
            elif node_id in self._literals:
                if self._by_object.get(node_id):
                    raise DanglingStatements(f"{node_id} has incident statements")
                literal = self._literals.pop(node_id)
                self._literal_ids_by_key[(literal.value, literal.datatype)].remove(node_id)
            else:
                raise UnknownReferent(node_id)
            self._log(f"D\t{node_id}")
            self._revision += 1

    def delete_predicate(self, predicate_id: str) -> None:
        with self._lock:
            predicate = self._predicates.get(predicate_id)
            if predicate is None:
                raise UnknownReferent(predicate_id)
            if self._predicate_use.get(predicate_id, 0) > 0:
                raise DanglingStatements(f"{predicate_id} is used by statements")
            del self._predicates[predicate_id]
            self._predicate_ids_by_label[predicate.label].remove(predicate_id)
            self._log(f"D\t{predicate_id}")
            self._revision += 1

    def set_label(self, entity_id: str, label: str) -> None:
        """Relabel a resource or predicate (used by RDF import)."""
        label = self._check_label(label)
        with self._lock:
            if entity_id in self._resources:
                old = self._resources[entity_id]
                self._resource_ids_by_label[old.label].remove(entity_id)
                self._resources[entity_id] = replace(old, label=label)
                self._resource_ids_by_label.setdefault(label, []).append(entity_id)
            elif entity_id in self._predicates:
                old_p = self._predicates[entity_id]
                self._predicate_ids_by_label[old_p.label].remove(entity_id)
                self._predicates[entity_id] = replace(old_p, label=label)
                self._predicate_ids_by_label.setdefault(label, []).append(entity_id)
            else:
                raise UnknownReferent(entity_id)
            self._log(f"A\t{entity_id}\t{_escape_field(label)}")
            self._revision += 1

    # ------------------------------------------------------------------
    # lookup

    def get_resource(self, resource_id: str) -> Resource:
        resource = self._resources.get(resource_id)
        if resource is None:
            raise UnknownReferent(resource_id)
        return resource

    def get_literal(self, literal_id: str) -> Literal:
        literal = self._literals.get(literal_id)
        if literal is None:
            raise UnknownReferent(literal_id)
        return literal

    def get_predicate(self, predicate_id: str) -> Predicate:
        predicate = self._predicates.get(predicate_id)
        if predicate is None:
            raise UnknownReferent(predicate_id)
        return predicate

    def get_statement(self, statement_id: str) -> Statement:
        statement = self._statements.get(statement_id)
        if statement is None:
            raise UnknownReferent(statement_id)
        return statement

    def has_node(self, node_id: str) -> bool:
        return node_id in self._resources or node_id in self._literals

    def is_literal(self, node_id: str) -> bool:
        return node_id in self._literals

    def node_label(self, node_id: str) -> str:
        """Display text of a node: resource label or literal value."""
        resource = self._resources.get(node_id)
        if resource is not None:
            return resource.label
        literal = self._literals.get(node_id)
        if literal is not None:
            return literal.value
        raise UnknownReferent(node_id)

    def statement_exists(self, subject: str, predicate: str, obj: str) -> bool:
        return (subject, predicate, obj) in self._by_spo

    def find_resource_by_exact_label(self, label: str) -> Resource | None:
        ids = self._resource_ids_by_label.get(label)
        return self._resources[ids[0]] if ids else None

    def find_predicate_by_exact_label(self, label: str) -> Predicate | None:
        ids = self._predicate_ids_by_label.get(label)
        return self._predicates[ids[0]] if ids else None

    def find_literal_by_value(self, value: str, datatype: str = "string") -> Literal | None:
        ids = self._literal_ids_by_key.get((value, datatype))
        return self._literals[ids[0]] if ids else None

    # ------------------------------------------------------------------
    # queries

    def statements_about(self, subject: str) -> list[Statement]:
        ids = self._by_subject.get(subject)
        if not ids:
            return []
        statements = self._statements
        return [statements[sid] for sid in list(ids)]

    def statements_with_object(self, obj: str) -> list[Statement]:
        ids = self._by_object.get(obj)
        if not ids:
            return []
        statements = self._statements
        return [statements[sid] for sid in list(ids)]

    def all_statements(self) -> list[Statement]:
        return list(self._statements.values())

    def subgraph(self, root: str, depth_limit: int = DEFAULT_DEPTH_LIMIT) -> Subgraph:
        """Breadth-first expansion from ``root`` along subject-to-object edges.

        Each node is expanded at most once, so traversal terminates on any
        graph, cycles included. Statement order is BFS level then creation
        order within each expanded node.
        """
        if depth_limit < 1:
            raise ValueError("depth_limit must be >= 1")
        if not self.has_node(root):
            raise UnknownReferent(root)
        collected: list[Statement] = []
        visited = {root}
        frontier = [root]
        depth = 0
        while frontier and depth < depth_limit:
            next_frontier: list[str] = []
            for node in frontier:
                for statement in self.statements_about(node):
                    collected.append(statement)
                    obj = statement.object
                    if obj not in visited:
                        visited.add(obj)
                        next_frontier.append(obj)
            frontier = next_frontier
            depth += 1
        return Subgraph(root, tuple(collected), depth_limit)

    def find_by_label(self, kind: str, query: str, limit: int = 10) -> list:
        """Case-insensitive substring search; exact matches rank first."""
        if limit < 1:
            raise ValueError("limit must be >= 1")
        if kind == "resource":
            entities: Sequence = list(self._resources.values())
        elif kind == "predicate":
            entities = list(self._predicates.values())
        else:
            raise ValueError(f"kind must be 'resource' or 'predicate', got {kind!r}")
        key = label_key(query)
        exact = []
        partial = []
        for entity in entities:
            entity_key = label_key(entity.label)
            if entity_key == key:
                exact.append(entity)
            elif key in entity_key:
                partial.append(entity)
        exact.sort(key=lambda e: numeric_suffix(e.id))
        partial.sort(key=lambda e: numeric_suffix(e.id))
        return (exact + partial)[:limit]

    # ------------------------------------------------------------------
    # counts

    @property
    def revision(self) -> int:
        return self._revision

    def node_count(self) -> int:
        return len(self._resources) + len(self._literals)

    def resource_count(self) -> int:
        return len(self._resources)

    def literal_count(self) -> int:
        return len(self._literals)

    def predicate_count(self) -> int:
        return len(self._predicates)

    def statement_count(self) -> int:
        return len(self._statements)

    def iter_resources(self) -> Iterator[Resource]:
        return iter(list(self._resources.values()))

    def iter_literals(self) -> Iterator[Literal]:
        return iter(list(self._literals.values()))

    def iter_predicates(self) -> Iterator[Predicate]:
        return iter(list(self._predicates.values()))

    # ------------------------------------------------------------------
    # dump / load

    def dumps(self) -> str:
        """Snapshot of live entities in the tab-separated line format."""
        lines: list[str] = []
        for resource in sorted(self._resources.values(), key=lambda r: numeric_suffix(r.id)):
            lines.append(self._resource_record(resource))
        for literal in sorted(self._literals.values(), key=lambda l: numeric_suffix(l.id)):
            lines.append(self._literal_record(literal))
        for predicate in sorted(self._predicates.values(), key=lambda p: numeric_suffix(p.id)):
            lines.append(self._predicate_record(predicate))
        for statement in sorted(self._statements.values(), key=lambda s: numeric_suffix(s.id)):
            lines.append(self._statement_record(statement))
        return "".join(line + "\n" for line in lines)

    def dump(self, path: str | os.PathLike) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def from_dump(cls, text: str, data_dir: str | os.PathLike | None = None,
                  clock: Callable[[], int] | None = None) -> "GraphStore":
        """Rebuild a store from a snapshot; ids are reproduced verbatim."""
        store = cls(data_dir=data_dir, clock=clock)
        store._replay(text, log=data_dir is not None)
        return store

    def _replay(self, text: str, log: bool = False) -> None:
        for line_no, line in enumerate(text.splitlines(), start=1):
            if not line:
                continue
            fields = [_unescape_field(f) for f in line.split("\t")]
            kind = fields[0]
            try:
                if kind == "R":
                    self._restore_resource(fields, log)
                elif kind == "L":
                    self._restore_literal(fields, log)
                elif kind == "P":
                    self._restore_predicate(fields, log)
                elif kind == "S":
                    self._restore_statement(fields, log)
                elif kind == "D":
                    self._replay_delete(fields[1])
                elif kind == "A":
                    self.set_label(fields[1], fields[2])
                else:
                    raise ValueError(f"unknown record kind {kind!r}")
            except (IndexError, ValueError) as exc:
                raise ParseError(str(exc), line_no) from exc

    def _replay_delete(self, entity_id: str) -> None:
        if entity_id.startswith("S"):
            self.delete_statement(entity_id)
        elif entity_id.startswith("P"):
            self.delete_predicate(entity_id)
        else:
            self.delete_node(entity_id)

    def _restore_resource(self, fields: list[str], log: bool) -> None:
        rid, label = fields[1], fields[2]
        classes = frozenset(fields[3:])
        resource = Resource(rid, label, classes)
        self._bump_counter("R", rid)
        self._resources[rid] = resource
        self._resource_ids_by_label.setdefault(label, []).append(rid)
        if log:
            self._log(self._resource_record(resource))
        self._revision += 1

    def _restore_literal(self, fields: list[str], log: bool) -> None:
        lid, datatype, value = fields[1], fields[2], fields[3]
        literal = Literal(lid, value, datatype)
        self._bump_counter("L", lid)
        self._literals[lid] = literal
        self._literal_ids_by_key.setdefault((value, datatype), []).append(lid)
        if log:
            self._log(self._literal_record(literal))
        self._revision += 1

    def _restore_predicate(self, fields: list[str], log: bool) -> None:
        pid, label = fields[1], fields[2]
        predicate = Predicate(pid, label)
        self._bump_counter("P", pid)
        self._predicates[pid] = predicate
        self._predicate_ids_by_label.setdefault(label, []).append(pid)
        if log:
            self._log(self._predicate_record(predicate))
        self._revision += 1

    def _restore_statement(self, fields: list[str], log: bool) -> None:
        sid, subject, predicate, obj, ts, agent = fields[1:7]
        created_at = parse_timestamp(ts)
        statement = Statement(sid, subject, predicate, obj, Provenance(created_at, agent))
        self._bump_counter("S", sid)
        self._last_ts_ms = max(self._last_ts_ms, datetime_to_ms(created_at))
        self._insert_statement(statement)
        if log:
            self._log(self._statement_record(statement))
        self._revision += 1

    def _bump_counter(self, kind: str, entity_id: str) -> None:
        self._counters[kind] = max(self._counters[kind], numeric_suffix(entity_id))

    # ------------------------------------------------------------------
    # internals

    def _check_label(self, label: str) -> str:
        label = nfc(label)
        if not label.strip():
            raise EmptyLabel("label must be non-empty")
        if len(label) > MAX_LABEL_LENGTH:
            raise EmptyLabel(f"label exceeds {MAX_LABEL_LENGTH} characters")
        return label

    def _next_id(self, kind: str) -> str:
        self._counters[kind] += 1
        return f"{kind}{self._counters[kind]}"

    def _resource_record(self, resource: Resource) -> str:
        parts = ["R", resource.id, _escape_field(resource.label)]
        parts.extend(_escape_field(c) for c in sorted(resource.classes))
        return "\t".join(parts)

    def _literal_record(self, literal: Literal) -> str:
        return "\t".join(["L", literal.id, literal.datatype, _escape_field(literal.value)])

    def _predicate_record(self, predicate: Predicate) -> str:
        return "\t".join(["P", predicate.id, _escape_field(predicate.label)])

    def _statement_record(self, statement: Statement) -> str:
        return "\t".join([
            "S", statement.id, statement.subject, statement.predicate, statement.object,
            format_timestamp(statement.provenance.created_at),
            _escape_field(statement.provenance.created_by),
        ])

    def _log(self, record: str) -> None:
        if self._wal is not None:
            self._wal.write(record + "\n")
            self._wal.flush()

    def close(self) -> None:
        if self._wal is not None:
            self._wal.close()
            self._wal = None

    def __enter__(self) -> "GraphStore":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()
