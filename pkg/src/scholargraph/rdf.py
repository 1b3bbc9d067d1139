"""RDF N-Triples export and import with auto-generated URIs.

Export is lossy by design: statement identity and provenance are dropped,
producing one plain triple per statement plus one rdfs:label triple per
labeled entity. Output is UTF-8, LF-terminated and lexicographically sorted,
so exports are byte-stable. Import maps URIs under the configured scheme
back to existing ids and turns foreign URIs into fresh entities labeled with
the URI until an rdfs:label triple overrides it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DatatypeMismatch, ParseError, UnknownReferent
from .graph import GraphStore, validate_literal

RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"

XSD_DATATYPES = {
    "integer": "http://www.w3.org/2001/XMLSchema#integer",
    "decimal": "http://www.w3.org/2001/XMLSchema#decimal",
    "boolean": "http://www.w3.org/2001/XMLSchema#boolean",
}
_XSD_TO_DATATYPE = {uri: name for name, uri in XSD_DATATYPES.items()}


@dataclass(frozen=True)
class UriScheme:
    base: str = "http://orkg.example/"
    resource_path: str = "resource/"
    predicate_path: str = "predicate/"
    class_path: str = "class/"

    def __post_init__(self) -> None:
        if not self.base.endswith("/"):
            raise ValueError("scheme base must end with '/'")

    def resource_uri(self, resource_id: str) -> str:
        return f"{self.base}{self.resource_path}{resource_id}"

    def predicate_uri(self, predicate_id: str) -> str:
        return f"{self.base}{self.predicate_path}{predicate_id}"

    def resource_id(self, uri: str) -> str | None:
        prefix = self.base + self.resource_path
        return uri[len(prefix):] if uri.startswith(prefix) else None

    def predicate_id(self, uri: str) -> str | None:
        prefix = self.base + self.predicate_path
        return uri[len(prefix):] if uri.startswith(prefix) else None


@dataclass(frozen=True)
class ImportReport:
    resources_created: int = 0
    predicates_created: int = 0
    literals_created: int = 0
    statements_created: int = 0
    resources_reused: int = 0
    predicates_reused: int = 0
    literals_reused: int = 0
    statements_reused: int = 0
    labels_set: int = 0


def _escape_literal(value: str) -> str:
    return (value.replace("\\", "\\\\").replace('"', '\\"')
            .replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t"))


def _unescape_literal(value: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(value):
        ch = value[i]
        if ch == "\\" and i + 1 < len(value):
            nxt = value[i + 1]
            simple = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t",
                      "'": "'", "b": "\b", "f": "\f"}
            if nxt in simple:
                out.append(simple[nxt])
                i += 2
                continue
            if nxt == "u" and i + 6 <= len(value):
                out.append(chr(int(value[i + 2:i + 6], 16)))
                i += 6
                continue
            if nxt == "U" and i + 10 <= len(value):
                out.append(chr(int(value[i + 2:i + 10], 16)))
                i += 10
                continue
        out.append(ch)
        i += 1
    return "".join(out)


def export_ntriples(store: GraphStore, scheme: UriScheme | None = None) -> str:
    scheme = scheme or UriScheme()
    lines: list[str] = []
    for statement in store.all_statements():
        subject = f"<{scheme.resource_uri(statement.subject)}>"
        predicate = f"<{scheme.predicate_uri(statement.predicate)}>"
        if store.is_literal(statement.object):
            literal = store.get_literal(statement.object)
            obj = f'"{_escape_literal(literal.value)}"'
            xsd = XSD_DATATYPES.get(literal.datatype)
            if xsd is not None:
                obj += f"^^<{xsd}>"
        else:
            obj = f"<{scheme.resource_uri(statement.object)}>"
        lines.append(f"{subject} {predicate} {obj} .")
    for resource in store.iter_resources():
        lines.append(f"<{scheme.resource_uri(resource.id)}> <{RDFS_LABEL}> "
                     f'"{_escape_literal(resource.label)}" .')
    for predicate_entity in store.iter_predicates():
        lines.append(f"<{scheme.predicate_uri(predicate_entity.id)}> <{RDFS_LABEL}> "
                     f'"{_escape_literal(predicate_entity.label)}" .')
    lines.sort()
    return "".join(line + "\n" for line in lines)


_LINE_RE = re.compile(
    r"^(?P<subject><[^<>]*>|_:\S+)\s+"
    r"(?P<predicate><[^<>]*>)\s+"
    r"(?P<object><[^<>]*>|_:\S+|\"(?:[^\"\\]|\\.)*\"(?:\^\^<[^<>]*>|@[A-Za-z][A-Za-z0-9-]*)?)"
    r"\s*\.\s*$"
)


def parse_ntriples(text: str) -> list[tuple[str, str, tuple]]:
    """Parse into (subject, predicate, object-term) rows.

    Object terms are ("uri", value) or ("literal", value, datatype_uri|None).
    Blank node labels are carried through as subject/object strings starting
    with "_:".
    """
    triples: list[tuple[str, str, tuple]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _LINE_RE.match(line)
        if match is None:
            raise ParseError("not a valid N-Triples line", line_no)
        subject = match.group("subject")
        subject_term = subject[1:-1] if subject.startswith("<") else subject
        predicate = match.group("predicate")[1:-1]
        obj = match.group("object")
        if obj.startswith("<"):
            obj_term: tuple = ("uri", obj[1:-1])
        elif obj.startswith("_:"):
            obj_term = ("uri", obj)
        else:
            closing = obj.rindex('"')
            value = _unescape_literal(obj[1:closing])
            suffix = obj[closing + 1:]
            datatype = suffix[3:-1] if suffix.startswith("^^<") else None
            obj_term = ("literal", value, datatype)
        triples.append((subject_term, predicate, obj_term))
    return triples


def import_ntriples(store: GraphStore, text: str,
                    scheme: UriScheme | None = None,
                    agent: str = "rdf-import") -> ImportReport:
    """Import plain triples; the whole stream is parsed before anything applies."""
    scheme = scheme or UriScheme()
    triples = parse_ntriples(text)

    labels: dict[str, str] = {}
    data_triples: list[tuple[str, str, tuple]] = []
    for subject, predicate, obj in triples:
        if predicate == RDFS_LABEL and obj[0] == "literal":
            labels[subject] = obj[1]
        else:
            data_triples.append((subject, predicate, obj))

    counts = {"resources_created": 0, "predicates_created": 0,
              "literals_created": 0, "statements_created": 0,
              "resources_reused": 0, "predicates_reused": 0,
              "literals_reused": 0, "statements_reused": 0, "labels_set": 0}
    node_ids: dict[str, str] = {}
    predicate_ids: dict[str, str] = {}

    def resolve_node(uri: str) -> str:
        mapped = node_ids.get(uri)
        if mapped is not None:
            return mapped
        scheme_id = scheme.resource_id(uri)
        if scheme_id is not None and store.has_node(scheme_id):
            counts["resources_reused"] += 1
            node_ids[uri] = scheme_id
            return scheme_id
        created = store.create_resource(labels.get(uri, uri)).id
        counts["resources_created"] += 1
        node_ids[uri] = created
        return created

    def resolve_predicate(uri: str) -> str:
        mapped = predicate_ids.get(uri)
        if mapped is not None:
            return mapped
        scheme_id = scheme.predicate_id(uri)
        if scheme_id is not None:
            try:
                store.get_predicate(scheme_id)
            except UnknownReferent:
                pass
            else:
                counts["predicates_reused"] += 1
                predicate_ids[uri] = scheme_id
                return scheme_id
        created = store.create_predicate(labels.get(uri, uri)).id
        counts["predicates_created"] += 1
        predicate_ids[uri] = created
        return created

    def resolve_literal(value: str, datatype_uri: str | None) -> str:
        datatype = _XSD_TO_DATATYPE.get(datatype_uri or "", "string")
        try:
            validate_literal(value, datatype)
        except DatatypeMismatch:
            datatype = "string"  # keep import total over malformed typed values
        existing = store.find_literal_by_value(value, datatype)
        if existing is not None:
            counts["literals_reused"] += 1
            return existing.id
        counts["literals_created"] += 1
        return store.create_literal(value, datatype).id

    for subject, predicate, obj in data_triples:
        subject_id = resolve_node(subject)
        predicate_id = resolve_predicate(predicate)
        if obj[0] == "uri":
            object_id = resolve_node(obj[1])
        else:
            object_id = resolve_literal(obj[1], obj[2])
        if store.statement_exists(subject_id, predicate_id, object_id):
            counts["statements_reused"] += 1
        else:
            store.create_statement(subject_id, predicate_id, object_id, agent)
            counts["statements_created"] += 1

    for uri, label in labels.items():
        entity_id = node_ids.get(uri) or predicate_ids.get(uri)
        if entity_id is None:
            # Entity mentioned only in label triples; the scheme path decides
            # whether it is a predicate or a node.
            if scheme.predicate_id(uri) is not None:
                entity_id = resolve_predicate(uri)
            else:
                entity_id = resolve_node(uri)
        if entity_id.startswith("L"):
            continue
        current = (store.get_resource(entity_id).label
                   if entity_id.startswith("R")
                   else store.get_predicate(entity_id).label)
        if current != label:
            store.set_label(entity_id, label)
            counts["labels_set"] += 1

    return ImportReport(**counts)
