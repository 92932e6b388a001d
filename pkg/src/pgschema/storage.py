"""Catalog file format (see docs/catalog-format.md).

The document is line oriented: a version header, a ``TYPES n`` section, an
``OBJECTS n`` section and an ``END`` line. Each record is one line of
canonical JSON (sorted keys, no whitespace). Records are written sorted by
name, so saving an unchanged catalog always produces identical bytes.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

from . import typesys as ts
from .catalog import Catalog, MemberRef, SchemaObject
from .datatypes import parse_data_type
from .errors import FormatError, IntegrityError, TypeSpecError
from .integrity import check_integrity

HEADER = "PGSCHEMA-CATALOG 1"


def _dumps(record: dict[str, Any]) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _attrs_out(attrs: list[ts.Attribute]) -> list[dict[str, Any]]:
    return [{"name": a.name, "type": str(a.data_type), "not_null": a.not_null} for a in attrs]


def _side_out(side):
    return None if side is None else list(side)


def type_record(t: ts.SchemaType) -> dict[str, Any]:
    if isinstance(t, ts.VertexType):
        return {"kind": "vertex", "name": t.name, "super": t.super_name,
                "attributes": _attrs_out(t.own_attributes),
                "primary_key": list(t.primary_key), "uuid_key": t.uuid_key}
    if isinstance(t, ts.EdgeType):
        return {"kind": "edge", "name": t.name, "super": t.super_name, "directed": t.directed,
                "pairs": [{"from": _side_out(p.from_types), "to": _side_out(p.to_types)}
                          for p in t.endpoint_pairs],
                "attributes": _attrs_out(t.own_attributes),
                "discriminator": None if t.discriminator is None else list(t.discriminator),
                "keys": [list(k) for k in t.secondary_keys],
                "reverse_name": t.reverse_name, "twin_of": t.twin_of}
    if isinstance(t, ts.GraphType):
        return {"kind": "graph", "name": t.name, "super": t.super_name,
                "vertices": list(t.member_vertex_types), "edges": list(t.member_edge_types),
                "graphs": list(t.member_graph_types)}
    return {"kind": "label", "name": t.name, "description": t.description,
            "supers": list(t.super_names), "attributes": _attrs_out(t.own_attributes)}


def object_record(o: SchemaObject) -> dict[str, Any]:
    return {"name": o.qualified_name, "type": o.type_ref, "kind": o.kind,
            "container": o.container,
            "members": [{"alias": m.alias, "target": m.target} for m in o.member_refs],
            "implied": {k: list(v) for k, v in o.implied.items()}}


def save_catalog(catalog: Catalog) -> str:
    lines = [HEADER, f"TYPES {len(catalog.types)}"]
    lines += [_dumps(type_record(catalog.types[n])) for n in sorted(catalog.types)]
    lines.append(f"OBJECTS {len(catalog.objects)}")
    lines += [_dumps(object_record(catalog.objects[n])) for n in sorted(catalog.objects)]
    lines.append("END")
    return "\n".join(lines) + "\n"


# -- loading ----------------------------------------------------------------

class _Record:
    """Field access on one JSON record with FormatError on anything unexpected."""

    def __init__(self, data: Any, lineno: int, allowed: set[str]):
        if not isinstance(data, dict):
            raise FormatError("record is not a JSON object", lineno, 1)
        extra = set(data) - allowed
        if extra:
            raise FormatError(f"unexpected field(s) {sorted(extra)}", lineno, 1)
        self.data = data
        self.lineno = lineno

    def fail(self, msg: str) -> FormatError:
        return FormatError(msg, self.lineno, 1)

    def get(self, key: str, kind, optional: bool = False):
        if key not in self.data:
            raise self.fail(f"missing field '{key}'")
        val = self.data[key]
        if val is None and optional:
            return None
        if kind is int and isinstance(val, bool):
            raise self.fail(f"field '{key}' must be an integer")
        if not isinstance(val, kind):
            raise self.fail(f"field '{key}' has the wrong type")
        return val

    def names(self, key: str, optional: bool = False) -> tuple[str, ...] | None:
        val = self.get(key, list, optional)
        if val is None:
            return None
        if not all(isinstance(v, str) for v in val):
            raise self.fail(f"field '{key}' must be a list of names")
        return tuple(val)

    def attributes(self, owner: str) -> list[ts.Attribute]:
        out = []
        for raw in self.get("attributes", list):
            a = _Record(raw, self.lineno, {"name", "type", "not_null"})
            try:
                dt = parse_data_type(a.get("type", str))
            except TypeSpecError as exc:
                raise self.fail(exc.message) from None
            out.append(ts.Attribute(a.get("name", str), dt, a.get("not_null", bool), owner))
        return out


_TYPE_FIELDS = {
    "vertex": {"kind", "name", "super", "attributes", "primary_key", "uuid_key"},
    "edge": {"kind", "name", "super", "directed", "pairs", "attributes", "discriminator",
             "keys", "reverse_name", "twin_of"},
    "graph": {"kind", "name", "super", "vertices", "edges", "graphs"},
    "label": {"kind", "name", "description", "supers", "attributes"},
}


def _type_from(data: Any, lineno: int) -> ts.SchemaType:
    kind = data.get("kind") if isinstance(data, dict) else None
    if kind not in _TYPE_FIELDS:
        raise FormatError(f"unknown type kind {kind!r}", lineno, 1)
    r = _Record(data, lineno, _TYPE_FIELDS[kind])
    name = r.get("name", str)
    if kind == "label":
        return ts.LabelType(name, r.get("description", str, optional=True), r.attributes(name),
                            r.names("supers"))
    sup = r.get("super", str, optional=True)
    if kind == "vertex":
        return ts.VertexType(name, r.attributes(name), r.names("primary_key"),
                             r.get("uuid_key", bool), sup)
    if kind == "graph":
        return ts.GraphType(name, list(r.names("vertices")), list(r.names("edges")),
                            list(r.names("graphs")), sup)
    pairs = []
    for raw in r.get("pairs", list):
        p = _Record(raw, lineno, {"from", "to"})
        pairs.append(ts.EndpointPair(p.names("from", optional=True), p.names("to", optional=True)))
    keys = []
    for k in r.get("keys", list):
        if not isinstance(k, list) or not all(isinstance(x, str) for x in k):
            raise r.fail("field 'keys' must be a list of name lists")
        keys.append(tuple(k))
    return ts.EdgeType(name, r.get("directed", bool), pairs, r.attributes(name),
                       r.names("discriminator", optional=True), keys,
                       r.get("reverse_name", str, optional=True), sup,
                       r.get("twin_of", str, optional=True))


def _object_from(data: Any, lineno: int) -> SchemaObject:
    r = _Record(data, lineno, {"name", "type", "kind", "container", "members", "implied"})
    kind = r.get("kind", str)
    if kind not in ("vertex", "edge", "graph", "label"):
        raise r.fail(f"unknown object kind {kind!r}")
    members = []
    for raw in r.get("members", list):
        m = _Record(raw, lineno, {"alias", "target"})
        members.append(MemberRef(m.get("alias", str), m.get("target", str)))
    implied = r.get("implied", dict)
    for k, v in implied.items():
        if not isinstance(v, list) or not all(
                isinstance(e, str) and e.split(":", 1)[0] in ("member", "type") for e in v):
            raise r.fail(f"field 'implied' has a bad entry for '{k}'")
    return SchemaObject(r.get("name", str), r.get("type", str), kind,
                        r.get("container", int, optional=True), members,
                        {k: list(v) for k, v in implied.items()})


def load_catalog(text: str) -> Catalog:
    """Parse a catalog document and re-validate every catalog invariant."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    pos = 0

    def take() -> tuple[int, str]:
        nonlocal pos
        if pos >= len(lines):
            raise FormatError("unexpected end of catalog document", len(lines) + 1, 1)
        pos += 1
        return pos, lines[pos - 1].rstrip("\r")

    def section(word: str) -> int:
        lineno, line = take()
        parts = line.split(" ")
        if len(parts) != 2 or parts[0] != word or not parts[1].isdigit():
            raise FormatError(f"expected '{word} <count>'", lineno, 1)
        return int(parts[1])

    lineno, header = take()
    if header != HEADER:
        raise FormatError(f"not a catalog document (expected header {HEADER!r})", lineno, 1)

    def records(count: int):
        for _ in range(count):
            lineno, line = take()
            try:
                yield lineno, json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"malformed record: {exc.msg}", lineno, exc.colno) from None

    cat = Catalog()
    for lineno, data in records(section("TYPES")):
        t = _type_from(data, lineno)
        if t.name in cat.types:
            raise IntegrityError(f"duplicate type '{t.name}'", lineno, 1)
        cat.types[t.name] = t
    for lineno, data in records(section("OBJECTS")):
        o = _object_from(data, lineno)
        if o.qualified_name in cat.objects:
            raise IntegrityError(f"duplicate schema object '{o.qualified_name}'", lineno, 1)
        cat.objects[o.qualified_name] = o
    lineno, end = take()
    if end != "END" or pos != len(lines):
        raise FormatError("expected END as the last line", lineno, 1)

    problems = check_integrity(cat)
    if problems:
        raise IntegrityError(problems[0][1])
    return cat


def read_catalog(path: str | os.PathLike) -> Catalog:
    """Load a catalog file; a missing file is an empty catalog."""
    p = Path(path)
    if not p.exists():
        return Catalog()
    return load_catalog(p.read_text(encoding="utf-8"))


def _file_mode(p: Path) -> int:
    # mkstemp creates 0600 files; keep an existing file's mode, else honour umask
    try:
        return p.stat().st_mode & 0o777
    except FileNotFoundError:
        umask = os.umask(0)
        os.umask(umask)
        return 0o666 & ~umask


def write_catalog(path: str | os.PathLike, catalog: Catalog) -> None:
    """Write atomically: temp file in the same directory, then rename."""
    p = Path(path)
    data = save_catalog(catalog).encode("utf-8")
    fd, tmp = tempfile.mkstemp(prefix=f".{p.name}.", suffix=".tmp", dir=p.parent or ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
            fh.flush()
            os.fsync(fh.fileno())
        os.chmod(tmp, _file_mode(p))
        os.replace(tmp, p)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
