"""Human-readable views of a catalog, used by the CLI and the REPL."""

from __future__ import annotations

from dataclasses import dataclass

from . import typesys as ts
from .catalog import Catalog, SchemaObject


@dataclass(frozen=True)
class Entry:
    """One catalog entry as compared by the checkpoint tests."""
    entry: str  # "type" | "object"
    name: str
    kind: str
    type_ref: str | None = None
    references: frozenset = frozenset()


def catalog_entries(catalog: Catalog) -> set[Entry]:
    out = {Entry("type", n, t.kind) for n, t in catalog.types.items()}
    for o in catalog.objects.values():
        refs = frozenset((m.alias, m.target) for m in o.references)
        out.add(Entry("object", o.qualified_name, o.kind, o.type_ref, refs))
    return out


def _object_line(o: SchemaObject) -> str:
    line = f"schema object {o.qualified_name} of {o.kind} type {o.type_ref}"
    if o.container is not None:
        line += f" [container {o.container}]"
    refs = ", ".join(f"{m.alias} -> {m.target}" for m in o.references)
    if refs:
        line += f", references {refs}"
    if o.owned_members:
        line += f", owns {', '.join(o.owned_members)}"
    return line


def catalog_listing(catalog: Catalog) -> list[str]:
    lines = [f"{catalog.types[n].kind} type {n}" for n in sorted(catalog.types)]
    lines += [_object_line(catalog.objects[n]) for n in sorted(catalog.objects)]
    return lines


def _attr_lines(attrs: list[ts.Attribute], owner: str) -> list[str]:
    out = []
    for a in attrs:
        s = f"    {a.name} {a.data_type}"
        if a.not_null:
            s += " NOT NULL"
        if a.origin != owner:
            s += f"  (from {a.origin})"
        out.append(s)
    return out or ["    (none)"]


def _side(names) -> str:
    return "*" if names is None else "|".join(names)


def describe_type(catalog: Catalog, name: str) -> list[str]:
    reg = catalog.types
    t = ts.get_type(name, reg)
    head = f"{t.kind} type {name}"
    if isinstance(t, ts.LabelType):
        if t.super_names:
            head += f" EXTENDS {', '.join(t.super_names)}"
        lines = [head]
        if t.description is not None:
            lines.append(f"  description: {t.description}")
        lines.append("  attributes:")
        lines += _attr_lines(ts.effective_attributes(name, reg), name)
        return lines
    if t.super_name:
        head += f" EXTENDS {t.super_name}"
    lines = [head]
    if isinstance(t, ts.GraphType):
        vs, es, gs = ts.effective_members(name, reg)
        for label, members, own in (("vertex types", vs, t.member_vertex_types),
                                    ("edge types", es, t.member_edge_types),
                                    ("graph types", gs, t.member_graph_types)):
            shown = [m if m in own else f"{m} (inherited)" for m in members]
            lines.append(f"  {label}: {', '.join(shown) if shown else '(none)'}")
        lines.append(f"  built-in: {ts.LABEL_ATTRIBUTE} {ts.LABEL_ATTRIBUTE_TYPE}")
        return lines
    if isinstance(t, ts.EdgeType):
        lines.append(f"  direction: {'directed' if t.directed else 'undirected'}")
        if t.twin_of:
            lines.append(f"  reverse of: {t.twin_of}")
        elif t.reverse_name:
            lines.append(f"  reverse edge: {t.reverse_name}")
        pairs = ", ".join(f"(FROM {_side(p.from_types)}, TO {_side(p.to_types)})"
                          for p in ts.effective_pairs(name, reg))
        lines.append(f"  pairs: {pairs}")
    lines.append("  attributes:")
    lines += _attr_lines(ts.effective_attributes(name, reg), name)
    if isinstance(t, ts.VertexType):
        lines.append(f"  PRIMARY KEY ({', '.join(ts.primary_key(name, reg))})")
    else:
        disc = ts.effective_discriminator(name, reg)
        if disc:
            lines.append(f"  DISCRIMINATOR ({', '.join(disc)})")
        for k in ts.effective_secondary_keys(name, reg):
            lines.append(f"  KEY ({', '.join(k)})")
        for key in ts.effective_edge_key(name, reg):
            lines.append(f"  edge key {_side((key.source_type,) if key.source_type else None)}"
                         f" -> {_side((key.target_type,) if key.target_type else None)}: "
                         f"({', '.join(key.parts)})")
    lines.append(f"  built-in: {ts.LABEL_ATTRIBUTE} {ts.LABEL_ATTRIBUTE_TYPE}")
    return lines


def describe(catalog: Catalog, name: str) -> list[str] | None:
    """Describe the type and/or schema object called ``name``; None if neither exists."""
    lines: list[str] = []
    if name in catalog.types:
        lines += describe_type(catalog, name)
    if name in catalog.objects:
        lines.append(_object_line(catalog.objects[name]))
    return lines or None
