"""Whole-catalog invariant checks.

Used after every executed statement (as a safety net) and when loading a
catalog file. Each problem is returned as a ``(code, message)`` pair;
``code`` is ``"closure"`` for graph-closure violations and ``"integrity"``
for everything else.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from . import errors as E
from . import typesys as ts

if TYPE_CHECKING:
    from .catalog import Catalog


def _type_problems(types) -> list[tuple[str, str]]:
    out: list[tuple[str, str]] = []
    add = lambda msg: out.append(("integrity", msg))  # noqa: E731

    for key, t in types.items():
        if key != t.name:
            add(f"type registered as '{key}' is named '{t.name}'")
            continue
        if isinstance(t, ts.LabelType):
            for sup in t.super_names:
                if not isinstance(types.get(sup), ts.LabelType):
                    add(f"label '{key}' extends unknown label '{sup}'")
            continue
        if t.super_name is not None:
            sup = types.get(t.super_name)
            if sup is None or sup.kind != t.kind:
                add(f"{t.kind} type '{key}' extends unknown {t.kind} type '{t.super_name}'")
    if out:
        return out

    for key, t in types.items():
        try:
            if isinstance(t, ts.LabelType):
                ts.label_ancestors(key, types)
            else:
                ts.ancestors(key, types)
        except E.InheritanceCycle as exc:
            add(exc.message)
    if out:
        return out

    for key, t in types.items():
        if isinstance(t, ts.GraphType):
            _graph_type_problems(key, t, types, out)
            continue
        attrs = ts.effective_attributes(key, types)
        names = [a.name for a in attrs]
        if len(set(names)) != len(names):
            if isinstance(t, ts.LabelType):
                try:
                    ts.check_label_attributes(key, types)
                except E.SchemaError as exc:
                    add(exc.message)
            else:
                add(f"type '{key}' has duplicate effective attribute names")
        if ts.LABEL_ATTRIBUTE in names:
            add(f"type '{key}' declares the reserved attribute '{ts.LABEL_ATTRIBUTE}'")
        for a in t.own_attributes:
            if a.origin != key:
                add(f"attribute '{a.name}' of '{key}' has origin '{a.origin}'")
        if isinstance(t, ts.VertexType):
            _vertex_problems(key, t, types, names, out)
        elif isinstance(t, ts.EdgeType):
            _edge_problems(key, t, types, set(names), out)
    return out


def _vertex_problems(key, t, types, names, out) -> None:
    add = lambda msg: out.append(("integrity", msg))  # noqa: E731
    if t.super_name is None:
        if not t.own_attributes:
            add(f"vertex type '{key}' has no attributes")
        if not t.primary_key and not t.uuid_key:
            add(f"vertex type '{key}' has no primary key")
    else:
        root = types[ts.root_of(key, types)]
        if (tuple(t.primary_key), t.uuid_key) != (tuple(root.primary_key), root.uuid_key):
            add(f"vertex type '{key}' does not share the primary key of '{root.name}'")
    attrs = {a.name: a for a in ts.effective_attributes(key, types)}
    for k in t.primary_key:
        if k not in attrs:
            add(f"primary key attribute '{k}' of '{key}' is not an attribute")
        elif not attrs[k].not_null:
            add(f"primary key attribute '{k}' of '{key}' is nullable")


def _edge_problems(key, t, types, names, out) -> None:
    add = lambda msg: out.append(("integrity", msg))  # noqa: E731
    for pair in t.endpoint_pairs:
        for v in pair.vertex_types():
            if not isinstance(types.get(v), ts.VertexType):
                add(f"edge type '{key}' references unknown vertex type '{v}'")
    if t.twin_of is not None:
        fwd = types.get(t.twin_of)
        if not isinstance(fwd, ts.EdgeType) or fwd.reverse_name != key:
            add(f"reverse edge '{key}' has no matching forward edge '{t.twin_of}'")
            return
        if t.super_name is not None:
            add(f"reverse edge '{key}' cannot have a super type")
        elif ts.materialize_twin(fwd.name, types) != t:
            add(f"reverse edge '{key}' is out of sync with '{fwd.name}'")
        return
    if t.super_name is None:
        if not t.endpoint_pairs:
            add(f"edge type '{key}' has no (FROM, TO) pairs")
    else:
        if t.endpoint_pairs:
            add(f"edge subtype '{key}' declares its own (FROM, TO) pairs")
        if t.discriminator is not None:
            add(f"edge subtype '{key}' declares its own discriminator")
        if types[t.super_name].directed != t.directed:
            add(f"edge subtype '{key}' changes direction")
    if t.reverse_name is not None:
        if not t.directed:
            add(f"undirected edge '{key}' declares a reverse edge")
        twin = types.get(t.reverse_name)
        if not isinstance(twin, ts.EdgeType) or twin.twin_of != key:
            add(f"reverse edge '{t.reverse_name}' of '{key}' is missing")
    for n in (t.discriminator or ()):
        if n not in names:
            add(f"discriminator attribute '{n}' of '{key}' is not an attribute")
    for k in t.secondary_keys:
        for n in k:
            if n not in names:
                add(f"key attribute '{n}' of '{key}' is not an attribute")


def _graph_type_problems(key, g, types, out) -> None:
    add = lambda msg: out.append(("integrity", msg))  # noqa: E731
    bad = False
    for kind, members in (("vertex", g.member_vertex_types), ("edge", g.member_edge_types),
                          ("graph", g.member_graph_types)):
        if len(set(members)) != len(members):
            add(f"graph type '{key}' lists a {kind} member twice")
        for m in members:
            t = types.get(m)
            if t is None or t.kind != kind:
                add(f"graph type '{key}' has unknown {kind} member '{m}'")
                bad = True
    if bad:
        return
    if key in ts.contained_graph_types(key, types):
        add(f"graph type '{key}' contains itself")
    for e, v in ts.closure_violations(key, types):
        out.append(("closure", f"graph type '{key}' contains edge '{e}' but not its "
                               f"endpoint vertex type '{v}'"))


def check_integrity(catalog: "Catalog") -> list[tuple[str, str]]:
    types, objects = catalog.types, catalog.objects
    out = _type_problems(types)
    add = lambda msg: out.append(("integrity", msg))  # noqa: E731
    if any(code == "integrity" for code, _ in out):
        return out

    containers: dict[int, str] = {}
    aliases: dict[str, str] = {}
    for q, o in objects.items():
        if q != o.qualified_name:
            add(f"object registered as '{q}' is named '{o.qualified_name}'")
            continue
        t = types.get(o.type_ref)
        if t is None:
            add(f"object '{q}' has unknown type '{o.type_ref}'")
            continue
        if t.kind != o.kind:
            add(f"object '{q}' is a {o.kind} but its type '{o.type_ref}' is a {t.kind}")
        if o.kind == "label":
            if o.container is not None:
                add(f"label object '{q}' owns a storage container")
        elif not isinstance(o.container, int) or isinstance(o.container, bool):
            add(f"object '{q}' has no storage container")
        elif o.container in containers:
            add(f"objects '{containers[o.container]}' and '{q}' share container {o.container}")
        else:
            containers[o.container] = q
        if o.member_refs and o.kind != "graph":
            add(f"non-graph object '{q}' has members")
        for m in o.member_refs:
            if m.target not in objects:
                add(f"graph '{q}' member '{m.alias}' points to missing object '{m.target}'")
            if not m.alias.startswith(q + "."):
                add(f"graph '{q}' member alias '{m.alias}' is not qualified by the graph name")
            if not m.owned:
                if m.alias in objects:
                    add(f"reference '{m.alias}' clashes with a schema object name")
                if m.alias in aliases:
                    add(f"reference name '{m.alias}' is used twice")
                aliases[m.alias] = q
        owned = {m.target for m in o.member_refs if m.owned}
        aliases_here = {m.alias for m in o.member_refs}
        for k, entries in o.implied.items():
            if k not in owned:
                add(f"graph '{q}' records additions for '{k}', which it does not own")
            for e in entries:
                if e.startswith("member:") and e[7:] not in aliases_here:
                    add(f"graph '{q}' records missing member '{e[7:]}'")
        if "." in q:
            parent = objects.get(q.rsplit(".", 1)[0])
            if parent is None or parent.kind != "graph" or not any(
                    m.owned and m.target == q for m in parent.member_refs):
                add(f"scoped object '{q}' is not owned by its parent graph")
    if any(code == "integrity" for code, _ in out):
        return out

    instances: dict[str, int] = {}
    for o in objects.values():
        instances[o.type_ref] = instances.get(o.type_ref, 0) + 1
    for key, t in types.items():
        if t.kind == "graph":
            if not instances.get(key):
                add(f"graph type '{key}' has no instance")
        elif key not in objects or objects[key].type_ref != key:
            add(f"{t.kind} type '{key}' has no schema object of the same name")

    for q, o in objects.items():
        if o.kind != "graph":
            continue
        member_types = {objects[m.target].type_ref for m in o.member_refs}
        for m in o.member_refs:
            mo = objects[m.target]
            if mo.kind != "edge":
                continue
            for v in ts.endpoint_vertex_types(mo.type_ref, types):
                if v not in member_types:
                    out.append(("closure", f"graph '{q}' contains edge '{m.target}' but no "
                                           f"member of vertex type '{v}'"))
    return out
