"""Schema objects, the catalog, and statement execution.

Every vertex, edge and label type has a *primary* schema object of the same
name. Graph objects list their members as ``MemberRef(alias, target)``:
an owned member is a separate object whose name is the alias itself
(``G2.A``); a reference member is only an alias inside the graph object
(``G1.A -> A``).

``execute`` runs each statement against a private copy of the catalog and
swaps it in only when the statement succeeded and the result passed the
integrity checks, so a failing statement never leaves partial changes.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass, field

from . import errors as E
from . import nodes as ast
from . import typesys as ts
from .integrity import check_integrity

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MemberRef:
    alias: str
    target: str

    @property
    def owned(self) -> bool:
        return self.alias == self.target


@dataclass
class SchemaObject:
    qualified_name: str
    type_ref: str
    kind: str  # "vertex" | "edge" | "graph" | "label"
    container: int | None = None
    member_refs: list[MemberRef] = field(default_factory=list)
    # owned member created under USE GRAPH -> entries its arrival added to this
    # graph ("member:<alias>" or "type:<type name>"), undone when it is dropped
    implied: dict[str, list[str]] = field(default_factory=dict)

    @property
    def references(self) -> list[MemberRef]:
        return [m for m in self.member_refs if not m.owned]

    @property
    def owned_members(self) -> list[str]:
        return [m.target for m in self.member_refs if m.owned]


@dataclass
class Session:
    current_graph: str | None = None


@dataclass
class ExecResult:
    created: list[str] = field(default_factory=list)
    dropped: list[str] = field(default_factory=list)
    modified: list[str] = field(default_factory=list)
    messages: list[str] = field(default_factory=list)

    def _normalize(self) -> "ExecResult":
        def uniq(xs):
            return list(dict.fromkeys(xs))
        self.created = uniq(self.created)
        self.dropped = [d for d in uniq(self.dropped) if d not in self.created]
        gone = set(self.created) | set(self.dropped)
        self.modified = [m for m in uniq(self.modified) if m not in gone]
        return self


@dataclass
class Catalog:
    types: dict[str, ts.SchemaType] = field(default_factory=dict)
    objects: dict[str, SchemaObject] = field(default_factory=dict)

    @property
    def next_container_id(self) -> int:
        ids = [o.container for o in self.objects.values() if o.container is not None]
        return max(ids, default=0) + 1

    def copy(self) -> "Catalog":
        return Catalog(
            {n: ts.copy_type(t) for n, t in self.types.items()},
            {n: dataclasses.replace(o, member_refs=list(o.member_refs),
                                    implied={k: list(v) for k, v in o.implied.items()})
             for n, o in self.objects.items()})

    def execute(self, stmt: ast.Statement, session: Session | None = None) -> ExecResult:
        return execute(stmt, self, session if session is not None else Session())

    def objects_of_kind(self, kind: str) -> list[SchemaObject]:
        return [self.objects[n] for n in sorted(self.objects) if self.objects[n].kind == kind]

    def types_of_kind(self, kind: str) -> list[str]:
        return sorted(n for n, t in self.types.items() if t.kind == kind)


def base_name(qualified: str) -> str:
    return qualified.rsplit(".", 1)[-1]


def execute(stmt: ast.Statement, catalog: Catalog, session: Session) -> ExecResult:
    """Run one statement; on any error ``catalog`` and ``session`` are untouched."""
    work = catalog.copy()
    scratch_session = Session(session.current_graph)
    try:
        result = _Transaction(work, scratch_session).run(stmt)
        problems = check_integrity(work)
        if problems:
            code, msg = problems[0]
            if code == "closure":
                raise E.ClosureViolation(msg)
            raise E.IntegrityError(f"statement would break catalog integrity: {msg}")
    except E.DDLError as exc:
        raise exc.at(stmt.line or None, stmt.column or None)
    catalog.types, catalog.objects = work.types, work.objects
    session.current_graph = scratch_session.current_graph
    log.debug("executed %s: %s", type(stmt).__name__, result)
    return result._normalize()


class _Transaction:
    """Applies a single statement to a scratch catalog."""

    def __init__(self, catalog: Catalog, session: Session):
        self.cat = catalog
        self.types = catalog.types
        self.objects = catalog.objects
        self.session = session
        self.result = ExecResult()

    # -- dispatch ----------------------------------------------------------

    def run(self, stmt: ast.Statement) -> ExecResult:
        handler = {
            ast.CreateVertex: self.create_vertex,
            ast.CreateEdge: self.create_edge,
            ast.CreateGraph: self.create_graph_object,
            ast.CreateLabel: self.create_label,
            ast.DropVertex: self.drop_vertex,
            ast.DropEdge: self.drop_edge,
            ast.DropGraph: self.drop_graph,
            ast.DropLabel: self.drop_label,
            ast.AlterVertex: self.alter_attributes,
            ast.AlterEdge: self.alter_attributes,
            ast.AlterGraph: self.alter_graph,
            ast.UseGraph: self.use_graph,
        }.get(type(stmt))
        if handler is None:
            raise E.CatalogError(f"cannot execute {type(stmt).__name__}")
        handler(stmt)
        return self.result

    # -- naming and lookup -------------------------------------------------

    @property
    def scope(self) -> str | None:
        return self.session.current_graph

    def scoped(self, name: str) -> str:
        return f"{self.scope}.{name}" if self.scope else name

    def aliases(self) -> dict[str, str]:
        return {m.alias: m.target for o in self.objects.values() for m in o.references}

    def lookup_object(self, raw: str, within: str | None = None) -> str | None:
        """Resolve a name to an object, trying ``within`` (or the scope) first.

        Reference aliases such as ``G1.A`` resolve to their targets.
        """
        aliases = self.aliases()
        candidates = []
        if within:
            candidates.append(f"{within}.{raw}")
        if self.scope and self.scope != within:
            candidates.append(f"{self.scope}.{raw}")
        candidates.append(raw)
        for c in candidates:
            if c in self.objects:
                return c
            if c in aliases:
                return aliases[c]
        return None

    def require_object(self, raw: str, kind: str, error=E.UnknownObject) -> SchemaObject:
        q = self.lookup_object(raw)
        if q is None or self.objects[q].kind != kind:
            raise error(f"unknown {kind} '{raw}'")
        return self.objects[q]

    def require_primary(self, raw: str, kind: str) -> SchemaObject:
        obj = self.require_object(raw, kind)
        if obj.qualified_name != obj.type_ref:
            owner = obj.qualified_name.rsplit(".", 1)[0]
            raise E.OwnedByGraph(
                f"'{obj.qualified_name}' is a member object of graph '{owner}'; "
                f"change it through ALTER GRAPH {owner}")
        return obj

    def resolve_type(self, raw: str) -> str:
        if self.scope and f"{self.scope}.{raw}" in self.types:
            return f"{self.scope}.{raw}"
        return raw

    def name_in_use(self, q: str) -> bool:
        return q in self.objects or q in self.aliases()

    def check_new(self, q: str, *, as_type: bool = True) -> None:
        if as_type and q in self.types:
            raise E.DuplicateType(f"type '{q}' already exists")
        if self.name_in_use(q):
            raise E.DuplicateObject(f"schema object '{q}' already exists")

    def new_container(self) -> int:
        return self.cat.next_container_id

    def add_object(self, q: str, type_ref: str, kind: str, *, container: bool = True,
                   members: list[MemberRef] | None = None) -> SchemaObject:
        obj = SchemaObject(q, type_ref, kind, self.new_container() if container else None,
                           list(members or []))
        self.objects[q] = obj
        self.result.created.append(q)
        return obj

    def primary_object_of(self, type_name: str) -> str | None:
        o = self.objects.get(type_name)
        return type_name if o is not None and o.type_ref == type_name else None

    # -- graph membership helpers -----------------------------------------

    def _add_member(self, graph: SchemaObject, ref: MemberRef) -> None:
        if any(m.alias == ref.alias for m in graph.member_refs) or (
                not ref.owned and self.name_in_use(ref.alias)):
            raise E.DuplicateMember(f"graph '{graph.qualified_name}' already has a member "
                                    f"named '{ref.alias}'")
        graph.member_refs.append(ref)

    def _member_types(self, graph: SchemaObject) -> list[str]:
        return [self.objects[m.target].type_ref for m in graph.member_refs]

    def _add_type_member(self, gt: ts.GraphType, type_name: str) -> list[str]:
        """List a type (and an edge's endpoint types) in a graph type; return what was added."""
        added = []
        kind = self.types[type_name].kind
        vs, es, gs = ts.effective_members(gt.name, self.types)
        lst = {"vertex": (gt.member_vertex_types, vs), "edge": (gt.member_edge_types, es),
               "graph": (gt.member_graph_types, gs)}[kind]
        if type_name not in lst[1]:
            lst[0].append(type_name)
            added.append(type_name)
        if kind == "edge":
            vs, _, _ = ts.effective_members(gt.name, self.types)
            for v in ts.endpoint_vertex_types(type_name, self.types):
                if v not in vs:
                    gt.member_vertex_types.append(v)
                    vs.append(v)
                    added.append(v)
        return added

    def _ensure_endpoints(self, graph: SchemaObject, own: bool) -> list[str]:
        """Add the endpoint vertex types of every member edge to the graph object.

        Returns the aliases of the reference members that were added.
        """
        added = []
        for m in list(graph.member_refs):
            mo = self.objects[m.target]
            if mo.kind != "edge":
                continue
            for v in ts.endpoint_vertex_types(mo.type_ref, self.types):
                if v in self._member_types(graph):
                    continue
                if own:
                    q = f"{graph.qualified_name}.{base_name(v)}"
                    self.check_new(q, as_type=False)
                    self.add_object(q, v, "vertex")
                    self._add_member(graph, MemberRef(q, q))
                    continue
                target = self.primary_object_of(v)
                if target is None:
                    raise E.ClosureViolation(
                        f"edge '{m.target}' needs vertex type '{v}', which has no schema object")
                alias = f"{graph.qualified_name}.{base_name(target)}"
                self._add_member(graph, MemberRef(alias, target))
                added.append(alias)
        return added

    def attach_to_scope(self, q: str) -> None:
        """Register a newly created object as an owned member of the current graph."""
        if not self.scope:
            return
        graph = self.objects[self.scope]
        obj = self.objects[q]
        self._add_member(graph, MemberRef(q, q))
        added = self._add_type_member(self.types[graph.type_ref], obj.type_ref)
        if obj.kind == "graph" and graph.type_ref in ts.contained_graph_types(
                graph.type_ref, self.types):
            raise E.InheritanceCycle(
                f"graph type '{graph.type_ref}' would contain itself through '{q}'")
        entries = [f"type:{t}" for t in added]
        entries += [f"member:{a}" for a in self._ensure_endpoints(graph, own=False)]
        if entries:
            graph.implied[q] = entries
        self.result.modified.append(graph.qualified_name)

    def _undo_implied(self, graph: SchemaObject, entries: list[str]) -> None:
        """Take back what scoped members brought into a graph, unless still needed."""
        gt = self.types[graph.type_ref]
        sharing = [o for o in self.objects.values() if o.type_ref == gt.name]
        _, es, _ = ts.effective_members(gt.name, self.types)

        def endpoints(edge_types):
            return {v for e in edge_types for v in ts.endpoint_vertex_types(e, self.types)}

        # references first, so a type listing they kept alive can go too
        for entry in sorted(entries, key=lambda e: not e.startswith("member:")):
            what, name = entry.split(":", 1)
            if what == "member":
                ref = next((m for m in graph.member_refs if m.alias == name), None)
                if ref is None or ref.owned:
                    continue
                edges = [t for t in self._member_types(graph) if self.types[t].kind == "edge"]
                if self.objects[ref.target].type_ref not in endpoints(edges):
                    graph.member_refs.remove(ref)
            elif name in self.types:
                used = any(name in self._member_types(o) for o in sharing)
                if self.types[name].kind == "vertex":
                    used = used or name in endpoints(es)
                if not used:
                    for lst in (gt.member_vertex_types, gt.member_edge_types,
                                gt.member_graph_types):
                        if name in lst:
                            lst.remove(name)

    def prune(self, object_names: set[str], type_names: set[str]) -> None:
        for o in self.objects.values():
            if o.member_refs:
                kept = [m for m in o.member_refs if m.target not in object_names]
                if len(kept) != len(o.member_refs):
                    o.member_refs = kept
                    self.result.modified.append(o.qualified_name)
            if o.implied:
                aliases = {m.alias for m in o.member_refs}
                o.implied = {
                    k: es for k, es in (
                        (k, [e for e in v if (e[7:] in aliases if e.startswith("member:")
                                              else e[5:] not in type_names)])
                        for k, v in o.implied.items() if k not in object_names)
                    if es}
        for t in self.types.values():
            if isinstance(t, ts.GraphType):
                for lst in (t.member_vertex_types, t.member_edge_types, t.member_graph_types):
                    lst[:] = [n for n in lst if n not in type_names]

    def refresh_twins(self) -> None:
        for name in sorted(self.types):
            t = self.types[name]
            if isinstance(t, ts.EdgeType) and t.twin_of is not None and t.twin_of in self.types:
                fresh = ts.materialize_twin(t.twin_of, self.types)
                if fresh != t:
                    self.types[name] = fresh
                    if name in self.objects:
                        self.result.modified.append(name)

    # -- CREATE ------------------------------------------------------------

    def create_vertex(self, stmt: ast.CreateVertex) -> None:
        q = self.scoped(stmt.name)
        self.check_new(q)
        self.types[q] = ts.build_vertex_type(stmt, self.types, name=q, resolve=self.resolve_type)
        self.add_object(q, q, "vertex")
        self.attach_to_scope(q)
        self.result.messages.append(f"created vertex type and schema object {q}")

    def create_edge(self, stmt: ast.CreateEdge) -> None:
        q = self.scoped(stmt.name)
        self.check_new(q)
        rev = self.scoped(stmt.reverse_name) if stmt.reverse_name else None
        if rev is not None:
            self.check_new(rev)
        if stmt.extends is not None:
            sup = self.types.get(self.resolve_type(stmt.extends))
            if isinstance(sup, ts.EdgeType) and sup.twin_of is not None:
                raise E.ReverseEdgeError(f"'{sup.name}' is the reverse of edge type "
                                         f"'{sup.twin_of}' and cannot be extended")
        edge = ts.build_edge_type(stmt, self.types, name=q, resolve=self.resolve_type,
                                  reverse_name=rev)
        self.types[q] = edge
        self.add_object(q, q, "edge")
        if rev is not None:
            self.types[rev] = ts.materialize_twin(q, self.types)
            self.add_object(rev, rev, "edge")
        self.attach_to_scope(q)
        if rev is not None:
            self.attach_to_scope(rev)
        made = f"{q} and its reverse {rev}" if rev else q
        self.result.messages.append(f"created edge type and schema object {made}")

    def create_label(self, stmt: ast.CreateLabel) -> None:
        # labels never belong to a graph, so they are global even under USE GRAPH
        q = stmt.name
        self.check_new(q)
        self.types[q] = ts.build_label_type(stmt, self.types, name=q, resolve=self.resolve_type)
        self.add_object(q, q, "label", container=False)
        self.result.messages.append(f"created label {q}")

    def create_graph_object(self, stmt: ast.CreateGraph) -> None:
        q = self.scoped(stmt.name)
        if stmt.as_type is not None:
            self._create_graph_instance(q, stmt.as_type)
            return
        self.check_new(q)
        resolved: dict[str, str] = {}
        for m in stmt.members:
            target = self.lookup_object(m.name)
            if target is None or self.objects[target].kind == "label":
                raise E.UnknownMember(f"unknown graph member '{m.name}'")
            resolved[m.name] = target
        gt = ts.build_graph_type(stmt, self.types, name=q, resolve=self.resolve_type,
                                 resolve_member=lambda raw: self.objects[resolved[raw]].type_ref)
        self.types[q] = gt
        graph = self.add_object(q, q, "graph")

        if gt.super_name is not None:
            vs, es, gs = ts.effective_members(gt.super_name, self.types)
            for t in vs + es + gs:
                target = self.primary_object_of(t) or self._any_instance(t)
                if target is None:
                    raise E.UnknownMember(f"inherited member '{t}' has no schema object")
                self._add_member(graph, MemberRef(f"{q}.{base_name(target)}", target))
        for m in stmt.members:
            target = resolved[m.name]
            mo = self.objects[target]
            if target in (r.target for r in graph.member_refs):
                continue
            if stmt.owns:
                if mo.kind == "graph":
                    raise E.UnknownMember(f"graph '{q}' cannot own a copy of graph '{m.name}'")
                child = f"{q}.{base_name(target)}"
                self.check_new(child, as_type=False)
                self.add_object(child, mo.type_ref, mo.kind)
                self._add_member(graph, MemberRef(child, child))
            else:
                self._add_member(graph, MemberRef(f"{q}.{base_name(target)}", target))
        self._ensure_endpoints(graph, own=stmt.owns)
        self.attach_to_scope(q)
        self.result.messages.append(f"created graph type and schema object {q}")

    def _any_instance(self, type_name: str) -> str | None:
        names = sorted(n for n, o in self.objects.items() if o.type_ref == type_name)
        return names[0] if names else None

    def _create_graph_instance(self, q: str, raw_type: str) -> None:
        t_name = self.resolve_type(raw_type)
        if not isinstance(self.types.get(t_name), ts.GraphType):
            raise E.UnknownGraphType(f"unknown graph type '{raw_type}'")
        self.check_new(q)
        source = self.primary_object_of(t_name) or self._any_instance(t_name)
        graph = self.add_object(q, t_name, "graph")
        if source is not None:
            for m in self.objects[source].member_refs:
                self._add_member(graph, MemberRef(f"{q}.{base_name(m.alias)}", m.target))
        self.attach_to_scope(q)
        self.result.messages.append(f"created schema object {q} of graph type {t_name}")

    # -- DROP --------------------------------------------------------------

    def _check_unused(self, type_names: set[str], except_objects: set[str]) -> None:
        for o in self.objects.values():
            if o.type_ref in type_names and o.qualified_name not in except_objects:
                raise E.TypeInUse(f"type '{o.type_ref}' is still used by schema object "
                                  f"'{o.qualified_name}'")

    def _remove(self, object_names: set[str], type_names: set[str]) -> None:
        undo = {o.qualified_name: [e for k in sorted(object_names) for e in o.implied.get(k, ())]
                for o in self.objects.values()
                if o.qualified_name not in object_names and o.implied.keys() & object_names}
        for n in sorted(object_names):
            self.objects.pop(n, None)
            self.result.dropped.append(n)
        for n in type_names:
            self.types.pop(n, None)
        self.prune(object_names, type_names)
        for q, entries in undo.items():
            self._undo_implied(self.objects[q], entries)
        if self.session.current_graph in object_names:
            self.session.current_graph = None

    def _leaf_first(self, names: list[str]) -> list[str]:
        return sorted(names, key=lambda n: (-len(ts.ancestors(n, self.types)), n))

    def _drop_vertex_type(self, obj: SchemaObject, cascade: bool) -> None:
        t = obj.type_ref
        subs = ts.direct_subtypes(t, self.types)
        if subs:
            raise E.HasSubtypes(f"vertex type '{t}' has subtypes: {', '.join(subs)}")
        self._check_unused({t}, {obj.qualified_name})
        referencing = sorted(
            e.name for e in self.types.values()
            if isinstance(e, ts.EdgeType) and e.twin_of is None
            and any(p.mentions(t) for p in e.endpoint_pairs))
        if referencing and not cascade:
            raise E.ReferencedByEdge(
                f"vertex type '{t}' is referenced by edge type(s) {', '.join(referencing)}; "
                f"use CASCADE")
        for name in referencing:
            edge = self.types[name]
            kept = []
            for p in edge.endpoint_pairs:
                p2 = p.without(t) if p.mentions(t) else p
                if p2 is not None and p2 not in kept:
                    kept.append(p2)
            if kept:
                edge.endpoint_pairs = kept
                self.result.modified.append(name)
                self.result.messages.append(f"edge type {name} no longer references {t}")
            else:
                self._drop_edge_tree(name)
        self._remove({obj.qualified_name}, {t})
        self.refresh_twins()
        self.result.messages.append(f"dropped vertex type and schema object {t}")

    def _edge_with_twin(self, name: str) -> set[str]:
        out = {name}
        rev = self.types[name].reverse_name
        if rev and isinstance(self.types.get(rev), ts.EdgeType) and self.types[rev].twin_of == name:
            out.add(rev)
        return out

    def _drop_edge_tree(self, name: str) -> None:
        names: set[str] = set()
        for n in [name] + ts.descendants(name, self.types):
            names |= self._edge_with_twin(n)
        primaries = {n for n in names if self.primary_object_of(n)}
        self._check_unused(names, primaries)
        self._remove(primaries, names)
        self.result.messages.append(f"dropped edge type(s) {', '.join(sorted(names))}")

    def drop_vertex(self, stmt: ast.DropVertex) -> None:
        if stmt.star:
            targets = [o.qualified_name for o in self.cat.objects_of_kind("vertex")
                       if o.qualified_name == o.type_ref]
            for q in self._leaf_first(targets):
                self._drop_vertex_type(self.objects[q], stmt.cascade)
            return
        for raw in stmt.names:
            self._drop_vertex_type(self.require_primary(raw, "vertex"), stmt.cascade)

    def drop_edge(self, stmt: ast.DropEdge) -> None:
        if stmt.star:
            targets = [o.qualified_name for o in self.cat.objects_of_kind("edge")
                       if o.qualified_name == o.type_ref
                       and self.types[o.type_ref].twin_of is None]
            for q in self._leaf_first(targets):
                if q in self.objects:
                    self._drop_edge_object(self.objects[q])
            return
        for raw in stmt.names:
            self._drop_edge_object(self.require_primary(raw, "edge"))

    def _drop_edge_object(self, obj: SchemaObject) -> None:
        t = self.types[obj.type_ref]
        if t.twin_of is not None:
            raise E.ReverseEdgeError(
                f"'{t.name}' is the reverse of edge type '{t.twin_of}'; drop '{t.twin_of}'")
        subs = ts.direct_subtypes(t.name, self.types)
        if subs:
            raise E.HasSubtypes(f"edge type '{t.name}' has subtypes: {', '.join(subs)}")
        self._drop_edge_tree(t.name)

    def drop_graph(self, stmt: ast.DropGraph) -> None:
        for raw in stmt.names:
            self._drop_graph_object(self.require_object(raw, "graph"))

    def _drop_graph_object(self, obj: SchemaObject) -> None:
        q = obj.qualified_name
        prefix = q + "."
        gone_objects = {q} | {n for n in self.objects if n.startswith(prefix)}
        gone_types = {n for n in self.types if n.startswith(prefix)}
        gt = obj.type_ref
        # a graph created under USE GRAPH is listed in its parent's graph type
        # only because of that scope; the listing goes away with the object
        parent = self.objects.get(q.rsplit(".", 1)[0]) if "." in q else None
        parent_type = parent.type_ref if parent is not None and q in parent.owned_members \
            else None
        if gt not in gone_types and not any(
                o.type_ref == gt for n, o in self.objects.items() if n not in gone_objects):
            held = [t.name for t in self.types.values() if isinstance(t, ts.GraphType)
                    and t.name not in gone_types and gt in t.member_graph_types
                    and t.name not in (gt, parent_type)]
            if not held:
                subs = [s for s in ts.direct_subtypes(gt, self.types) if s not in gone_types]
                if subs:
                    raise E.HasSubtypes(f"graph type '{gt}' has subtypes: {', '.join(subs)}")
                gone_types.add(gt)

        for o in self.objects.values():
            if o.qualified_name in gone_objects or o.kind != "graph":
                continue
            for m in o.member_refs:
                if m.target in gone_objects and not (m.owned and m.target == q):
                    raise E.ReferencedByGraph(
                        f"graph '{o.qualified_name}' references '{m.target}' through '{m.alias}'")
        self._check_unused(gone_types, gone_objects)
        for t in self.types.values():
            if t.name in gone_types:
                continue
            if isinstance(t, ts.LabelType):
                parents = t.super_names
            else:
                parents = (t.super_name,) if t.super_name else ()
            for p in parents:
                if p in gone_types:
                    raise E.HasSubtypes(f"type '{p}' has subtype '{t.name}'")
            if isinstance(t, ts.EdgeType):
                for p in t.endpoint_pairs:
                    for v in p.vertex_types():
                        if v in gone_types:
                            raise E.ReferencedByEdge(
                                f"vertex type '{v}' is referenced by edge type '{t.name}'")
            if isinstance(t, ts.GraphType) and t.name != parent_type:
                for g in t.member_graph_types:
                    if g in gone_types:
                        raise E.ReferencedByGraph(f"graph type '{t.name}' contains '{g}'")
        self._remove(gone_objects, gone_types)
        self.result.messages.append(f"dropped graph {q}")

    def drop_label(self, stmt: ast.DropLabel) -> None:
        for raw in stmt.names:
            obj = self.require_object(raw, "label")
            subs = ts.direct_subtypes(obj.type_ref, self.types)
            if subs:
                raise E.HasSubtypes(f"label '{obj.type_ref}' has subtypes: {', '.join(subs)}")
            self._remove({obj.qualified_name}, {obj.type_ref})
            self.result.messages.append(f"dropped label {obj.type_ref}")

    # -- ALTER -------------------------------------------------------------

    def alter_attributes(self, stmt) -> None:
        kind = "vertex" if isinstance(stmt, ast.AlterVertex) else "edge"
        obj = self.require_primary(stmt.name, kind)
        t = self.types[obj.type_ref]
        if kind == "edge" and t.twin_of is not None:
            raise E.ReverseEdgeError(
                f"'{t.name}' is the reverse of edge type '{t.twin_of}'; alter '{t.twin_of}'")
        family = [t.name] + ts.descendants(t.name, self.types)
        if stmt.action == "ADD":
            new = ts._convert_attributes(stmt.attributes, t.name)
            taken = {a.name for a in ts.effective_attributes(t.name, self.types)}
            for d in family[1:]:
                taken |= {a.name for a in self.types[d].own_attributes}
            for a in new:
                if a.name in taken:
                    raise E.DuplicateAttribute(
                        f"attribute '{a.name}' already exists in '{t.name}' or a subtype")
            t.own_attributes.extend(new)
        else:
            for name in stmt.drop_names:
                own = [a.name for a in t.own_attributes]
                if name not in own:
                    inherited = {a.name for a in ts.effective_attributes(t.name, self.types)}
                    if name in inherited:
                        raise E.InheritedAttribute(
                            f"attribute '{name}' is inherited by '{t.name}'; alter its super type")
                    raise E.UnknownAttribute(f"'{t.name}' has no attribute '{name}'")
                if kind == "vertex" and name in t.primary_key:
                    raise E.PrimaryKeyAttribute(
                        f"attribute '{name}' is part of the primary key of '{t.name}'")
                if kind == "edge":
                    for d in family:
                        keys = [self.types[d].discriminator or ()] + self.types[d].secondary_keys
                        if any(name in k for k in keys):
                            raise E.KeyAttribute(
                                f"attribute '{name}' is used by a key of edge type '{d}'")
                t.own_attributes = [a for a in t.own_attributes if a.name != name]
        self.refresh_twins()
        changed = [n for n in family if self.primary_object_of(n)]
        if kind == "edge":
            for n in family:
                rev = self.types[n].reverse_name
                if rev and self.primary_object_of(rev):
                    changed.append(rev)
        self.result.modified.extend(changed)
        self.result.messages.append(
            f"{'added' if stmt.action == 'ADD' else 'dropped'} attribute(s) "
            f"{', '.join(a.name for a in stmt.attributes) or ', '.join(stmt.drop_names)} "
            f"on {t.name}")

    def _graph_member(self, graph: SchemaObject, raw: str, kind: str) -> SchemaObject:
        q = self.lookup_object(raw, within=graph.qualified_name)
        if q is None or self.objects[q].kind != kind:
            raise E.UnknownMember(f"unknown {kind} '{raw}'")
        return self.objects[q]

    def _drop_member_objects(self, graph: SchemaObject, type_name: str, cascade: bool) -> None:
        for m in list(graph.member_refs):
            if m not in graph.member_refs:
                continue
            mo = self.objects.get(m.target)
            if mo is None or mo.type_ref != type_name:
                continue
            if not m.owned:
                graph.member_refs.remove(m)
            elif mo.qualified_name == mo.type_ref:
                # a type created inside this graph goes away with its membership
                if mo.kind == "vertex":
                    self._drop_vertex_type(mo, cascade)
                else:
                    self._drop_edge_object(mo)
            else:
                self._remove({mo.qualified_name}, set())

    def alter_graph(self, stmt: ast.AlterGraph) -> None:
        graph = self.require_object(stmt.name, "graph")
        gt = self.types[graph.type_ref]
        kind = stmt.member_kind.lower()
        members = [self._graph_member(graph, raw, kind) for raw in stmt.names]
        if stmt.action == "ADD":
            for mo in members:
                vs, es, _ = ts.effective_members(gt.name, self.types)
                in_type = mo.type_ref in (vs if kind == "vertex" else es)
                in_obj = mo.type_ref in self._member_types(graph)
                if in_type and in_obj:
                    raise E.DuplicateMember(
                        f"'{mo.qualified_name}' is already a member of '{graph.qualified_name}'")
                self._add_type_member(gt, mo.type_ref)
                if not in_obj:
                    self._add_member(graph, MemberRef(
                        f"{graph.qualified_name}.{base_name(mo.qualified_name)}",
                        mo.qualified_name))
            self._ensure_endpoints(graph, own=False)
        else:
            own_list = gt.member_vertex_types if kind == "vertex" else gt.member_edge_types
            for mo in members:
                t = mo.type_ref
                vs, es, _ = ts.effective_members(gt.name, self.types)
                inherited = (vs if kind == "vertex" else es)
                if t not in own_list and t in inherited:
                    raise E.InheritedMember(
                        f"'{t}' is inherited by graph type '{gt.name}' from its super type")
                if t not in own_list and t not in self._member_types(graph):
                    raise E.UnknownMember(f"'{t}' is not a member of '{graph.qualified_name}'")
                if kind == "vertex":
                    dependent = [e for e in dict.fromkeys(es + [
                        x for x in self._member_types(graph) if self.types[x].kind == "edge"])
                        if t in ts.endpoint_vertex_types(e, self.types)]
                    if dependent and not stmt.cascade:
                        raise E.ReferencedByEdge(
                            f"member edge type(s) {', '.join(dependent)} reference '{t}'; "
                            f"use CASCADE")
                    for e in dependent:
                        if e in gt.member_edge_types:
                            gt.member_edge_types.remove(e)
                        elif e in es:
                            raise E.InheritedMember(
                                f"edge '{e}' is inherited by graph type '{gt.name}'")
                        if e in self.types:
                            self._drop_member_objects(graph, e, stmt.cascade)
                if t in own_list:
                    own_list.remove(t)
                if t in self.types:
                    self._drop_member_objects(graph, t, stmt.cascade)
        self.result.modified.append(graph.qualified_name)
        self.result.messages.append(
            f"{'added' if stmt.action == 'ADD' else 'dropped'} {kind} member(s) "
            f"{', '.join(stmt.names)} {'to' if stmt.action == 'ADD' else 'from'} "
            f"{graph.qualified_name}")

    # -- USE ---------------------------------------------------------------

    def use_graph(self, stmt: ast.UseGraph) -> None:
        graph = self.require_object(stmt.name, "graph", error=E.UnknownGraph)
        self.session.current_graph = graph.qualified_name
        self.result.messages.append(f"using graph {graph.qualified_name}")
