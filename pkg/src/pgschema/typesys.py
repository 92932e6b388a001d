"""Vertex, edge, graph and label types; validation and inheritance.

The catalog keeps types in a plain ``dict`` (the *registry*) keyed by
qualified type name. Everything here reads the registry and never mutates
it: ``build_*`` return new type objects, ``effective_*`` compute inherited
views on demand, so a change to a supertype is seen by every descendant
without any copying.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Callable, ClassVar, Iterable, Mapping, Union

from . import errors as E
from . import nodes as ast
from .datatypes import LABEL_SET, DataType, parse_data_type

LABEL_ATTRIBUTE = "_label"
LABEL_ATTRIBUTE_TYPE = LABEL_SET
# stands in for the primary key of a vertex type with an auto-assigned key
UUID_KEY = ("UUID",)


@dataclass
class Attribute:
    name: str
    data_type: DataType
    not_null: bool = False
    origin: str = ""


@dataclass(frozen=True)
class EndpointPair:
    from_types: tuple[str, ...] | None
    to_types: tuple[str, ...] | None

    def mentions(self, vertex: str) -> bool:
        return vertex in (self.from_types or ()) or vertex in (self.to_types or ())

    def vertex_types(self) -> list[str]:
        return list(self.from_types or ()) + list(self.to_types or ())

    def swapped(self) -> "EndpointPair":
        return EndpointPair(self.to_types, self.from_types)

    def without(self, vertex: str) -> "EndpointPair | None":
        """Pair with ``vertex`` removed from both sides; None if a side empties."""
        def strip(side):
            if side is None:
                return None
            rest = tuple(t for t in side if t != vertex)
            return rest if rest else ()
        src, dst = strip(self.from_types), strip(self.to_types)
        if src == () or dst == ():
            return None
        return EndpointPair(src, dst)


@dataclass
class VertexType:
    name: str
    own_attributes: list[Attribute] = field(default_factory=list)
    primary_key: tuple[str, ...] = ()
    uuid_key: bool = False
    super_name: str | None = None

    kind: ClassVar[str] = "vertex"
    has_label_attribute: ClassVar[bool] = True


@dataclass
class EdgeType:
    name: str
    directed: bool
    endpoint_pairs: list[EndpointPair] = field(default_factory=list)
    own_attributes: list[Attribute] = field(default_factory=list)
    discriminator: tuple[str, ...] | None = None
    secondary_keys: list[tuple[str, ...]] = field(default_factory=list)
    reverse_name: str | None = None
    super_name: str | None = None
    # set on a materialized reverse twin: name of its forward edge type
    twin_of: str | None = None

    kind: ClassVar[str] = "edge"
    has_label_attribute: ClassVar[bool] = True


@dataclass
class GraphType:
    name: str
    member_vertex_types: list[str] = field(default_factory=list)
    member_edge_types: list[str] = field(default_factory=list)
    member_graph_types: list[str] = field(default_factory=list)
    super_name: str | None = None

    kind: ClassVar[str] = "graph"
    has_label_attribute: ClassVar[bool] = True


@dataclass
class LabelType:
    name: str
    description: str | None = None
    own_attributes: list[Attribute] = field(default_factory=list)
    super_names: tuple[str, ...] = ()

    kind: ClassVar[str] = "label"
    has_label_attribute: ClassVar[bool] = False


SchemaType = Union[VertexType, EdgeType, GraphType, LabelType]
Registry = Mapping[str, SchemaType]
Resolver = Callable[[str], str]


def copy_type(t: SchemaType) -> SchemaType:
    """Independent copy; frozen parts (data types, endpoint pairs) are shared."""
    if isinstance(t, GraphType):
        return dataclasses.replace(t, member_vertex_types=list(t.member_vertex_types),
                                   member_edge_types=list(t.member_edge_types),
                                   member_graph_types=list(t.member_graph_types))
    attrs = [dataclasses.replace(a) for a in t.own_attributes]
    if isinstance(t, EdgeType):
        return dataclasses.replace(t, own_attributes=attrs,
                                   endpoint_pairs=list(t.endpoint_pairs),
                                   secondary_keys=list(t.secondary_keys))
    return dataclasses.replace(t, own_attributes=attrs)


def _identity(name: str) -> str:
    return name


@dataclass(frozen=True)
class EdgeKey:
    """Default identifying key of an edge for one concrete endpoint combination."""
    source_type: str | None
    target_type: str | None
    source_key: tuple[str, ...]
    target_key: tuple[str, ...]
    discriminator: tuple[str, ...] = ()

    @property
    def parts(self) -> tuple[str, ...]:
        return self.source_key + self.target_key + self.discriminator


# -- lookups ----------------------------------------------------------------

def get_type(name: str, registry: Registry, kind: str | None = None) -> SchemaType:
    t = registry.get(name)
    if t is None or (kind is not None and t.kind != kind):
        what = f"{kind} type" if kind else "type"
        raise E.UnknownType(f"unknown {what} '{name}'")
    return t


def ancestors(name: str, registry: Registry) -> list[str]:
    """Super chain of a vertex, edge or graph type, root first, excluding ``name``."""
    chain: list[str] = []
    seen = {name}
    cur = get_type(name, registry).super_name
    while cur is not None:
        if cur in seen:
            raise E.InheritanceCycle(f"inheritance cycle through '{cur}'")
        seen.add(cur)
        chain.append(cur)
        cur = get_type(cur, registry).super_name
    chain.reverse()
    return chain


def root_of(name: str, registry: Registry) -> str:
    chain = ancestors(name, registry)
    return chain[0] if chain else name


def label_ancestors(name: str, registry: Registry) -> list[str]:
    """All label ancestors, supers visited in declaration order, ancestors first."""
    order: list[str] = []
    done: set[str] = set()

    def visit(n: str, path: tuple[str, ...]) -> None:
        for sup in get_type(n, registry, "label").super_names:
            if sup in path:
                raise E.InheritanceCycle(f"label inheritance cycle through '{sup}'")
            if sup in done:
                continue
            visit(sup, path + (sup,))
            done.add(sup)
            order.append(sup)

    visit(name, (name,))
    return order


def direct_subtypes(name: str, registry: Registry) -> list[str]:
    out = []
    for t in registry.values():
        if isinstance(t, LabelType):
            if name in t.super_names:
                out.append(t.name)
        elif t.super_name == name:
            out.append(t.name)
    return sorted(out)


def descendants(name: str, registry: Registry) -> list[str]:
    out: list[str] = []
    todo = direct_subtypes(name, registry)
    while todo:
        n = todo.pop(0)
        if n in out:
            continue
        out.append(n)
        todo.extend(direct_subtypes(n, registry))
    return out


def effective_attributes(type_name: str, registry: Registry) -> list[Attribute]:
    """Inherited attributes first (root to leaf), then the type's own ones."""
    t = get_type(type_name, registry)
    if isinstance(t, GraphType):
        raise E.UnknownType(f"graph type '{type_name}' has no attributes")
    if isinstance(t, LabelType):
        chain = label_ancestors(type_name, registry) + [type_name]
    else:
        chain = ancestors(type_name, registry) + [type_name]
    out: list[Attribute] = []
    for n in chain:
        out.extend(registry[n].own_attributes)
    return out


def primary_key(vertex_name: str, registry: Registry) -> tuple[str, ...]:
    root = get_type(root_of(vertex_name, registry), registry, "vertex")
    return UUID_KEY if root.uuid_key else root.primary_key


def effective_pairs(edge_name: str, registry: Registry) -> list[EndpointPair]:
    get_type(edge_name, registry, "edge")
    return list(registry[root_of(edge_name, registry)].endpoint_pairs)


def effective_discriminator(edge_name: str, registry: Registry) -> tuple[str, ...] | None:
    for n in reversed(ancestors(edge_name, registry) + [edge_name]):
        d = get_type(n, registry, "edge").discriminator
        if d is not None:
            return d
    return None


def effective_secondary_keys(edge_name: str, registry: Registry) -> list[tuple[str, ...]]:
    out: list[tuple[str, ...]] = []
    for n in ancestors(edge_name, registry) + [edge_name]:
        out.extend(get_type(n, registry, "edge").secondary_keys)
    return out


def endpoint_vertex_types(edge_name: str, registry: Registry) -> list[str]:
    out: list[str] = []
    for pair in effective_pairs(edge_name, registry):
        for v in pair.vertex_types():
            if v not in out:
                out.append(v)
    return out


def effective_edge_key(edge_name: str, registry: Registry) -> list[EdgeKey]:
    """One EdgeKey per (source type, target type) combination of the edge's pairs.

    A wildcard side yields ``None`` as the type and an empty key.
    """
    disc = effective_discriminator(edge_name, registry) or ()
    keys: list[EdgeKey] = []
    for pair in effective_pairs(edge_name, registry):
        for src in pair.from_types or (None,):
            for dst in pair.to_types or (None,):
                k = EdgeKey(src, dst,
                            primary_key(src, registry) if src else (),
                            primary_key(dst, registry) if dst else (),
                            tuple(disc))
                if k not in keys:
                    keys.append(k)
    return keys


def effective_members(graph_name: str, registry: Registry) -> tuple[list[str], list[str], list[str]]:
    """(vertex types, edge types, graph types) including everything inherited."""
    vs: list[str] = []
    es: list[str] = []
    gs: list[str] = []
    for n in ancestors(graph_name, registry) + [graph_name]:
        g = get_type(n, registry, "graph")
        for src, dst in ((g.member_vertex_types, vs), (g.member_edge_types, es),
                         (g.member_graph_types, gs)):
            for m in src:
                if m not in dst:
                    dst.append(m)
    return vs, es, gs


def contained_graph_types(graph_name: str, registry: Registry) -> set[str]:
    """Every graph type reachable through (effective) graph members."""
    seen: set[str] = set()
    todo = list(effective_members(graph_name, registry)[2])
    while todo:
        g = todo.pop()
        if g in seen:
            continue
        seen.add(g)
        todo.extend(effective_members(g, registry)[2])
    return seen


def closure_violations(graph_name: str, registry: Registry) -> list[tuple[str, str]]:
    """(edge, vertex) pairs where a member edge's endpoint type is not a member."""
    vs, es, _ = effective_members(graph_name, registry)
    missing = []
    for e in es:
        for v in endpoint_vertex_types(e, registry):
            if v not in vs:
                missing.append((e, v))
    return missing


# -- building ---------------------------------------------------------------

def _convert_attributes(specs: Iterable[ast.AttributeSpec], origin: str,
                        key_names: Iterable[str] = ()) -> list[Attribute]:
    keys = set(key_names)
    out: list[Attribute] = []
    seen: set[str] = set()
    for spec in specs:
        if spec.name == LABEL_ATTRIBUTE:
            raise E.ReservedAttribute(f"attribute name '{LABEL_ATTRIBUTE}' is reserved")
        if spec.name in seen:
            raise E.DuplicateAttribute(f"duplicate attribute '{spec.name}' in '{origin}'")
        seen.add(spec.name)
        try:
            dt = parse_data_type(spec.data_type_text)
        except E.TypeSpecError as exc:
            raise E.SchemaError(f"attribute '{spec.name}': {exc.message}") from None
        # key attributes are implicitly NOT NULL
        out.append(Attribute(spec.name, dt, spec.not_null or spec.name in keys, origin))
    return out


def _check_new_name(name: str, registry: Registry) -> None:
    if name in registry:
        raise E.DuplicateType(f"type '{name}' already exists")


def _resolve_super(raw: str, name: str, kind: str, registry: Registry, resolve: Resolver) -> str:
    sup = resolve(raw)
    if sup == name:
        raise E.InheritanceCycle(f"type '{name}' cannot extend itself")
    t = registry.get(sup)
    if t is None or t.kind != kind:
        raise E.UnknownSuper(f"unknown super {kind} type '{raw}'")
    return sup


def _check_no_shadowing(own: list[Attribute], inherited: list[Attribute], name: str) -> None:
    inherited_names = {a.name for a in inherited}
    for a in own:
        if a.name in inherited_names:
            raise E.AttributeShadowing(
                f"'{name}' redeclares inherited attribute '{a.name}'")


def build_vertex_type(stmt: ast.CreateVertex, registry: Registry, *,
                      name: str | None = None, resolve: Resolver = _identity) -> VertexType:
    name = name or stmt.name
    _check_new_name(name, registry)
    if stmt.extends is not None:
        sup = _resolve_super(stmt.extends, name, "vertex", registry, resolve)
        if stmt.key_names or stmt.uuid_key:
            raise E.PrimaryKeyOverride(
                f"subtype '{name}' must share the primary key of '{stmt.extends}'")
        own = _convert_attributes(stmt.attributes, name)
        _check_no_shadowing(own, effective_attributes(sup, registry), name)
        root = registry[root_of(sup, registry)]
        return VertexType(name, own, tuple(root.primary_key), root.uuid_key, sup)

    keys = stmt.key_names
    own = _convert_attributes(stmt.attributes, name, keys)
    if not own:
        raise E.MissingPrimaryKey(f"vertex type '{name}' needs at least one attribute")
    if not keys and not stmt.uuid_key:
        raise E.MissingPrimaryKey(f"vertex type '{name}' has no primary key")
    own_names = {a.name for a in own}
    if len(set(keys)) != len(keys):
        raise E.DuplicateAttribute(f"primary key of '{name}' repeats an attribute")
    for k in keys:
        if k not in own_names:
            raise E.UnknownAttribute(f"primary key attribute '{k}' is not declared in '{name}'")
    return VertexType(name, own, tuple(keys), stmt.uuid_key, None)


def _check_names_exist(names: Iterable[str], available: set[str], what: str, owner: str) -> None:
    for n in names:
        if n not in available:
            raise E.UnknownAttribute(f"{what} attribute '{n}' is not an attribute of '{owner}'")


def build_edge_type(stmt: ast.CreateEdge, registry: Registry, *, name: str | None = None,
                    resolve: Resolver = _identity, reverse_name: str | None = None) -> EdgeType:
    name = name or stmt.name
    reverse_name = reverse_name or stmt.reverse_name
    _check_new_name(name, registry)
    if reverse_name is not None:
        if not stmt.directed:
            raise E.ReverseOnUndirected(
                f"undirected edge type '{name}' cannot declare a reverse edge")
        if reverse_name == name:
            raise E.DuplicateType(f"reverse edge of '{name}' needs a different name")
        _check_new_name(reverse_name, registry)

    own = _convert_attributes(stmt.attributes, name)
    pairs: list[EndpointPair] = []
    if stmt.extends is not None:
        sup = _resolve_super(stmt.extends, name, "edge", registry, resolve)
        if stmt.pairs:
            raise E.PairsOnSubtype(f"subtype '{name}' inherits its (FROM, TO) pairs")
        if stmt.discriminator is not None:
            raise E.DiscriminatorOnSubtype(f"subtype '{name}' inherits its discriminator")
        if registry[sup].directed != stmt.directed:
            raise E.DirectionMismatch(
                f"subtype '{name}' must have the same direction as '{stmt.extends}'")
        inherited = effective_attributes(sup, registry)
        _check_no_shadowing(own, inherited, name)
    else:
        sup = None
        inherited = []
        for p in stmt.pairs:
            sides = []
            for side in (p.from_types, p.to_types):
                if side is None:
                    sides.append(None)
                    continue
                resolved: list[str] = []
                for raw in side:
                    v = resolve(raw)
                    t = registry.get(v)
                    if t is None or t.kind != "vertex":
                        raise E.UnknownEndpointType(f"unknown vertex type '{raw}' in edge '{name}'")
                    if v not in resolved:
                        resolved.append(v)
                sides.append(tuple(resolved))
            pair = EndpointPair(sides[0], sides[1])
            if pair not in pairs:
                pairs.append(pair)

    available = {a.name for a in inherited} | {a.name for a in own}
    if stmt.discriminator is not None:
        _check_names_exist(stmt.discriminator, available, "discriminator", name)
    for key in stmt.keys:
        _check_names_exist(key, available, "key", name)
    return EdgeType(name, stmt.directed, pairs, own,
                    tuple(stmt.discriminator) if stmt.discriminator is not None else None,
                    [tuple(k) for k in stmt.keys], reverse_name, sup)


def reverse_of(edge: EdgeType) -> EdgeType:
    """The reverse twin: same schema, every (FROM, TO) pair swapped."""
    if not edge.directed or not edge.reverse_name:
        raise E.ReverseOnUndirected(f"edge type '{edge.name}' has no reverse edge")
    return EdgeType(
        name=edge.reverse_name,
        directed=True,
        endpoint_pairs=[p.swapped() for p in edge.endpoint_pairs],
        own_attributes=[dataclasses.replace(a, origin=edge.reverse_name) for a in edge.own_attributes],
        discriminator=edge.discriminator,
        secondary_keys=list(edge.secondary_keys),
        reverse_name=edge.name,
        super_name=None,
        twin_of=edge.name,
    )


def flatten_edge(edge_name: str, registry: Registry) -> EdgeType:
    """A stand-alone copy of an edge type with everything inherited made explicit."""
    e = get_type(edge_name, registry, "edge")
    return EdgeType(e.name, e.directed, effective_pairs(edge_name, registry),
                    [dataclasses.replace(a) for a in effective_attributes(edge_name, registry)],
                    effective_discriminator(edge_name, registry),
                    effective_secondary_keys(edge_name, registry), e.reverse_name, None)


def materialize_twin(forward_name: str, registry: Registry) -> EdgeType:
    return reverse_of(flatten_edge(forward_name, registry))


def build_graph_type(stmt: ast.CreateGraph, registry: Registry, *,
                     name: str | None = None, resolve: Resolver = _identity,
                     resolve_member: Resolver | None = None) -> GraphType:
    """Build a graph type; endpoint types of member edges are added automatically.

    ``resolve_member`` maps a member name to a type name (the catalog maps
    schema-object names to their types); it defaults to ``resolve``.
    """
    name = name or stmt.name
    resolve_member = resolve_member or resolve
    if stmt.as_type is not None:
        raise E.SchemaError("CREATE GRAPH ... AS creates no new graph type")
    _check_new_name(name, registry)
    sup = None
    inherited_v: list[str] = []
    inherited_e: list[str] = []
    inherited_g: list[str] = []
    if stmt.extends is not None:
        sup = _resolve_super(stmt.extends, name, "graph", registry, resolve)
        inherited_v, inherited_e, inherited_g = effective_members(sup, registry)
    g = GraphType(name, super_name=sup)
    lists = {"vertex": g.member_vertex_types, "edge": g.member_edge_types,
             "graph": g.member_graph_types}
    inherited = {"vertex": inherited_v, "edge": inherited_e, "graph": inherited_g}
    for m in stmt.members:
        t_name = resolve_member(m.name)
        t = registry.get(t_name)
        if t is None or t.kind == "label":
            raise E.UnknownMember(f"unknown graph member '{m.name}'")
        if t_name in lists[t.kind]:
            raise E.DuplicateMember(f"'{m.name}' listed twice in graph '{name}'")
        if t_name not in inherited[t.kind]:
            lists[t.kind].append(t_name)
    all_vertices = inherited_v + g.member_vertex_types
    for e in inherited_e + g.member_edge_types:
        for v in endpoint_vertex_types(e, registry):
            if v not in all_vertices:
                all_vertices.append(v)
                g.member_vertex_types.append(v)
    return g


def build_label_type(stmt: ast.CreateLabel, registry: Registry, *,
                     name: str | None = None, resolve: Resolver = _identity) -> LabelType:
    name = name or stmt.name
    _check_new_name(name, registry)
    supers: list[str] = []
    for raw in stmt.supers:
        sup = resolve(raw)
        if sup == name:
            raise E.InheritanceCycle(f"label '{name}' cannot extend itself")
        t = registry.get(sup)
        if t is None or t.kind != "label":
            raise E.UnknownSuper(f"unknown super label '{raw}'")
        if sup in supers:
            raise E.DuplicateMember(f"label '{name}' lists super '{raw}' twice")
        supers.append(sup)
    own = _convert_attributes(stmt.attributes, name)
    label = LabelType(name, stmt.description, own, tuple(supers))
    scratch = dict(registry)
    scratch[name] = label
    check_label_attributes(name, scratch)
    return label


def check_label_attributes(name: str, registry: Registry) -> None:
    """Attribute names must not collide across a label's inherited groups."""
    seen: dict[str, str] = {}
    for a in effective_attributes(name, registry):
        prev = seen.get(a.name)
        if prev is not None and prev != a.origin:
            if a.origin == name:
                raise E.AttributeShadowing(f"label '{name}' redeclares inherited attribute '{a.name}'")
            raise E.DuplicateAttribute(
                f"label '{name}' inherits attribute '{a.name}' from both '{prev}' and '{a.origin}'")
        seen[a.name] = a.origin


def build_type(stmt: ast.Statement, registry: Registry, **kw) -> SchemaType:
    if isinstance(stmt, ast.CreateVertex):
        return build_vertex_type(stmt, registry, **kw)
    if isinstance(stmt, ast.CreateEdge):
        return build_edge_type(stmt, registry, **kw)
    if isinstance(stmt, ast.CreateGraph):
        return build_graph_type(stmt, registry, **kw)
    if isinstance(stmt, ast.CreateLabel):
        return build_label_type(stmt, registry, **kw)
    raise TypeError(f"not a CREATE statement: {type(stmt).__name__}")
