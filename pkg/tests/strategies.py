"""Hypothesis strategies: random ASTs, random DDL scripts, fuzz input."""

from __future__ import annotations

from hypothesis import strategies as st

from pgschema import nodes as ast
from pgschema.catalog import Catalog, Session, execute
from pgschema.datatypes import CONTAINERS, SCALARS
from pgschema.errors import DDLError
from pgschema.lexer import KEYWORDS
from pgschema.parser import parse_statement

# -- random ASTs ------------------------------------------------------------

identifiers = st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,7}", fullmatch=True).filter(
    lambda s: s.upper() not in KEYWORDS)
qualified = st.lists(identifiers, min_size=1, max_size=3).map(".".join)
names = st.lists(qualified, min_size=1, max_size=3).map(tuple)


def _scalar_text():
    plain = st.sampled_from(sorted(set(SCALARS) - {"VARCHAR"}))
    varchar = st.integers(1, 999).map(lambda n: f"VARCHAR({n})")
    return plain | varchar


def _container(inner):
    def build(kind, key, elem):
        if CONTAINERS[kind] == 2:
            return f"{kind}<{key},{elem}>"
        return f"{kind}<{elem}>"
    return st.builds(build, st.sampled_from(sorted(CONTAINERS)), _scalar_text(), inner)


data_types = st.recursive(_scalar_text(), _container, max_leaves=4)


def attributes(allow_key=False):
    return st.builds(ast.AttributeSpec, identifiers, data_types, st.booleans(),
                     st.just(False))


description_text = st.text(
    st.characters(blacklist_categories=("Cs",), blacklist_characters="\n"), max_size=20)


@st.composite
def create_vertex(draw):
    name = draw(identifiers)
    extends = draw(st.none() | qualified)
    attrs = draw(st.lists(attributes(), min_size=0 if extends else 1, max_size=4))
    key = draw(st.sampled_from(["none", "inline", "trailing", "uuid"]))
    pk: tuple[str, ...] = ()
    uuid = False
    if key == "inline" and attrs:
        i = draw(st.integers(0, len(attrs) - 1))
        attrs[i] = ast.AttributeSpec(attrs[i].name, attrs[i].data_type_text, attrs[i].not_null,
                                     True)
    elif key == "trailing":
        pk = draw(st.lists(identifiers, min_size=1, max_size=3).map(tuple))
    elif key == "uuid":
        uuid = True
    return ast.CreateVertex(name, tuple(attrs), pk, uuid, extends)


side = st.none() | st.lists(qualified, min_size=1, max_size=3).map(tuple)


@st.composite
def create_edge(draw):
    directed = draw(st.booleans())
    extends = draw(st.none() | qualified)
    pairs = draw(st.lists(st.builds(ast.EndpointPairSpec, side, side),
                          min_size=0 if extends else 1, max_size=3))
    return ast.CreateEdge(
        draw(identifiers), directed, tuple(pairs),
        tuple(draw(st.lists(attributes(), max_size=3))),
        draw(st.none() | st.lists(identifiers, min_size=1, max_size=2).map(tuple)),
        tuple(draw(st.lists(st.lists(identifiers, min_size=1, max_size=2).map(tuple),
                            max_size=2))),
        draw(st.none() | identifiers),
        extends)


@st.composite
def create_graph(draw):
    name = draw(identifiers)
    form = draw(st.sampled_from(["as", "plain", "owns"]))
    if form == "as":
        return ast.CreateGraph(name, as_type=draw(qualified))
    owns = form == "owns"
    members = draw(st.lists(st.builds(ast.GraphMemberSpec, qualified,
                                      st.just(False) if owns else st.booleans()), max_size=4))
    return ast.CreateGraph(name, tuple(members), draw(st.none() | qualified), None, owns)


create_label = st.builds(
    ast.CreateLabel, identifiers, st.none() | description_text,
    st.lists(qualified, max_size=3).map(tuple),
    st.lists(attributes(), max_size=3).map(tuple))

drop_statements = st.one_of(
    st.builds(ast.DropVertex, names, st.just(False), st.booleans()),
    st.builds(lambda c: ast.DropVertex((), True, c), st.booleans()),
    st.builds(ast.DropEdge, names),
    st.just(ast.DropEdge((), True)),
    st.builds(ast.DropGraph, names),
    st.builds(ast.DropLabel, names),
)


def _alter(node):
    add = st.builds(lambda n, a: node(n, "ADD", attributes=tuple(a)), qualified,
                    st.lists(attributes(), min_size=1, max_size=3))
    drop = st.builds(lambda n, d: node(n, "DROP", drop_names=tuple(d)), qualified,
                     st.lists(identifiers, min_size=1, max_size=3))
    return add | drop


alter_graph = st.builds(
    lambda n, action, kind, ns, cascade: ast.AlterGraph(
        n, action, kind, ns, cascade and action == "DROP" and kind == "VERTEX"),
    qualified, st.sampled_from(["ADD", "DROP"]), st.sampled_from(["VERTEX", "EDGE"]), names,
    st.booleans())

statements = st.one_of(
    create_vertex(), create_edge(), create_graph(), create_label, drop_statements,
    _alter(ast.AlterVertex), _alter(ast.AlterEdge), alter_graph,
    st.builds(ast.UseGraph, qualified),
)

# -- random DDL scripts over a small name pool --------------------------------

V = ["v0", "v1", "v2", "v3"]
E = ["e0", "e1", "e2"]
G = ["g0", "g1", "g2"]
L = ["l0", "l1", "l2"]
A = ["a0", "a1", "a2", "a3"]
TYPES = ["INT", "STRING", "DATETIME", "LIST<INT>", "MAP<STRING,INT>"]

pick = st.sampled_from
_BYTE = st.integers(0, 255)

PRELUDE = (
    "CREATE VERTEX v0 (a0 INT PRIMARY KEY, a1 STRING)",
    "CREATE VERTEX v1 EXTENDS v0 (b1 DATETIME)",
    "CREATE VERTEX v2 (a0 STRING, a2 INT, PRIMARY KEY (a0))",
    "CREATE DIRECTED EDGE e0 ((FROM v0, TO v2), (FROM v2, TO v0|v1), a3 INT, "
    "DISCRIMINATOR (a3)) WITH REVERSE_EDGE=\"re0\"",
    "CREATE UNDIRECTED EDGE e1 (FROM v2, TO v2)",
    "CREATE GRAPH g0 (v0, e1)",
    "CREATE LABEL l0 (a0 INT)",
)


class _Gen:
    """Draws DDL text that mostly names things present in the live catalog.

    Every choice goes through one cached byte strategy, which keeps
    generation cheap enough for thousands of cases.
    """

    def __init__(self, draw, cat):
        self.draw, self.cat = draw, cat

    def choice(self, seq):
        return seq[self.draw(_BYTE) % len(seq)]

    def chance(self, percent):
        return self.draw(_BYTE) * 100 < percent * 256

    def existing(self, kind, pool):
        names = sorted(o.qualified_name for o in self.cat.objects.values() if o.kind == kind)
        return self.choice(names) if names and self.chance(80) else self.choice(pool)

    def vx(self):
        return self.existing("vertex", V)

    def ex(self):
        return self.existing("edge", E)

    def gx(self):
        return self.existing("graph", G)

    def lx(self):
        return self.existing("label", L)

    def attrs(self, min_size=1, prefix="a"):
        """Declarations named <prefix>0..3; subtypes and ALTERs use other prefixes."""
        n = min_size + self.draw(_BYTE) % (4 - min_size)
        names = dict.fromkeys(f"{prefix}{self.choice('0123')}" for _ in range(n))
        return ", ".join(f"{a} {self.choice(TYPES)}" for a in names)

    def own_attr(self, name):
        t = self.cat.types.get(name)
        return self.choice([a.name for a in getattr(t, "own_attributes", [])] or A)

    def side(self):
        if self.chance(15):
            return "*"
        return "|".join(dict.fromkeys(self.vx() for _ in range(1 + self.chance(30))))

    def statement(self) -> str:
        kind = self.draw(_BYTE) % 16
        if kind in (0, 15):
            attrs = self.attrs()
            return f"CREATE VERTEX {self.choice(V)} ({attrs}, PRIMARY KEY ({attrs.split(' ')[0]}))"
        if kind == 1:
            return f"CREATE VERTEX {self.choice(V)} EXTENDS {self.vx()} ({self.attrs(prefix='b')})"
        if kind == 2:
            pairs = [(self.side(), self.side()) for _ in range(1 + self.draw(_BYTE) % 3)]
            body = ", ".join(f"(FROM {a}, TO {b})" for a, b in pairs)
            attrs = self.attrs(0)
            if attrs:
                body += ", " + attrs
                if self.chance(50):
                    body += f", DISCRIMINATOR ({attrs.split(' ')[0]})"
            directed = self.chance(50)
            name = self.choice(E)
            out = f"CREATE {'DIRECTED' if directed else 'UNDIRECTED'} EDGE {name} ({body})"
            if directed and self.chance(50):
                out += f' WITH REVERSE_EDGE="r{name}"'
            return out
        if kind == 3:
            sup = self.ex()
            directed = getattr(self.cat.types.get(sup), "directed", self.chance(50))
            name = self.choice(E)
            out = f"CREATE {'DIRECTED' if directed else 'UNDIRECTED'} EDGE {name} EXTENDS {sup}"
            if self.chance(50):
                out += f" ({self.attrs(prefix='b')})"
            if directed and self.chance(50):
                out += f' WITH REVERSE_EDGE="r{name}"'
            return out
        if kind == 4:
            g = self.choice(G)
            form = self.choice(["plain", "refs", "owns", "as", "extends", "empty"])
            pickers = [self.vx, self.ex, self.gx]
            members = list(dict.fromkeys(self.choice(pickers)()
                                         for _ in range(1 + self.draw(_BYTE) % 3)))
            listed = ", ".join(members)
            if form == "as":
                return f"CREATE GRAPH {g} as {self.gx()}"
            if form == "empty":
                return f"CREATE GRAPH {g}"
            if form == "owns":
                return f"CREATE GRAPH {g} OWNS ({listed})"
            if form == "refs":
                return f"CREATE GRAPH {g} ({', '.join('references ' + m for m in members)})"
            if form == "extends":
                return f"CREATE GRAPH {g} EXTENDS {self.gx()} ({listed})"
            return f"CREATE GRAPH {g} ({listed})"
        if kind == 5:
            supers = list(dict.fromkeys(self.lx() for _ in range(self.draw(_BYTE) % 3)))
            out = f"CREATE LABEL {self.choice(L)}"
            if supers:
                out += " EXTENDS " + ", ".join(supers)
            if self.chance(50):
                out += f" ({self.attrs()})"
            return out
        if kind == 6:
            form = self.choice(["*", "one", "one", "one", "two"])
            target = {"*": "*", "one": None, "two": None}[form]
            if form == "one":
                target = self.vx()
            elif form == "two":
                target = f"{self.vx()}, {self.vx()}"
            return f"DROP VERTEX {target}" + (" CASCADE" if self.chance(50) else "")
        if kind == 7:
            return f"DROP EDGE {'*' if self.chance(15) else self.ex()}"
        if kind == 8:
            return f"DROP GRAPH {self.gx()}"
        if kind == 9:
            return f"DROP LABEL {self.lx()}"
        if kind == 10:
            return f"ALTER VERTEX {self.vx()} ADD ({self.attrs(prefix='n')})"
        if kind == 11:
            target = self.vx() if self.chance(50) else self.ex()
            obj = self.cat.objects.get(target)
            node = "VERTEX" if obj is not None and obj.kind == "vertex" else "EDGE"
            return f"ALTER {node} {target} DROP ({self.own_attr(target)})"
        if kind == 12:
            return f"ALTER EDGE {self.ex()} ADD ({self.attrs(prefix='n')})"
        if kind == 13:
            action, mkind = self.choice(["ADD", "DROP"]), self.choice(["VERTEX", "EDGE"])
            member = self.vx() if mkind == "VERTEX" else self.ex()
            out = f"ALTER GRAPH {self.gx()} {action} {mkind} ({member})"
            if action == "DROP" and mkind == "VERTEX" and self.chance(50):
                out += " CASCADE"
            return out
        return f"USE GRAPH {self.gx()}"


_prelude_catalog = None


def _prelude():
    global _prelude_catalog
    if _prelude_catalog is None:
        cat = Catalog()
        for src in PRELUDE:
            execute(parse_statement(src), cat, Session())
        _prelude_catalog = cat
    return _prelude_catalog.copy()


@st.composite
def ddl_scripts(draw, min_size=2, max_size=14):
    """A statement list generated against a live catalog, so most statements apply."""
    with_prelude = draw(_BYTE) % 5 != 0
    cat = _prelude() if with_prelude else Catalog()
    session = Session()
    script = list(PRELUDE) if with_prelude else []
    gen = _Gen(draw, cat)
    for _ in range(draw(st.integers(min_size, max_size))):
        src = gen.statement()
        script.append(src)
        try:
            execute(parse_statement(src), cat, session)
        except DDLError:
            pass
    return script


# -- fuzz input ---------------------------------------------------------------

FUZZ_WORDS = sorted(KEYWORDS) + [
    "(", ")", ",", "*", "|", "=", "<", ">", ".", "INT", "STRING", "MAP", "LIST", "VARCHAR",
    "v0", "e0", "g0", "\"s\"", "“t”", "9", "\n", " ", "#c\n", "REVERSE_EDGE", "\\"]

fuzz_text = st.one_of(
    st.text(max_size=1024),
    st.lists(st.sampled_from(FUZZ_WORDS), max_size=200).map(" ".join).map(lambda s: s[:1024]),
    ddl_scripts().map("\n".join).flatmap(
        lambda s: st.tuples(st.just(s), st.integers(0, max(len(s) - 1, 0)), st.text(max_size=3))
    ).map(lambda t: (t[0][:t[1]] + t[2] + t[0][t[1] + 1:])[:1024]),
)
