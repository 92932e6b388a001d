"""Canonical single-line rendering of statements."""

from __future__ import annotations

from functools import singledispatch

from . import nodes as ast


def quote(text: str) -> str:
    out = text.replace("\\", "\\\\")
    for q in ('"', "“", "”"):
        out = out.replace(q, "\\" + q)
    return f'"{out}"'


def _attr(a: ast.AttributeSpec) -> str:
    s = f"{a.name} {a.data_type_text}"
    if a.not_null:
        s += " NOT NULL"
    if a.inline_primary_key:
        s += " PRIMARY KEY"
    return s


def _side(names: tuple[str, ...] | None) -> str:
    return "*" if names is None else "|".join(names)


def _pair(p: ast.EndpointPairSpec) -> str:
    return f"FROM {_side(p.from_types)}, TO {_side(p.to_types)}"


@singledispatch
def print_statement(stmt: ast.Statement) -> str:
    raise TypeError(f"cannot print {type(stmt).__name__}")


@print_statement.register
def _(stmt: ast.CreateVertex) -> str:
    out = f"CREATE VERTEX {stmt.name}"
    if stmt.extends:
        out += f" EXTENDS {stmt.extends}"
    parts = [_attr(a) for a in stmt.attributes]
    if stmt.primary_key:
        parts.append(f"PRIMARY KEY ({', '.join(stmt.primary_key)})")
    if stmt.uuid_key:
        parts.append("PRIMARY KEY UUID")
    if parts or not stmt.extends:
        out += f" ({', '.join(parts)})"
    return out


@print_statement.register
def _(stmt: ast.CreateEdge) -> str:
    out = f"CREATE {'DIRECTED' if stmt.directed else 'UNDIRECTED'} EDGE {stmt.name}"
    if stmt.extends:
        out += f" EXTENDS {stmt.extends}"
    if len(stmt.pairs) == 1:
        parts = [_pair(stmt.pairs[0])]
    else:
        parts = [f"({_pair(p)})" for p in stmt.pairs]
    parts += [_attr(a) for a in stmt.attributes]
    if stmt.discriminator is not None:
        parts.append(f"DISCRIMINATOR ({', '.join(stmt.discriminator)})")
    parts += [f"KEY ({', '.join(k)})" for k in stmt.keys]
    if parts or not stmt.extends:
        out += f" ({', '.join(parts)})"
    if stmt.reverse_name:
        out += f" WITH REVERSE_EDGE={quote(stmt.reverse_name)}"
    return out


@print_statement.register
def _(stmt: ast.CreateGraph) -> str:
    out = f"CREATE GRAPH {stmt.name}"
    if stmt.as_type:
        return out + f" AS {stmt.as_type}"
    if stmt.extends:
        out += f" EXTENDS {stmt.extends}"
    if stmt.owns:
        out += " OWNS"
    members = ", ".join(("references " if m.reference else "") + m.name for m in stmt.members)
    return out + f" ({members})"


@print_statement.register
def _(stmt: ast.CreateLabel) -> str:
    out = f"CREATE LABEL {stmt.name}"
    if stmt.supers:
        out += f" EXTENDS {', '.join(stmt.supers)}"
    if stmt.description is not None:
        out += f" DESCRIPTION {quote(stmt.description)}"
    if stmt.attributes:
        out += f" ({', '.join(_attr(a) for a in stmt.attributes)})"
    return out


def _drop_targets(stmt) -> str:
    return "*" if getattr(stmt, "star", False) else ", ".join(stmt.names)


@print_statement.register
def _(stmt: ast.DropVertex) -> str:
    return f"DROP VERTEX {_drop_targets(stmt)}" + (" CASCADE" if stmt.cascade else "")


@print_statement.register
def _(stmt: ast.DropEdge) -> str:
    return f"DROP EDGE {_drop_targets(stmt)}"


@print_statement.register
def _(stmt: ast.DropGraph) -> str:
    return f"DROP GRAPH {_drop_targets(stmt)}"


@print_statement.register
def _(stmt: ast.DropLabel) -> str:
    return f"DROP LABEL {_drop_targets(stmt)}"


def _alter_attrs(kind: str, stmt) -> str:
    if stmt.action == "ADD":
        body = ", ".join(_attr(a) for a in stmt.attributes)
    else:
        body = ", ".join(stmt.drop_names)
    return f"ALTER {kind} {stmt.name} {stmt.action} ({body})"


@print_statement.register
def _(stmt: ast.AlterVertex) -> str:
    return _alter_attrs("VERTEX", stmt)


@print_statement.register
def _(stmt: ast.AlterEdge) -> str:
    return _alter_attrs("EDGE", stmt)


@print_statement.register
def _(stmt: ast.AlterGraph) -> str:
    out = f"ALTER GRAPH {stmt.name} {stmt.action} {stmt.member_kind} ({', '.join(stmt.names)})"
    return out + (" CASCADE" if stmt.cascade else "")


@print_statement.register
def _(stmt: ast.UseGraph) -> str:
    return f"USE GRAPH {stmt.name}"


def print_script(stmts) -> str:
    return "".join(print_statement(s) + "\n" for s in stmts)
