"""AST for DDL statements.

Nodes are frozen dataclasses built from tuples so that two parses of the
same statement compare equal. Source positions are carried but excluded
from equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class AttributeSpec:
    name: str
    data_type_text: str
    not_null: bool = False
    inline_primary_key: bool = False


@dataclass(frozen=True)
class EndpointPairSpec:
    # None means the wildcard endpoint ``*``
    from_types: tuple[str, ...] | None
    to_types: tuple[str, ...] | None


@dataclass(frozen=True)
class GraphMemberSpec:
    name: str
    reference: bool = False


@dataclass(frozen=True)
class Statement:
    line: int = field(default=0, compare=False, kw_only=True, repr=False)
    column: int = field(default=0, compare=False, kw_only=True, repr=False)


@dataclass(frozen=True)
class CreateVertex(Statement):
    name: str
    attributes: tuple[AttributeSpec, ...] = ()
    primary_key: tuple[str, ...] = ()
    uuid_key: bool = False
    extends: str | None = None

    @property
    def key_names(self) -> tuple[str, ...]:
        """Primary-key attribute names, whichever way they were written."""
        if self.primary_key:
            return self.primary_key
        return tuple(a.name for a in self.attributes if a.inline_primary_key)


@dataclass(frozen=True)
class CreateEdge(Statement):
    name: str
    directed: bool
    pairs: tuple[EndpointPairSpec, ...] = ()
    attributes: tuple[AttributeSpec, ...] = ()
    discriminator: tuple[str, ...] | None = None
    keys: tuple[tuple[str, ...], ...] = ()
    reverse_name: str | None = None
    extends: str | None = None


@dataclass(frozen=True)
class CreateGraph(Statement):
    name: str
    members: tuple[GraphMemberSpec, ...] = ()
    extends: str | None = None
    as_type: str | None = None
    owns: bool = False


@dataclass(frozen=True)
class CreateLabel(Statement):
    name: str
    description: str | None = None
    supers: tuple[str, ...] = ()
    attributes: tuple[AttributeSpec, ...] = ()


@dataclass(frozen=True)
class DropVertex(Statement):
    names: tuple[str, ...] = ()
    star: bool = False
    cascade: bool = False


@dataclass(frozen=True)
class DropEdge(Statement):
    names: tuple[str, ...] = ()
    star: bool = False


@dataclass(frozen=True)
class DropGraph(Statement):
    names: tuple[str, ...] = ()


@dataclass(frozen=True)
class DropLabel(Statement):
    names: tuple[str, ...] = ()


@dataclass(frozen=True)
class AlterVertex(Statement):
    name: str
    action: str  # "ADD" | "DROP"
    attributes: tuple[AttributeSpec, ...] = ()
    drop_names: tuple[str, ...] = ()


@dataclass(frozen=True)
class AlterEdge(Statement):
    name: str
    action: str
    attributes: tuple[AttributeSpec, ...] = ()
    drop_names: tuple[str, ...] = ()


@dataclass(frozen=True)
class AlterGraph(Statement):
    name: str
    action: str  # "ADD" | "DROP"
    member_kind: str  # "VERTEX" | "EDGE"
    names: tuple[str, ...] = ()
    cascade: bool = False


@dataclass(frozen=True)
class UseGraph(Statement):
    name: str


CREATE_STATEMENTS = (CreateVertex, CreateEdge, CreateGraph, CreateLabel)
DROP_STATEMENTS = (DropVertex, DropEdge, DropGraph, DropLabel)
ALTER_STATEMENTS = (AlterVertex, AlterEdge, AlterGraph)
