"""Exception hierarchy shared by the frontend, type system and catalog."""

from __future__ import annotations


class DDLError(Exception):
    """Base class for every error raised for bad DDL input or catalog state.

    ``line`` and ``column`` are 1-based and optional; the CLI uses them to
    produce ``file:line:col`` diagnostics.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"{self.line}:{self.column}: {self.message}"

    def at(self, line: int | None, column: int | None) -> "DDLError":
        """Attach a position if none is recorded yet; returns self."""
        if self.line is None and line is not None:
            self.line, self.column = line, column
        return self


# -- frontend ---------------------------------------------------------------

class LexError(DDLError):
    pass


class ParseError(DDLError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 expected: tuple[str, ...] = ()):
        super().__init__(message, line, column)
        self.expected = tuple(expected)


class TypeSpecError(DDLError):
    pass


# -- type system ------------------------------------------------------------

class SchemaError(DDLError):
    pass


class DuplicateType(SchemaError):
    pass


class UnknownType(SchemaError):
    pass


class UnknownSuper(SchemaError):
    pass


class InheritanceCycle(SchemaError):
    pass


class MissingPrimaryKey(SchemaError):
    pass


class PrimaryKeyOverride(SchemaError):
    pass


class AttributeShadowing(SchemaError):
    pass


class DuplicateAttribute(SchemaError):
    pass


DuplicateAttributeName = DuplicateAttribute


class UnknownAttribute(SchemaError):
    pass


class ReservedAttribute(SchemaError):
    pass


class UnknownEndpointType(SchemaError):
    pass


class ReverseOnUndirected(SchemaError):
    pass


class PairsOnSubtype(SchemaError):
    pass


class DirectionMismatch(SchemaError):
    pass


class DiscriminatorOnSubtype(SchemaError):
    pass


class UnknownMember(SchemaError):
    pass


class DuplicateMember(SchemaError):
    pass


class ClosureViolation(SchemaError):
    pass


# -- catalog ----------------------------------------------------------------

class CatalogError(DDLError):
    pass


class DuplicateObject(CatalogError):
    pass


class UnknownObject(CatalogError):
    pass


class UnknownGraph(CatalogError):
    pass


class UnknownGraphType(CatalogError):
    pass


class HasSubtypes(CatalogError):
    pass


class ReferencedByEdge(CatalogError):
    pass


class ReferencedByGraph(CatalogError):
    pass


class TypeInUse(CatalogError):
    pass


class OwnedByGraph(CatalogError):
    pass


class ReverseEdgeError(CatalogError):
    pass


class InheritedAttribute(CatalogError):
    pass


class PrimaryKeyAttribute(CatalogError):
    pass


class KeyAttribute(CatalogError):
    """Dropping an attribute used by an edge discriminator or secondary key."""


class InheritedMember(CatalogError):
    pass


# -- persistence ------------------------------------------------------------

class FormatError(DDLError):
    pass


class IntegrityError(DDLError):
    pass
