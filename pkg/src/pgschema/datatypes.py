"""Attribute data types: a small ISO-SQL scalar subset plus containers."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import TypeSpecError

SCALARS = ("INT", "UINT", "FLOAT", "DOUBLE", "BOOL", "STRING", "VARCHAR", "DATETIME")
# container name -> number of type parameters
CONTAINERS = {"MAP": 2, "LIST": 1, "SET": 1, "ORDER": 1}

MAX_NESTING = 16

_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(\d+)|([()<>,]))")


@dataclass(frozen=True)
class DataType:
    kind: str  # "scalar" | "map" | "list" | "set" | "order"
    name: str
    length: int | None = None
    key: DataType | None = None
    element: DataType | None = None

    @property
    def is_scalar(self) -> bool:
        return self.kind == "scalar"

    def __str__(self) -> str:
        if self.kind == "scalar":
            return f"{self.name}({self.length})" if self.length is not None else self.name
        if self.kind == "map":
            return f"MAP<{self.key},{self.element}>"
        return f"{self.name}<{self.element}>"


def scalar(name: str, length: int | None = None) -> DataType:
    return DataType("scalar", name, length)


LABEL_SET = DataType("set", "SET", element=scalar("STRING"))


def _lex(spec: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    spec = spec.rstrip()
    while pos < len(spec):
        m = _TOKEN_RE.match(spec, pos)
        if not m or m.end() == pos:
            raise TypeSpecError(f"unexpected character {spec[pos:].lstrip()[:1]!r} in type {spec!r}")
        if m.group(1):
            out.append(("name", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(("int", m.group(2), m.start(2)))
        else:
            out.append(("punct", m.group(3), m.start(3)))
        pos = m.end()
    return out


class _TypeParser:
    def __init__(self, spec: str):
        self.spec = spec
        self.toks = _lex(spec)
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def expect(self, value: str) -> None:
        tok = self.peek()
        if tok is None or tok[1] != value:
            got = "end of type" if tok is None else repr(tok[1])
            raise TypeSpecError(f"expected {value!r} in type {self.spec!r}, got {got}")
        self.i += 1

    def parse(self, depth: int = 0) -> DataType:
        if depth > MAX_NESTING:
            raise TypeSpecError(f"type nesting deeper than {MAX_NESTING} levels")
        tok = self.peek()
        if tok is None or tok[0] != "name":
            raise TypeSpecError(f"expected a type name in {self.spec!r}")
        self.i += 1
        name = tok[1].upper()
        if name in CONTAINERS:
            self.expect("<")
            params = [self.parse(depth + 1)]
            while self.peek() is not None and self.peek()[1] == ",":
                self.i += 1
                params.append(self.parse(depth + 1))
            self.expect(">")
            if len(params) != CONTAINERS[name]:
                raise TypeSpecError(
                    f"{name} takes {CONTAINERS[name]} type parameter(s), got {len(params)}")
            if name == "MAP":
                if not params[0].is_scalar:
                    raise TypeSpecError(f"MAP key must be a scalar type, got {params[0]}")
                return DataType("map", "MAP", key=params[0], element=params[1])
            return DataType(name.lower(), name, element=params[0])
        if name not in SCALARS:
            raise TypeSpecError(f"unknown data type {tok[1]!r}")
        if name == "VARCHAR":
            self.expect("(")
            num = self.peek()
            if num is None or num[0] != "int":
                raise TypeSpecError("VARCHAR requires an integer length")
            self.i += 1
            self.expect(")")
            length = int(num[1])
            if length < 1:
                raise TypeSpecError("VARCHAR length must be at least 1")
            return scalar(name, length)
        nxt = self.peek()
        if nxt is not None and nxt[1] in ("(", "<"):
            raise TypeSpecError(f"{name} takes no parameters")
        return scalar(name)


def parse_data_type(spec: str) -> DataType:
    """Parse a textual type such as ``VARCHAR(9)`` or ``LIST<MAP<STRING,INT>>``.

    Type names are case-insensitive. Raises TypeSpecError on anything else.
    """
    if not spec or not spec.strip():
        raise TypeSpecError("empty type specification")
    p = _TypeParser(spec)
    dt = p.parse()
    if p.peek() is not None:
        raise TypeSpecError(f"trailing input {p.peek()[1]!r} in type {spec!r}")
    return dt
