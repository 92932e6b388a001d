"""Recursive-descent parser for the schema DDL.

A statement ends at a line break outside parentheses or at end of input.
Continuation lines are accepted when the statement is still grammatically
open (e.g. a ``WITH`` clause on the line after the closing parenthesis).
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator

from . import nodes as ast
from .datatypes import MAX_NESTING, parse_data_type
from .errors import ParseError, TypeSpecError
from .lexer import KEYWORDS, Token, TokenKind, iter_tokens

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

WITH_KEYS = ("REVERSE_EDGE",)

STATEMENT_KEYWORDS = ("CREATE", "DROP", "ALTER", "USE")


def is_identifier(text: str) -> bool:
    return bool(_IDENT_RE.match(text)) and text.upper() not in KEYWORDS


class Parser:
    def __init__(self, tokens: Iterable[Token]):
        self._it = iter(tokens)
        self._buf: list[Token] = []
        self.prev: Token | None = None

    # -- token plumbing ----------------------------------------------------

    def peek(self, k: int = 0) -> Token:
        while len(self._buf) <= k:
            try:
                tok = next(self._it)
            except StopIteration:
                last = self._buf[-1] if self._buf else self.prev
                tok = Token(TokenKind.END, "", last.line if last else 1, last.column if last else 1)
            self._buf.append(tok)
            if tok.kind is TokenKind.END:
                # pad so further peeks keep returning END
                while len(self._buf) <= k:
                    self._buf.append(tok)
        return self._buf[k]

    def advance(self) -> Token:
        tok = self.peek()
        if tok.kind is not TokenKind.END:
            self._buf.pop(0)
        self.prev = tok
        return tok

    def error(self, expected: Iterable[str], tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        expected = tuple(expected)
        if len(expected) == 1:
            want = expected[0]
        else:
            want = "one of " + ", ".join(expected)
        return ParseError(f"expected {want}, got {tok.describe()}", tok.line, tok.column, expected)

    def at_end(self) -> bool:
        return self.peek().kind is TokenKind.END

    def accept_keyword(self, *words: str) -> Token | None:
        if self.peek().is_keyword(*words):
            return self.advance()
        return None

    def expect_keyword(self, *words: str) -> Token:
        tok = self.accept_keyword(*words)
        if tok is None:
            raise self.error(words)
        return tok

    def accept_punct(self, ch: str) -> Token | None:
        if self.peek().is_punct(ch):
            return self.advance()
        return None

    def expect_punct(self, ch: str) -> Token:
        tok = self.accept_punct(ch)
        if tok is None:
            raise self.error([f"'{ch}'"])
        return tok

    def ident(self) -> str:
        tok = self.peek()
        if tok.kind is not TokenKind.IDENT:
            raise self.error(["identifier"])
        self.advance()
        return tok.lexeme

    def qualified_name(self) -> str:
        parts = [self.ident()]
        while self.peek().is_punct(".") and self.peek(1).kind is TokenKind.IDENT:
            self.advance()
            parts.append(self.ident())
        return ".".join(parts)

    def name_list(self) -> tuple[str, ...]:
        names = [self.qualified_name()]
        while self.accept_punct(","):
            names.append(self.qualified_name())
        return tuple(names)

    def paren_name_list(self) -> tuple[str, ...]:
        self.expect_punct("(")
        names = self.name_list()
        self.expect_punct(")")
        return names

    # -- statements --------------------------------------------------------

    def statements(self) -> Iterator[ast.Statement]:
        while not self.at_end():
            yield self.statement()

    def statement(self) -> ast.Statement:
        tok = self.peek()
        if tok.is_keyword("CREATE"):
            self.advance()
            stmt = self._create()
        elif tok.is_keyword("DROP"):
            self.advance()
            stmt = self._drop()
        elif tok.is_keyword("ALTER"):
            self.advance()
            stmt = self._alter()
        elif tok.is_keyword("USE"):
            self.advance()
            self.expect_keyword("GRAPH")
            stmt = ast.UseGraph(self.qualified_name())
        elif tok.kind is TokenKind.END:
            raise self.error(STATEMENT_KEYWORDS)
        else:
            raise ParseError(
                f"unknown statement keyword '{tok.lexeme}'; expected one of "
                + ", ".join(STATEMENT_KEYWORDS),
                tok.line, tok.column, STATEMENT_KEYWORDS)
        self._end_of_statement()
        return _with_position(stmt, tok)

    def _end_of_statement(self) -> None:
        tok = self.peek()
        if tok.kind is TokenKind.END:
            return
        if self.prev is not None and tok.line > self.prev.line:
            return
        raise self.error(["end of statement"], tok)

    # CREATE ----------------------------------------------------------------

    def _create(self) -> ast.Statement:
        tok = self.peek()
        if tok.is_keyword("VERTEX"):
            self.advance()
            return self._create_vertex()
        if tok.is_keyword("DIRECTED", "UNDIRECTED"):
            self.advance()
            self.expect_keyword("EDGE")
            return self._create_edge(tok.lexeme == "DIRECTED")
        if tok.is_keyword("GRAPH"):
            self.advance()
            return self._create_graph()
        if tok.is_keyword("LABEL"):
            self.advance()
            return self._create_label()
        raise self.error(["VERTEX", "DIRECTED", "UNDIRECTED", "GRAPH", "LABEL"])

    def _create_vertex(self) -> ast.CreateVertex:
        name = self.ident()
        extends = self.qualified_name() if self.accept_keyword("EXTENDS") else None
        attrs: list[ast.AttributeSpec] = []
        trailing_key: tuple[str, ...] = ()
        uuid_key = False
        designations = 0
        if extends is None or self.peek().is_punct("("):
            open_tok = self.expect_punct("(")
            if not self.peek().is_punct(")"):
                while True:
                    tok = self.peek()
                    if tok.is_keyword("PRIMARY"):
                        self.advance()
                        self.expect_keyword("KEY")
                        if self.accept_keyword("UUID"):
                            uuid_key = True
                        else:
                            trailing_key = self.paren_name_list()
                        designations += 1
                    else:
                        attr = self._attribute(allow_key=True)
                        designations += attr.inline_primary_key
                        attrs.append(attr)
                    if designations > 1:
                        raise ParseError("more than one primary key designation",
                                         tok.line, tok.column)
                    if not self.accept_punct(","):
                        break
            self.expect_punct(")")
            if extends is None and not attrs:
                raise ParseError("a vertex type needs at least one attribute",
                                 open_tok.line, open_tok.column, ("identifier",))
        return ast.CreateVertex(name, tuple(attrs), trailing_key, uuid_key, extends)

    def _attribute(self, allow_key: bool) -> ast.AttributeSpec:
        name = self.ident()
        type_text = self.data_type()
        not_null = primary = False
        while True:
            tok = self.peek()
            if tok.is_keyword("NOT") and not not_null:
                self.advance()
                self.expect_keyword("NULL")
                not_null = True
            elif tok.is_keyword("PRIMARY") and not primary and self.peek(1).is_keyword("KEY") \
                    and not self.peek(2).is_punct("(") and not self.peek(2).is_keyword("UUID"):
                if not allow_key:
                    raise ParseError("PRIMARY KEY is not allowed here", tok.line, tok.column)
                self.advance()
                self.advance()
                primary = True
            else:
                break
        return ast.AttributeSpec(name, type_text, not_null, primary)

    def data_type(self) -> str:
        start = self.peek()
        text = self._data_type_text(0)
        try:
            return str(parse_data_type(text))
        except TypeSpecError as exc:
            raise ParseError(exc.message, start.line, start.column) from None

    def _data_type_text(self, depth: int) -> str:
        if depth > MAX_NESTING:
            tok = self.peek()
            raise ParseError(f"type nesting deeper than {MAX_NESTING} levels", tok.line, tok.column)
        tok = self.peek()
        if tok.kind is not TokenKind.IDENT:
            raise self.error(["data type"])
        self.advance()
        text = tok.lexeme
        if self.peek().is_punct("("):
            self.advance()
            num = self.peek()
            if num.kind is not TokenKind.INT:
                raise self.error(["integer literal"])
            self.advance()
            self.expect_punct(")")
            text += f"({num.lexeme})"
        elif self.peek().is_punct("<"):
            self.advance()
            params = [self._data_type_text(depth + 1)]
            while self.accept_punct(","):
                params.append(self._data_type_text(depth + 1))
            self.expect_punct(">")
            text += "<" + ",".join(params) + ">"
        return text

    def _endpoint_side(self) -> tuple[str, ...] | None:
        if self.accept_punct("*"):
            return None
        names = [self.qualified_name()]
        while self.accept_punct("|"):
            names.append(self.qualified_name())
        return tuple(names)

    def _endpoint_pair(self) -> ast.EndpointPairSpec:
        self.expect_keyword("FROM")
        src = self._endpoint_side()
        self.expect_punct(",")
        self.expect_keyword("TO")
        dst = self._endpoint_side()
        return ast.EndpointPairSpec(src, dst)

    def _create_edge(self, directed: bool) -> ast.CreateEdge:
        name = self.ident()
        extends = self.qualified_name() if self.accept_keyword("EXTENDS") else None
        pairs: list[ast.EndpointPairSpec] = []
        attrs: list[ast.AttributeSpec] = []
        discriminator: tuple[str, ...] | None = None
        keys: list[tuple[str, ...]] = []
        if extends is None or self.peek().is_punct("("):
            self.expect_punct("(")
            if not self.peek().is_punct(")"):
                while True:
                    tok = self.peek()
                    if tok.is_punct("("):
                        self.advance()
                        pairs.append(self._endpoint_pair())
                        self.expect_punct(")")
                    elif tok.is_keyword("FROM"):
                        pairs.append(self._endpoint_pair())
                    elif tok.is_keyword("DISCRIMINATOR"):
                        if discriminator is not None:
                            raise ParseError("duplicate DISCRIMINATOR clause", tok.line, tok.column)
                        self.advance()
                        discriminator = self.paren_name_list()
                    elif tok.is_keyword("KEY"):
                        self.advance()
                        keys.append(self.paren_name_list())
                    elif tok.kind is TokenKind.IDENT:
                        attrs.append(self._attribute(allow_key=False))
                    else:
                        raise self.error(["'('", "FROM", "DISCRIMINATOR", "KEY", "identifier"])
                    if not self.accept_punct(","):
                        break
            close = self.expect_punct(")")
            if extends is None and not pairs:
                raise ParseError("an edge type needs at least one (FROM, TO) pair",
                                 close.line, close.column, ("FROM",))
        reverse = None
        if self.accept_keyword("WITH"):
            seen: set[str] = set()
            while True:
                key_tok = self.peek()
                key = self.ident().upper()
                if key not in WITH_KEYS:
                    raise ParseError(f"unknown WITH option '{key_tok.lexeme}'", key_tok.line,
                                     key_tok.column, WITH_KEYS)
                if key in seen:
                    raise ParseError(f"duplicate WITH option '{key_tok.lexeme}'",
                                     key_tok.line, key_tok.column)
                seen.add(key)
                self.expect_punct("=")
                val = self.peek()
                if val.kind not in (TokenKind.STRING, TokenKind.IDENT):
                    raise self.error(["string literal"])
                self.advance()
                if not is_identifier(val.lexeme):
                    raise ParseError(f"reverse edge name {val.lexeme!r} is not a valid identifier",
                                     val.line, val.column)
                reverse = val.lexeme
                if not self.accept_punct(","):
                    break
        return ast.CreateEdge(name, directed, tuple(pairs), tuple(attrs), discriminator,
                              tuple(keys), reverse, extends)

    def _create_graph(self) -> ast.CreateGraph:
        name = self.ident()
        if self.accept_keyword("AS"):
            return ast.CreateGraph(name, as_type=self.qualified_name())
        extends = self.qualified_name() if self.accept_keyword("EXTENDS") else None
        owns = self.accept_keyword("OWNS") is not None
        members: list[ast.GraphMemberSpec] = []
        if owns or self.peek().is_punct("("):
            self.expect_punct("(")
            if not self.peek().is_punct(")"):
                while True:
                    ref_tok = self.accept_keyword("REFERENCES")
                    if ref_tok is not None and owns:
                        raise ParseError("REFERENCES members are not allowed in an OWNS list",
                                         ref_tok.line, ref_tok.column)
                    members.append(ast.GraphMemberSpec(self.qualified_name(), ref_tok is not None))
                    if not self.accept_punct(","):
                        break
            self.expect_punct(")")
        return ast.CreateGraph(name, tuple(members), extends, None, owns)

    def _create_label(self) -> ast.CreateLabel:
        name = self.ident()
        description = None
        supers: tuple[str, ...] = ()
        seen: set[str] = set()
        while True:
            tok = self.peek()
            if tok.is_keyword("EXTENDS", "DESCRIPTION"):
                if tok.lexeme in seen:
                    raise ParseError(f"duplicate {tok.lexeme} clause", tok.line, tok.column)
                seen.add(tok.lexeme)
                self.advance()
                if tok.lexeme == "EXTENDS":
                    supers = self.name_list()
                else:
                    text = self.peek()
                    if text.kind is not TokenKind.STRING:
                        raise self.error(["string literal"])
                    self.advance()
                    description = text.lexeme
            else:
                break
        attrs: list[ast.AttributeSpec] = []
        if self.accept_punct("("):
            if not self.peek().is_punct(")"):
                attrs.append(self._attribute(allow_key=False))
                while self.accept_punct(","):
                    attrs.append(self._attribute(allow_key=False))
            self.expect_punct(")")
        return ast.CreateLabel(name, description, supers, tuple(attrs))

    # DROP ------------------------------------------------------------------

    def _drop(self) -> ast.Statement:
        tok = self.expect_keyword("VERTEX", "EDGE", "GRAPH", "LABEL")
        if tok.lexeme in ("VERTEX", "EDGE"):
            if self.accept_punct("*"):
                names, star = (), True
            else:
                names, star = self.name_list(), False
            if tok.lexeme == "VERTEX":
                cascade = self.accept_keyword("CASCADE") is not None
                return ast.DropVertex(names, star, cascade)
            return ast.DropEdge(names, star)
        names = self.name_list()
        if tok.lexeme == "GRAPH":
            return ast.DropGraph(names)
        return ast.DropLabel(names)

    # ALTER -----------------------------------------------------------------

    def _alter(self) -> ast.Statement:
        tok = self.expect_keyword("VERTEX", "EDGE", "GRAPH")
        name = self.qualified_name()
        action = self.expect_keyword("ADD", "DROP").lexeme
        if tok.lexeme == "GRAPH":
            kind = self.expect_keyword("VERTEX", "EDGE").lexeme
            names = self.paren_name_list()
            cascade = False
            if action == "DROP" and kind == "VERTEX":
                cascade = self.accept_keyword("CASCADE") is not None
            return ast.AlterGraph(name, action, kind, names, cascade)
        node = ast.AlterVertex if tok.lexeme == "VERTEX" else ast.AlterEdge
        self.expect_punct("(")
        if action == "ADD":
            attrs = [self._attribute(allow_key=False)]
            while self.accept_punct(","):
                attrs.append(self._attribute(allow_key=False))
            self.expect_punct(")")
            return node(name, action, attributes=tuple(attrs))
        drops = [self._drop_attribute()]
        while self.accept_punct(","):
            drops.append(self._drop_attribute())
        self.expect_punct(")")
        return node(name, action, drop_names=tuple(drops))

    def _drop_attribute(self) -> str:
        name = self.ident()
        if self.peek().kind is TokenKind.IDENT:
            self.data_type()  # accepted and ignored
        return name


def _with_position(stmt: ast.Statement, tok: Token) -> ast.Statement:
    object.__setattr__(stmt, "line", tok.line)
    object.__setattr__(stmt, "column", tok.column)
    return stmt


def _tokens_of(source: str | Iterable[Token]) -> Iterable[Token]:
    return iter_tokens(source) if isinstance(source, str) else source


def iter_statements(source: str | Iterable[Token]) -> Iterator[ast.Statement]:
    """Lazily parse statements; errors surface when the bad statement is reached."""
    return Parser(_tokens_of(source)).statements()


def parse_statement(source: str | Iterable[Token]) -> ast.Statement:
    """Parse exactly one statement from text or a token stream."""
    p = Parser(_tokens_of(source))
    stmt = p.statement()
    if not p.at_end():
        raise p.error(["end of input"])
    return stmt


def parse_script(source: str) -> list[ast.Statement]:
    return list(iter_statements(source))
