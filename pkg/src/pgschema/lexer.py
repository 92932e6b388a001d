"""Tokenizer for the schema DDL.

Keywords are matched case-insensitively and reported upper-cased in
``Token.lexeme``; identifiers keep their spelling. ``#`` starts a comment
that runs to the end of the line. String literals may be delimited by
straight or typographic double quotes, in any combination.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .errors import LexError


class TokenKind(Enum):
    KEYWORD = "keyword"
    IDENT = "identifier"
    STRING = "string-literal"
    INT = "integer-literal"
    PUNCT = "punctuation"
    END = "end"


KEYWORDS = frozenset({
    "ADD", "ALTER", "AS", "CASCADE", "CREATE", "DESCRIPTION", "DIRECTED",
    "DISCRIMINATOR", "DROP", "EDGE", "EXTENDS", "FROM", "GRAPH", "KEY",
    "LABEL", "NOT", "NULL", "OWNS", "PRIMARY", "REFERENCES", "TO",
    "UNDIRECTED", "USE", "UUID", "VERTEX", "WITH",
})

PUNCTUATION = frozenset("(),*|=<>.")

QUOTES = frozenset('"“”')


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    line: int
    column: int

    def is_keyword(self, *words: str) -> bool:
        return self.kind is TokenKind.KEYWORD and self.lexeme in words

    def is_punct(self, *chars: str) -> bool:
        return self.kind is TokenKind.PUNCT and self.lexeme in chars

    def describe(self) -> str:
        if self.kind is TokenKind.END:
            return "end of input"
        if self.kind is TokenKind.STRING:
            return f"string {self.lexeme!r}"
        return f"{self.kind.value} '{self.lexeme}'"


def _is_ident_start(ch: str) -> bool:
    return ch == "_" or ("a" <= ch <= "z") or ("A" <= ch <= "Z")


def _is_ident_char(ch: str) -> bool:
    return _is_ident_start(ch) or ("0" <= ch <= "9")


def iter_tokens(source: str) -> Iterator[Token]:
    """Yield tokens lazily, finishing with a single END token."""
    i, n = 0, len(source)
    line, col = 1, 1
    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line, col = line + 1, 1
            continue
        if ch in " \t\r\f\v﻿":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and source[i] != "\n":
                i += 1
            continue
        start_col = col
        if _is_ident_start(ch):
            j = i + 1
            while j < n and _is_ident_char(source[j]):
                j += 1
            word = source[i:j]
            upper = word.upper()
            if upper in KEYWORDS:
                yield Token(TokenKind.KEYWORD, upper, line, start_col)
            else:
                yield Token(TokenKind.IDENT, word, line, start_col)
            col += j - i
            i = j
            continue
        if "0" <= ch <= "9":
            j = i + 1
            while j < n and "0" <= source[j] <= "9":
                j += 1
            if j < n and _is_ident_start(source[j]):
                raise LexError(f"malformed number {source[i:j + 1]!r}", line, start_col)
            yield Token(TokenKind.INT, source[i:j], line, start_col)
            col += j - i
            i = j
            continue
        if ch in QUOTES:
            j = i + 1
            chars: list[str] = []
            while True:
                if j >= n or source[j] == "\n":
                    raise LexError("unterminated string literal", line, start_col)
                c = source[j]
                if c == "\\" and j + 1 < n and (source[j + 1] in QUOTES or source[j + 1] == "\\"):
                    chars.append(source[j + 1])
                    j += 2
                    continue
                if c in QUOTES:
                    j += 1
                    break
                chars.append(c)
                j += 1
            yield Token(TokenKind.STRING, "".join(chars), line, start_col)
            col += j - i
            i = j
            continue
        if ch in PUNCTUATION:
            yield Token(TokenKind.PUNCT, ch, line, start_col)
            i += 1
            col += 1
            continue
        raise LexError(f"illegal character {ch!r}", line, start_col)
    yield Token(TokenKind.END, "", line, col)


def tokenize(source: str) -> list[Token]:
    return list(iter_tokens(source))
