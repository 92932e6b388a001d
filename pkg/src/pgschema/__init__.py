"""Schema definition engine for property graphs.

Parses the schema DDL (vertex, edge, graph and label types with
inheritance), validates it against the type system and maintains a
persistent catalog of schema objects.
"""

from .catalog import Catalog, ExecResult, MemberRef, SchemaObject, Session, execute
from .datatypes import DataType, parse_data_type
from .errors import DDLError, LexError, ParseError
from .lexer import Token, TokenKind, tokenize
from .parser import iter_statements, parse_script, parse_statement
from .printer import print_statement
from .storage import load_catalog, save_catalog

__all__ = [
    "Catalog", "DDLError", "DataType", "ExecResult", "LexError", "MemberRef", "ParseError",
    "SchemaObject", "Session", "Token", "TokenKind", "execute", "iter_statements",
    "load_catalog", "parse_data_type", "parse_script", "parse_statement", "print_statement",
    "save_catalog", "tokenize",
]

__version__ = "0.1.0"
