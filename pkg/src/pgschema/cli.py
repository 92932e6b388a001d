"""Command-line front end: run or check DDL scripts, or an interactive REPL."""

from __future__ import annotations

import argparse
import contextlib
import fcntl
import os
import sys
from dataclasses import dataclass
from typing import IO, Iterator

from . import describe as desc
from .catalog import Catalog, Session, execute
from .errors import DDLError, LexError
from .lexer import TokenKind, iter_tokens
from .parser import iter_statements
from .storage import read_catalog, write_catalog

EXIT_OK, EXIT_ERROR, EXIT_IO = 0, 1, 2

LIST_KINDS = ("vertex", "edge", "graph", "label")


@dataclass
class CliConfig:
    catalog_path: str
    mode: str = "repl"  # "script" | "repl" | "check"
    script_path: str | None = None
    describe: str | None = None

    def __post_init__(self) -> None:
        if self.mode in ("script", "check") and not self.script_path:
            raise ValueError(f"{self.mode} mode requires a script path")


def diagnostic(source: str, exc: DDLError) -> str:
    if exc.line is None:
        return f"{source}: error: {exc.message}"
    return f"{source}:{exc.line}:{exc.column}: error: {exc.message}"


@contextlib.contextmanager
def catalog_lock(path: str, shared: bool = False) -> Iterator[None]:
    """Advisory lock on ``<catalog>.lock`` held for the duration of the block."""
    with open(path + ".lock", "a") as fh:
        try:
            fcntl.flock(fh.fileno(), (fcntl.LOCK_SH if shared else fcntl.LOCK_EX) | fcntl.LOCK_NB)
        except BlockingIOError:
            raise OSError(f"catalog '{path}' is locked by another process") from None
        try:
            yield
        finally:
            fcntl.flock(fh.fileno(), fcntl.LOCK_UN)


def _load(config: CliConfig, err: IO[str]) -> Catalog | None:
    try:
        return read_catalog(config.catalog_path)
    except DDLError as exc:
        print(diagnostic(config.catalog_path, exc), file=err)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"{config.catalog_path}: error: {exc}", file=err)
    return None


def _print_describe(catalog: Catalog, name: str, out: IO[str], err: IO[str]) -> bool:
    if not name or name == "catalog":
        lines = desc.catalog_listing(catalog)
        print("\n".join(lines) if lines else "(empty catalog)", file=out)
        return True
    lines = desc.describe(catalog, name)
    if lines is None:
        print(f"error: no type or schema object named '{name}'", file=err)
        return False
    print("\n".join(lines), file=out)
    return True


def _run(config: CliConfig, write: bool, out: IO[str], err: IO[str]) -> int:
    catalog = _load(config, err)
    if catalog is None:
        return EXIT_IO
    try:
        with open(config.script_path, encoding="utf-8") as fh:
            source = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        print(f"{config.script_path}: error: {exc}", file=err)
        return EXIT_IO

    session = Session()
    succeeded = 0
    status = EXIT_OK
    try:
        for stmt in iter_statements(source):
            result = execute(stmt, catalog, session)
            succeeded += 1
            for msg in result.messages:
                print(msg, file=out)
    except DDLError as exc:
        print(diagnostic(config.script_path, exc), file=err)
        status = EXIT_ERROR
    except RecursionError:
        print(f"{config.script_path}: error: input nested too deeply", file=err)
        status = EXIT_ERROR

    if write and succeeded:
        try:
            write_catalog(config.catalog_path, catalog)
        except OSError as exc:
            print(f"{config.catalog_path}: error: {exc}", file=err)
            return EXIT_IO
    if config.describe is not None and not _print_describe(catalog, config.describe, out, err):
        status = status or EXIT_ERROR
    return status


def run_script(config: CliConfig, out: IO[str] | None = None, err: IO[str] | None = None) -> int:
    """Execute a script, saving the catalog through the last successful statement."""
    out, err = out or sys.stdout, err or sys.stderr
    try:
        with catalog_lock(config.catalog_path):
            return _run(config, True, out, err)
    except OSError as exc:
        print(f"{config.catalog_path}: error: {exc}", file=err)
        return EXIT_IO


def check(config: CliConfig, out: IO[str] | None = None, err: IO[str] | None = None) -> int:
    """Parse and execute against an in-memory copy; the catalog file is never written."""
    out, err = out or sys.stdout, err or sys.stderr
    try:
        with catalog_lock(config.catalog_path, shared=True):
            return _run(config, False, out, err)
    except OSError as exc:
        print(f"{config.catalog_path}: error: {exc}", file=err)
        return EXIT_IO


def _paren_depth(text: str) -> int:
    depth = 0
    for tok in iter_tokens(text):
        if tok.kind is TokenKind.PUNCT:
            depth += {"(": 1, ")": -1}.get(tok.lexeme, 0)
    return depth


def repl(config: CliConfig, stdin: IO[str] | None = None, out: IO[str] | None = None,
         err: IO[str] | None = None) -> int:
    """Read-eval-print loop. Changes stay in memory until ``\\save``."""
    stdin, out, err = stdin or sys.stdin, out or sys.stdout, err or sys.stderr
    try:
        lock = catalog_lock(config.catalog_path)
        lock.__enter__()
    except OSError as exc:
        print(f"{config.catalog_path}: error: {exc}", file=err)
        return EXIT_IO
    try:
        catalog = _load(config, err)
        if catalog is None:
            return EXIT_IO
        return _repl_loop(config, catalog, stdin, out, err)
    finally:
        lock.__exit__(None, None, None)


def _repl_loop(config: CliConfig, catalog: Catalog, stdin: IO[str], out: IO[str],
               err: IO[str]) -> int:
    session = Session()
    interactive = stdin.isatty()
    lineno = 0
    buffer: list[str] = []
    start_line = 1
    while True:
        if interactive:
            out.write("... " if buffer else "pgschema> ")
            out.flush()
        line = stdin.readline()
        if not line:
            return EXIT_OK
        lineno += 1
        text = line.rstrip("\n")
        if not buffer:
            stripped = text.strip()
            if not stripped:
                continue
            if stripped.startswith("\\"):
                if _meta(stripped, config, catalog, out, err):
                    return EXIT_OK
                continue
            start_line = lineno
        buffer.append(text)
        chunk = "\n".join(buffer)
        try:
            if _paren_depth(chunk) > 0:
                continue
        except LexError:
            pass
        buffer = []
        try:
            for stmt in iter_statements(chunk):
                result = execute(stmt, catalog, session)
                for msg in result.messages:
                    print(msg, file=out)
        except DDLError as exc:
            if exc.line is not None:
                exc.line += start_line - 1
            print(diagnostic("<repl>", exc), file=err)
        except RecursionError:
            print("<repl>: error: input nested too deeply", file=err)


def _meta(command: str, config: CliConfig, catalog: Catalog, out: IO[str], err: IO[str]) -> bool:
    """Handle a backslash command; returns True when the REPL should exit."""
    parts = command.split()
    name, args = parts[0], parts[1:]
    if name == "\\quit":
        return True
    if name == "\\describe":
        _print_describe(catalog, args[0] if args else "", out, err)
    elif name == "\\list":
        if len(args) != 1 or args[0].lower() not in LIST_KINDS:
            print(f"error: usage: \\list <{'|'.join(LIST_KINDS)}>", file=err)
        else:
            for n in catalog.types_of_kind(args[0].lower()):
                print(n, file=out)
    elif name == "\\save":
        try:
            write_catalog(config.catalog_path, catalog)
            print(f"saved {config.catalog_path}", file=out)
        except OSError as exc:
            print(f"{config.catalog_path}: error: {exc}", file=err)
    else:
        print(f"error: unknown command {name}; try \\describe, \\list, \\save, \\quit", file=err)
    return False


def build_arg_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pgschema", description="Property graph schema DDL engine.")
    p.add_argument("--catalog", required=True, help="catalog file (created if missing)")
    p.add_argument("--script", help="DDL script to execute")
    p.add_argument("--check", "--dry-run", dest="check", action="store_true",
                   help="validate the script without writing the catalog")
    p.add_argument("--repl", action="store_true", help="interactive mode (default without --script)")
    p.add_argument("--describe", nargs="?", const="", metavar="NAME",
                   help="print the catalog, or one type/object, and exit (after --script)")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    if args.check and not args.script:
        print("error: --check requires --script", file=sys.stderr)
        return EXIT_ERROR
    if args.script:
        config = CliConfig(args.catalog, "check" if args.check else "script", args.script,
                           args.describe)
        return check(config) if args.check else run_script(config)
    config = CliConfig(args.catalog, "repl", describe=args.describe)
    if args.describe is not None and not args.repl:
        catalog = _load(config, sys.stderr)
        if catalog is None:
            return EXIT_IO
        return EXIT_OK if _print_describe(catalog, args.describe, sys.stdout, sys.stderr) \
            else EXIT_ERROR
    return repl(config)


if __name__ == "__main__":
    sys.exit(main())
