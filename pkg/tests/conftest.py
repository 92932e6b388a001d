from __future__ import annotations

from pathlib import Path

import pytest

from pgschema.catalog import Catalog, Session, execute
from pgschema.parser import iter_statements

CORPUS = Path(__file__).parent / "corpus"


def corpus(name: str) -> str:
    return (CORPUS / name).read_text(encoding="utf-8")


def run(source: str, catalog: Catalog | None = None,
        session: Session | None = None) -> Catalog:
    """Execute every statement of ``source``; the first failure propagates."""
    catalog = catalog if catalog is not None else Catalog()
    session = session if session is not None else Session()
    for stmt in iter_statements(source):
        execute(stmt, catalog, session)
    return catalog


@pytest.fixture
def examples() -> Catalog:
    return run(corpus("create_examples.ddl"))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
