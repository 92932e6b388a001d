import re
from collections import Counter

import pytest

from grammar_cases import NEGATIVE_CASES
from conftest import corpus
from pgschema import nodes as ast
from pgschema.errors import DDLError, ParseError
from pgschema.parser import iter_statements, parse_script, parse_statement


def test_vertex_with_inline_key():
    stmt = parse_statement("CREATE VERTEX person (name STRING NOT NULL PRIMARY KEY, age INT)")
    assert stmt == ast.CreateVertex("person", (
        ast.AttributeSpec("name", "STRING", True, True),
        ast.AttributeSpec("age", "INT")))
    assert stmt.key_names == ("name",)


def test_vertex_with_trailing_composite_key():
    stmt = parse_statement("CREATE VERTEX p (a INT, b STRING, PRIMARY KEY(a, b))")
    assert stmt.primary_key == ("a", "b") and stmt.key_names == ("a", "b")


def test_vertex_uuid_key():
    stmt = parse_statement("CREATE VERTEX p (a INT, PRIMARY KEY UUID)")
    assert stmt.uuid_key and stmt.key_names == ()


def test_vertex_subtype_without_body():
    assert parse_statement("CREATE VERTEX q EXTENDS p") == ast.CreateVertex("q", extends="p")


def test_edge_pairs_and_clauses():
    stmt = parse_statement(
        "CREATE DIRECTED EDGE e ((FROM a|b, TO *), FROM c, TO d, w INT, "
        "DISCRIMINATOR (w), KEY (w)) WITH REVERSE_EDGE=“rev”")
    assert stmt.pairs == (ast.EndpointPairSpec(("a", "b"), None),
                          ast.EndpointPairSpec(("c",), ("d",)))
    assert stmt.discriminator == ("w",)
    assert stmt.keys == (("w",),)
    assert stmt.reverse_name == "rev"
    assert stmt.directed


def test_edge_subtype():
    stmt = parse_statement("CREATE DIRECTED EDGE m EXTENDS s(end_day DATETIME) WITH REVERSE_EDGE= ”r”")
    assert stmt.extends == "s" and stmt.pairs == () and stmt.reverse_name == "r"


@pytest.mark.parametrize("src,expected", [
    ("CREATE GRAPH g", ast.CreateGraph("g")),
    ("CREATE GRAPH g (a, references b)",
     ast.CreateGraph("g", (ast.GraphMemberSpec("a"), ast.GraphMemberSpec("b", True)))),
    ("CREATE GRAPH g OWNS (a)", ast.CreateGraph("g", (ast.GraphMemberSpec("a"),), owns=True)),
    ("CREATE GRAPH g as h", ast.CreateGraph("g", as_type="h")),
    ("CREATE GRAPH g EXTENDS h (x)", ast.CreateGraph("g", (ast.GraphMemberSpec("x"),), "h")),
])
def test_graph_forms(src, expected):
    assert parse_statement(src) == expected


def test_label_clauses_in_any_order():
    a = parse_statement('CREATE LABEL l EXTENDS x, y DESCRIPTION "d"')
    b = parse_statement('CREATE LABEL l DESCRIPTION "d" EXTENDS x, y')
    assert a == b == ast.CreateLabel("l", "d", ("x", "y"))


def test_drop_forms():
    assert parse_statement("DROP VERTEX person CASCADE") == ast.DropVertex(("person",), cascade=True)
    assert parse_statement("DROP VERTEX *") == ast.DropVertex(star=True)
    assert parse_statement("DROP EDGE friendship, supervise") == ast.DropEdge(
        ("friendship", "supervise"))
    assert parse_statement("DROP GRAPH social, company") == ast.DropGraph(("social", "company"))


def test_alter_drop_ignores_type():
    stmt = parse_statement("ALTER VERTEX person DROP (ssn VARCHAR(9))")
    assert stmt == ast.AlterVertex("person", "DROP", drop_names=("ssn",))


def test_alter_graph():
    stmt = parse_statement("ALTER GRAPH school DROP VERTEX (professor) CASCADE")
    assert stmt == ast.AlterGraph("school", "DROP", "VERTEX", ("professor",), True)


def test_use_graph_qualified():
    assert parse_statement("USE GRAPH a.b") == ast.UseGraph("a.b")


def test_case_insensitive_keywords():
    lower = parse_statement("create directed edge e (from a, to b) with reverse_edge=\"r\"")
    upper = parse_statement("CREATE DIRECTED EDGE e (FROM a, TO b) WITH REVERSE_EDGE=\"r\"")
    assert lower == upper


def test_data_types_are_canonicalized():
    stmt = parse_statement("CREATE VERTEX p (a map< string , list<int> > PRIMARY KEY)")
    assert stmt.attributes[0].data_type_text == "MAP<STRING,LIST<INT>>"


def test_statements_may_span_lines():
    stmts = parse_script("CREATE DIRECTED EDGE e (FROM a, TO b)\n  WITH REVERSE_EDGE=\"r\"\nUSE GRAPH g")
    assert [type(s) for s in stmts] == [ast.CreateEdge, ast.UseGraph]
    assert stmts[0].reverse_name == "r"
    assert (stmts[1].line, stmts[1].column) == (3, 1)


def test_positions_excluded_from_equality():
    assert parse_statement("USE GRAPH g") == parse_statement("\n\n   USE GRAPH g")


def test_parse_statement_rejects_second_statement():
    with pytest.raises(ParseError):
        parse_statement("USE GRAPH a\nUSE GRAPH b")


def test_iter_statements_is_lazy():
    it = iter_statements("USE GRAPH a\nUSE GRAPH b\nBOGUS")
    assert next(it).name == "a"
    assert next(it).name == "b"
    with pytest.raises(ParseError) as info:
        next(it)
    assert info.value.line == 3


@pytest.mark.parametrize("production,src,line,column", NEGATIVE_CASES,
                         ids=[f"{c[0]}-{i}" for i, c in enumerate(NEGATIVE_CASES)])
def test_malformed_statement_rejected_with_position(production, src, line, column):
    with pytest.raises(DDLError) as info:
        parse_script(src)
    assert (info.value.line, info.value.column) == (line, column)
    assert re.match(r"^\d+:\d+: ", str(info.value))


def test_parse_error_lists_expected():
    with pytest.raises(ParseError) as info:
        parse_statement("DROP TABLE t")
    assert set(info.value.expected) == {"VERTEX", "EDGE", "GRAPH", "LABEL"}


VERBATIM_BLOCKS = corpus("verbatim_blocks.ddl")


def test_example_blocks_parse():
    stmts = parse_script(VERBATIM_BLOCKS)
    counts = Counter(type(s).__name__ for s in stmts)
    assert counts == {"CreateVertex": 5, "CreateEdge": 6, "CreateGraph": 7, "CreateLabel": 3,
                      "DropVertex": 3, "DropEdge": 2, "DropGraph": 1, "DropLabel": 2,
                      "AlterVertex": 2, "AlterEdge": 2, "AlterGraph": 5, "UseGraph": 1}
