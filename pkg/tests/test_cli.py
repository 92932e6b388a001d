import io
import subprocess
import sys

import pytest

from catalog_checkpoints import STEPS
from conftest import CORPUS, corpus, run
from pgschema.cli import CliConfig, check, main, repl, run_script
from pgschema.storage import read_catalog, save_catalog

WALKTHROUGH = "\n".join(STEPS) + "\n"


@pytest.fixture
def paths(tmp_path):
    return tmp_path / "schema.pgc", tmp_path / "script.ddl"


def invoke(*args):
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = out, err
    try:
        code = main([str(a) for a in args])
    finally:
        sys.stdout, sys.stderr = old
    return code, out.getvalue(), err.getvalue()


def test_config_requires_script_for_script_mode():
    with pytest.raises(ValueError):
        CliConfig("x.pgc", "script")


def test_run_then_describe_catalog(paths):
    cat, script = paths
    script.write_text("\n".join(STEPS[:3]) + "\n")
    code, out, err = invoke("--catalog", cat, "--script", script)
    assert code == 0 and err == ""
    code, out, _ = invoke("--catalog", cat, "--describe", "catalog")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 6
    assert lines[-1].startswith("schema object G1 of graph type G1")
    assert "references G1.A -> A, G1.B -> B" in lines[-1]


def test_empty_script_leaves_catalog_alone(paths):
    cat, script = paths
    script.write_text("# nothing here\n")
    assert invoke("--catalog", cat, "--script", script)[0] == 0
    assert not cat.exists()


def test_partial_failure_saves_through_last_success(paths, tmp_path):
    cat, script = paths
    lines = ["CREATE VERTEX a (x INT PRIMARY KEY)",
             "CREATE VERTEX b (x INT PRIMARY KEY)",
             "DROP VERTEX nosuch",
             "CREATE VERTEX c (x INT PRIMARY KEY)"]
    script.write_text("\n".join(lines) + "\n")
    code, _, err = invoke("--catalog", cat, "--script", script)
    assert code == 1
    assert err.strip() == f"{script}:3:1: error: unknown vertex 'nosuch'"
    expected = save_catalog(run("\n".join(lines[:2])))
    assert cat.read_text() == expected


def test_failure_on_first_statement_keeps_file(paths):
    cat, script = paths
    script.write_text("CREATE VERTEX a (x INT PRIMARY KEY)\n")
    invoke("--catalog", cat, "--script", script)
    before = cat.read_bytes()
    script.write_text("CREATE VERTEX a (x INT PRIMARY KEY)\n")
    code, _, err = invoke("--catalog", cat, "--script", script)
    assert code == 1 and ":1:1: error:" in err
    assert cat.read_bytes() == before


def test_parse_error_diagnostic(paths):
    cat, script = paths
    script.write_text("CREATE VERTEX a (x INT PRIMARY KEY)\nCREATE VERTEX b (x BLOB)\n")
    code, _, err = invoke("--catalog", cat, "--script", script)
    assert code == 1
    assert err.strip() == f"{script}:2:20: error: unknown data type 'BLOB'"
    assert read_catalog(cat).types.keys() == {"a"}


def test_io_errors(paths, tmp_path):
    cat, script = paths
    assert invoke("--catalog", cat, "--script", tmp_path / "missing.ddl")[0] == 2
    cat.write_text("not a catalog\n")
    script.write_text("CREATE VERTEX a (x INT PRIMARY KEY)\n")
    code, _, err = invoke("--catalog", cat, "--script", script)
    assert code == 2 and f"{cat}:1:1: error:" in err
    assert cat.read_text() == "not a catalog\n"


def test_check_mode(paths):
    cat, script = paths
    script.write_text(corpus("create_examples.ddl"))
    assert invoke("--catalog", cat, "--check", "--script", script)[0] == 0
    assert not cat.exists()
    script.write_text("DROP VERTEX person\n")
    assert invoke("--catalog", cat, "--check", "--script", script)[0] == 1


def test_check_never_writes(paths):
    cat, script = paths
    script.write_text(WALKTHROUGH)
    invoke("--catalog", cat, "--script", script)
    before = cat.read_bytes()
    script.write_text("DROP GRAPH G4\nDROP GRAPH G3\n")
    assert invoke("--catalog", cat, "--dry-run", "--script", script)[0] == 0
    assert cat.read_bytes() == before


@pytest.mark.parametrize("name", sorted(p.name for p in CORPUS.glob("*.ddl")))
def test_check_agrees_with_run(name, tmp_path):
    script = CORPUS / name
    a, b = tmp_path / "a.pgc", tmp_path / "b.pgc"
    checked = check(CliConfig(str(a), "check", str(script)), io.StringIO(), io.StringIO())
    ran = run_script(CliConfig(str(b), "script", str(script)), io.StringIO(), io.StringIO())
    assert (checked == 0) == (ran == 0)
    assert not a.exists()


def test_deterministic_across_processes(tmp_path):
    script = tmp_path / "s.ddl"
    script.write_text(WALKTHROUGH)
    outputs = []
    for i in range(2):
        cat = tmp_path / f"c{i}.pgc"
        subprocess.run([sys.executable, "-m", "pgschema", "--catalog", str(cat),
                        "--script", str(script)], check=True, capture_output=True)
        outputs.append(cat.read_bytes())
    assert outputs[0] == outputs[1]
    assert outputs[0] == save_catalog(run(WALKTHROUGH)).encode()


def test_lock_conflict(paths):
    import fcntl
    cat, script = paths
    script.write_text("CREATE VERTEX a (x INT PRIMARY KEY)\n")
    with open(str(cat) + ".lock", "a") as fh:
        fcntl.flock(fh.fileno(), fcntl.LOCK_EX)
        code, _, err = invoke("--catalog", cat, "--script", script)
    assert code == 2 and "locked" in err
    assert not cat.exists()


# -- REPL ---------------------------------------------------------------------

def session(cat, text):
    out, err = io.StringIO(), io.StringIO()
    code = repl(CliConfig(str(cat)), io.StringIO(text), out, err)
    return code, out.getvalue(), err.getvalue()


def test_repl_list_and_describe(paths):
    cat, _ = paths
    text = corpus("create_examples.ddl").split("CREATE UNDIRECTED EDGE friendship")[0]
    text = text.replace("CREATE VERTEX animal (name STRING PRIMARY KEY, species STRING)", "")
    code, out, err = session(cat, text + "\\list vertex\n\\describe professor\n\\quit\n")
    assert code == 0 and err == ""
    lines = out.splitlines()
    i = lines.index("person")
    assert lines[i:i + 2] == ["person", "professor"]
    attrs = [l for l in lines if l.startswith("    ")]
    assert len(attrs) == 5
    assert sum("(from person)" in l for l in attrs) == 4
    assert "  PRIMARY KEY (name)" in lines


def test_repl_continues_after_errors(paths):
    cat, _ = paths
    code, out, err = session(cat, "DROP VERTEX nope\nCREATE VERTEX a (\n  x INT PRIMARY KEY\n)\n"
                                  "\\list vertex\n")
    assert code == 0
    assert err.strip() == "<repl>:1:1: error: unknown vertex 'nope'"
    assert out.splitlines()[-1] == "a"


def test_repl_error_line_numbers_follow_input(paths):
    cat, _ = paths
    _, _, err = session(cat, "\n\nUSE GRAPH nowhere\n")
    assert err.startswith("<repl>:3:1: error:")


def test_repl_only_save_writes(paths):
    cat, _ = paths
    code, _, _ = session(cat, "CREATE VERTEX a (x INT PRIMARY KEY)\n\\list vertex\n"
                              "\\describe a\n\\describe\n\\quit\n")
    assert code == 0 and not cat.exists()
    session(cat, "CREATE VERTEX a (x INT PRIMARY KEY)\nUSE GRAPH nowhere\n\\save\n")
    assert read_catalog(cat).types.keys() == {"a"}


def test_repl_use_graph_not_persisted(paths):
    cat, _ = paths
    session(cat, WALKTHROUGH + "\\save\n")
    saved = cat.read_text()
    assert "current" not in saved and "session" not in saved
    # a new session starts unscoped: C resolves globally and is unknown
    _, _, err = session(cat, "ALTER VERTEX C ADD (y INT)\n")
    assert "unknown" in err


def test_repl_eof_and_bad_meta(paths):
    cat, _ = paths
    code, _, err = session(cat, "\\frobnicate\n\\list table\n")
    assert code == 0
    assert "unknown command" in err and "usage" in err
