"""Command-line interface: report formats and the exit-code contract."""

import pathlib

import pytest

from fpquiver import cli

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def fx(name):
    return str(FIXTURES / f"{name}.quiver")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_validate_ok(capsys):
    code, out = run(capsys, "validate", fx("ex1"))
    assert code == 0
    assert "quiver: ex1" in out
    assert "interval finite: yes" in out


def test_validate_cycle_exit_3(capsys):
    code, out = run(capsys, "validate", fx("cycle"))
    assert code == 3
    assert "not interval finite" in out
    assert "witness" in out


def test_validate_missing_file_exit_1(capsys):
    code, out = run(capsys, "validate", str(FIXTURES / "nope.quiver"))
    assert code == 1
    assert out.startswith("error:")


def test_validate_parse_error_exit_2(capsys):
    code, out = run(capsys, "validate", fx("broken"))
    assert code == 2
    assert out.startswith("parse error:")


def test_classify_ex5_report(capsys):
    code, out = run(capsys, "classify", fx("ex5"))
    assert code == 0
    lines = out.splitlines()
    assert "IA-RAYS" in lines
    assert "a: all yes" in lines
    assert "b: all no" in lines
    assert "Y-CLASSES" in lines
    assert "(a,+): yes" in lines
    assert "(b,+): no (not top finite)" in lines
    assert "(a,+) boundary: {r:b:0, r:b:1}" in lines


def test_classify_ex3_all_no(capsys):
    code, out = run(capsys, "classify", fx("ex3"))
    assert code == 0
    lines = out.splitlines()
    assert "b: all no" in lines
    assert "v0: no (predecessor v:v0 has infinite out-degree)" in lines
    assert not any(": yes" in l for l in lines)


def test_classify_ex4(capsys):
    code, out = run(capsys, "classify", fx("ex4"))
    lines = out.splitlines()
    assert "a: all yes" in lines
    assert "b: all yes" in lines
    assert "(a,+): no (boundary infinite)" in lines
    assert "(b,+): no (not uniformly interval finite)" in lines


def test_query_paths(capsys):
    code, out = run(capsys, "query", fx("ex3"), "paths", "v:v0", "r:b:2")
    assert code == 0
    assert "result: finite 3" in out


def test_query_pred_infinite(capsys):
    code, out = run(capsys, "query", fx("ex2"), "pred", "r:a:0")
    assert code == 0
    assert "result: infinite (ray a, i <= 0)" in out


def test_query_boundary(capsys):
    code, out = run(capsys, "query", fx("ex5"), "boundary", "class", "(a,+)")
    assert code == 0
    assert "result: finite {r:b:0, r:b:1}" in out


def test_query_unknown_vertex_exit_4(capsys):
    code, out = run(capsys, "query", fx("ex1"), "pred", "r:zzz:0")
    assert code == 4
    assert out.startswith("unknown id:")


def test_query_unknown_class_exit_4(capsys):
    code, out = run(capsys, "query", fx("ex5"), "supp", "(q,-)")
    assert code == 4
    assert "(a,+)" in out  # lists the known class ids


def test_rep_dump_identity_tail(capsys):
    code, out = run(capsys, "rep", fx("ex1"), "Y", "(a,+)", "--window", "4",
                    "--dump")
    assert code == 0
    lines = out.splitlines()
    for i in range(5):
        assert f"vertex r:a:{i} dim 1" in lines
    for i in range(4):
        assert f"arrow alpha@{i} 1x1" in lines
    assert lines.count("1/1") == 4


def test_rep_dump_injective(capsys):
    code, out = run(capsys, "rep", fx("ex4"), "I", "r:b:2", "--window", "3",
                    "--dump")
    assert code == 0
    assert "vertex r:a:1 dim 2" in out.splitlines()


def test_rep_unbounded_exit_5(capsys):
    code, out = run(capsys, "rep", fx("ex4"), "Y", "(b,+)", "--window", "2")
    assert code == 5
    assert out.strip() == "infinite dimension at r:a:0"


def test_rep_default_window_and_summary(capsys):
    code, out = run(capsys, "rep", fx("ex1"), "P", "r:a:1")
    assert code == 0
    assert "total dim:" in out
    assert "arrow" not in out


def test_rep_dot(capsys):
    code, out = run(capsys, "rep", fx("ex1"), "P", "r:a:0", "--dot",
                    "--window", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("digraph ")
    assert lines[-1] == "}"
    assert '"r:a:0" [label="r:a:0 dim=1"];' in out
    assert '"r:a:0" -> "r:a:1" [label="alpha@0"];' in out


def test_oracle_compare(capsys):
    code, out = run(capsys, "oracle-compare", fx("ex4"), "--seed", "5")
    assert code == 0
    assert "oracle-compare: ok" in out


@pytest.mark.parametrize("args", [
    ("classify",),
    ("query", "pred", "r:a:0"),
    ("rep", "Y", "(a,+)", "--window", "4", "--dump"),
    ("oracle-compare", "--seed", "11"),
])
def test_reports_are_deterministic(capsys, args):
    cmd, rest = args[0], list(args[1:])
    file = fx("ex5" if cmd in ("classify",) else "ex1")
    first = run(capsys, cmd, file, *rest)
    second = run(capsys, cmd, file, *rest)
    assert first == second
    assert first[0] == 0
