"""The symbolic layer against frozen brute-force values."""

import json

from fpquiver import linrep, oracle, regions
from fpquiver.patterns import Finite
from fpquiver.qdl import core, ray
from fpquiver.regions import engine_for

from conftest import GOLDEN_DIR


def golden():
    return json.loads((GOLDEN_DIR / "derived.json").read_text())


def dims_by_id(m):
    return {v.canonical_id(): d for v, d in m.dims.items() if d}


def test_path_count_matches_golden(ex3):
    want = golden()["ex3 paths v:v0 -> r:b:2"]
    assert regions.path_count(ex3, core("v0"), ray("b", 2)) == Finite(want)


def test_builder_dims_match_golden(ex4, ex5):
    g = golden()
    assert dims_by_id(linrep.build_I(ex4, ray("b", 2), 3)) == g[
        "ex4 I r:b:2 window 3 dims"]
    assert dims_by_id(linrep.build_P(ex4, ray("a", 0), 3)) == g[
        "ex4 P r:a:0 window 3 dims"]
    assert dims_by_id(linrep.build_P(ex5, ray("a", 0), 3)) == g[
        "ex5 P r:a:0 window 3 dims"]
    assert dims_by_id(linrep.build_I(ex5, ray("b", 0), 3)) == g[
        "ex5 I r:b:0 window 3 dims"]


def test_tail_class_limit_matches_golden(ex1):
    want = golden()["ex1 tail limit dims radius 4"]
    cls = engine_for(ex1).tail_classes()[0][0]
    y = linrep.build_Y(ex1, cls, 4)
    got = {f"r:a:{i}": y.dim(ray("a", i)) for i in range(5)}
    assert got == want


def test_probe_traces_match_golden(ex2, ex4):
    g = golden()
    trace = oracle.window_convergence_probe(
        ex4, ("paths", ray("a", 0), ray("b", 5)), list(range(5, 10)))
    assert list(trace) == g["ex4 paths r:a:0 -> r:b:5 trace radii 5..9"]
    trace = oracle.window_convergence_probe(
        ex2, ("pred", ray("a", 0)), list(range(2, 7)))
    assert list(trace) == g["ex2 pred r:a:0 trace radii 2..6"]


def test_socle_radical_match_golden(ex1):
    g = golden()
    i1 = linrep.build_I(ex1, ray("a", 2), 4)
    got = {v.canonical_id(): d
           for v, d in linrep.socle(i1).dims_dict().items()}
    assert got == g["ex1 socle I r:a:2 window 4 dims"]
    p1 = linrep.build_P(ex1, ray("a", 0), 3)
    got = {v.canonical_id(): d
           for v, d in linrep.radical(p1).dims_dict().items()}
    assert got == g["ex1 radical P r:a:0 window 3 dims"]
