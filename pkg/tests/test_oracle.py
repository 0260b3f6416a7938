"""Brute-force oracle: explicit graphs, path enumeration, differentials."""

import random

import pytest

from fpquiver import linrep, oracle, regions
from fpquiver.oracle import (
    CycleDetected,
    ExplicitQuiver,
    brute_build_I,
    brute_build_P,
    brute_paths,
    brute_radical,
    brute_rank,
    brute_socle,
    from_window,
    paths_from,
    window_convergence_probe,
)
from fpquiver.qdl import core, instantiate_window, ray


def test_explicit_quiver_validation():
    with pytest.raises(ValueError):
        ExplicitQuiver(("x",), (("a", "x", "y"),))


def test_brute_paths(ex3):
    g = from_window(instantiate_window(ex3, 4))
    assert len(brute_paths(g, core("v0"), ray("b", 2))) == 3
    chain = ExplicitQuiver(("x", "y", "z"), (("a", "x", "y"), ("b", "y", "z")))
    assert len(brute_paths(chain, "x", "z")) == 1
    assert brute_paths(chain, "z", "x") == []


def test_cycle_detected():
    g = ExplicitQuiver(("x", "y"), (("a", "x", "y"), ("b", "y", "x")))
    with pytest.raises(CycleDetected):
        brute_paths(g, "x", "y")


def test_paths_from_groups_by_endpoint(ex1):
    g = from_window(instantiate_window(ex1, 3))
    groups = paths_from(g, ray("a", 1))
    assert len(groups[ray("a", 1)]) == 1  # the trivial path
    assert len(groups[ray("a", 3)]) == 1
    assert ray("a", 0) not in groups


def test_builder_differential(ex4):
    w = instantiate_window(ex4, 3)
    g = from_window(w)
    for a in (ray("a", 0), ray("b", 1)):
        main = linrep.build_P(ex4, a, 3)
        brute = brute_build_P(g, a)
        assert {v: d for v, d in brute["dims"].items() if d} == dict(main.dims)
        assert all(main.matrix(aid) == mat
                   for aid, mat in brute["maps"].items())
        main_i = linrep.build_I(ex4, a, 3)
        brute_i = brute_build_I(g, a)
        assert {v: d for v, d in brute_i["dims"].items() if d} == dict(
            main_i.dims)
        assert all(main_i.matrix(aid) == mat
                   for aid, mat in brute_i["maps"].items())


def test_socle_radical_differential(ex1):
    i1 = linrep.build_I(ex1, ray("a", 2), 4)
    assert brute_socle(i1) == linrep.socle(i1).dims_dict()
    p1 = linrep.build_P(ex1, ray("a", 0), 3)
    assert brute_radical(p1) == linrep.radical(p1).dims_dict()


def test_brute_rank():
    assert brute_rank([[1, 2], [2, 4], [0, 1]]) == 2
    assert brute_rank([]) == 0
    assert brute_rank([[0, 0]]) == 0


def test_convergence_probe_traces(ex1, ex2, ex4):
    t = window_convergence_probe(
        ex4, ("paths", ray("a", 0), ray("b", 5)), [5, 6, 7, 8, 9])
    assert t == (6, 6, 6, 6, 6)
    t = window_convergence_probe(ex2, ("pred", ray("a", 0)), [2, 3, 4, 5, 6])
    assert t == (3, 4, 5, 6, 7)
    t = window_convergence_probe(
        ex1, ("paths", ray("a", 0), ray("a", 3)), [3, 4, 5, 6])
    assert t == (1, 1, 1, 1)
    t = window_convergence_probe(ex1, ("succ", ray("a", 1)),
                                 list(range(6, 12)))
    assert len(t) == 6


def test_probe_validates_radii(ex2):
    with pytest.raises(ValueError):
        window_convergence_probe(ex2, ("pred", ray("a", 0)), [2, 2, 3])


def test_random_description_round_trip():
    rng = random.Random(3)
    for _ in range(10):
        q = oracle.random_description(rng)
        assert q.name == "rnd"
        assert q.ray_names()


def test_random_window_count_differential():
    rng = random.Random(7)
    samples = 0
    for _ in range(30):
        q = oracle.random_description(rng)
        if regions.oriented_cycle_witness(q) is not None:
            continue
        w = instantiate_window(q, 5)
        g = from_window(w)
        eng = regions.engine_for(q)
        verts = list(w.vertices)
        for _ in range(3):
            a, b = rng.choice(verts), rng.choice(verts)
            assert len(brute_paths(g, a, b)) == eng._window_count(5, a, b)
            samples += 1
    assert samples >= 20
