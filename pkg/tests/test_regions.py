"""Symbolic region queries: cycles, counts, neighborhoods, tail classes."""

import pytest

from fpquiver import regions
from fpquiver.patterns import Finite, Infinite
from fpquiver.qdl import core, parse, ray
from fpquiver.regions import NotIntervalFinite, TailClass, engine_for


def test_corpus_is_acyclic(corpus):
    for q in corpus.values():
        assert regions.oriented_cycle_witness(q) is None


def test_anchored_cycle_witness():
    q = parse("quiver cyc\nvertex u\nvertex w\narrow f: u -> w\narrow g: w -> u\n")
    wit = regions.oriented_cycle_witness(q)
    assert wit is not None
    assert wit.source == wit.target
    assert wit.is_composable()


def test_zero_gain_cycle_witness():
    q = parse(
        "quiver zg\nray a domain int\n"
        "family f: a[i] -> a[i+1] for all i\n"
        "family g: a[i] -> a[i-1] for all i\n"
    )
    wit = regions.oriented_cycle_witness(q)
    assert wit is not None and wit.source == wit.target


def test_path_counts(ex1, ex2, ex3):
    assert regions.path_count(ex1, ray("a", 0), ray("a", 3)) == Finite(1)
    assert regions.path_count(ex2, ray("a", 5), ray("a", 1)) == Finite(0)
    assert regions.path_count(ex3, core("v0"), ray("b", 2)) == Finite(3)
    assert regions.path_count(ex2, ray("a", 0), ray("a", 5)) == Finite(1)


def test_predecessors_finite(ex1, ex4):
    pd = regions.predecessors(ex4, ray("b", 2))
    assert pd.cardinality(ex4) == Finite(6)
    assert sorted(v.canonical_id() for v in pd.vertices(ex4)) == sorted(
        ["r:a:0", "r:a:1", "r:a:2", "r:b:0", "r:b:1", "r:b:2"])
    assert regions.predecessors(ex1, ray("a", 0)).cardinality(ex1) == Finite(1)


def test_predecessors_infinite(ex2):
    pd = regions.predecessors(ex2, ray("a", 0))
    assert isinstance(pd.cardinality(ex2), Infinite)
    assert pd.ray_part("a").display("int") == "i <= 0"


def test_successors(ex1, ex4, ex5):
    sc = regions.successors(ex1, ray("a", 0))
    assert isinstance(sc.cardinality(ex1), Infinite)
    assert sc.ray_part("a").display("nat") == "all"
    sc = regions.successors(ex4, ray("b", 3))
    assert sc.ray_part("b").display("nat") == "all except {0, 1, 2}"
    assert sc.ray_part("a").is_empty
    assert isinstance(
        regions.successors(ex5, ray("b", 0)).cardinality(ex5), Infinite)


def test_neighbors(ex1, ex3, ex4):
    on = regions.out_neighbors(ex3, core("v0"))
    assert isinstance(on.cardinality(ex3), Infinite)
    on = regions.out_neighbors(ex4, ray("a", 1))
    assert sorted(v.canonical_id() for v in on.vertices(ex4)) == [
        "r:a:2", "r:b:1"]
    on = regions.out_neighbors(ex1, ray("a", 5))
    assert [v.canonical_id() for v in on.vertices(ex1)] == ["r:a:6"]


def test_in_neighbors(ex4):
    inn = regions.in_neighbors(ex4, ray("b", 0))
    assert [v.canonical_id() for v in inn.vertices(ex4)] == ["r:a:0"]


def test_corpus_interval_finite(corpus):
    for q in corpus.values():
        ok, pair, wit = regions.is_interval_finite(q)
        assert ok, q.name


def test_not_interval_finite_fan_through():
    q = parse(
        "quiver nif2\nvertex s\nvertex t\nray a domain nat\n"
        "family f: s -> a[i] for i >= 0\n"
        "family g: a[i] -> t for i >= 0\n"
    )
    ok, pair, wit = regions.is_interval_finite(q)
    assert not ok
    assert tuple(v.canonical_id() for v in pair) == ("v:s", "v:t")
    eng = engine_for(q)
    with pytest.raises(NotIntervalFinite):
        eng.ensure_interval_finite()


def test_infinite_paths(ex1, ex2, ex3, ex5):
    assert regions.has_right_infinite_path(ex1, ray("a", 0))
    assert not regions.has_left_infinite_path(ex1, ray("a", 0))
    assert regions.has_left_infinite_path(ex2, ray("a", 0))
    assert regions.has_right_infinite_path(ex5, ray("b", -5))
    assert regions.has_right_infinite_path(ex3, core("v0"))


def test_tail_class_enumeration(corpus):
    want = {
        "ex1": [("a", "+")],
        "ex2": [("a", "+")],
        "ex3": [("b", "+")],
        "ex4": [("a", "+"), ("b", "+")],
        "ex5": [("a", "+"), ("b", "+")],
    }
    for name, q in corpus.items():
        classes, reports = regions.enumerate_tail_classes(q)
        assert [(c.ray, c.direction) for c in classes] == want[name]
        assert reports == [] or reports == ()


def test_class_ids(ex5):
    classes, _ = regions.enumerate_tail_classes(ex5)
    assert [c.class_id() for c in classes] == ["(a,+)", "(b,+)"]


def test_class_supports(ex4, ex5):
    classes5 = {c.ray: c for c in regions.enumerate_tail_classes(ex5)[0]}
    sa = regions.class_support(ex5, classes5["a"])
    assert sa.ray_part("a").display("nat") == "all"
    assert sa.ray_part("b").is_empty
    sb = regions.class_support(ex5, classes5["b"])
    assert sb.ray_part("b").display("int") == "all"
    assert sorted(sb.ray_part("a").elements()) == [0, 1]

    classes4 = {c.ray: c for c in regions.enumerate_tail_classes(ex4)[0]}
    sb4 = regions.class_support(ex4, classes4["b"])
    assert sb4.ray_part("a").display("nat") == "all"
    assert sb4.ray_part("b").display("nat") == "all"
    sa4 = regions.class_support(ex4, classes4["a"])
    assert sa4.ray_part("a").display("nat") == "all"
    assert sa4.ray_part("b").is_empty


def test_stage_checks(ex1, ex3, ex4, ex5):
    eng1 = engine_for(ex1)
    cls1 = regions.enumerate_tail_classes(ex1)[0][0]
    supp1 = regions.class_support(ex1, cls1)
    top = eng1.top_finite_stage(supp1)
    assert top.ok
    assert [v.canonical_id() for v in top.detail] == ["r:a:0"]
    assert eng1.uniform_stage(cls1, supp1).ok
    bnd = eng1.boundary_stage(supp1)
    assert bnd.ok and bnd.detail.is_empty

    eng4 = engine_for(ex4)
    classes4 = {c.ray: c for c in regions.enumerate_tail_classes(ex4)[0]}
    sa4 = regions.class_support(ex4, classes4["a"])
    assert eng4.top_finite_stage(sa4).ok
    assert eng4.uniform_stage(classes4["a"], sa4).ok
    assert not eng4.boundary_stage(sa4).ok
    sb4 = regions.class_support(ex4, classes4["b"])
    assert eng4.top_finite_stage(sb4).ok
    uni = eng4.uniform_stage(classes4["b"], sb4)
    assert not uni.ok
    assert uni.witness[0].canonical_id() == "r:a:0"

    eng3 = engine_for(ex3)
    cls3 = regions.enumerate_tail_classes(ex3)[0][0]
    supp3 = regions.class_support(ex3, cls3)
    assert supp3.contains(core("v0"))
    top3 = eng3.top_finite_stage(supp3)
    assert top3.ok
    assert [v.canonical_id() for v in top3.detail] == ["v:v0"]
    assert not eng3.uniform_stage(cls3, supp3).ok

    eng5 = engine_for(ex5)
    classes5 = {c.ray: c for c in regions.enumerate_tail_classes(ex5)[0]}
    sa5 = regions.class_support(ex5, classes5["a"])
    assert eng5.top_finite_stage(sa5).ok
    assert eng5.uniform_stage(classes5["a"], sa5).ok
    bnd5 = eng5.boundary_stage(sa5)
    assert bnd5.ok
    assert sorted(v.canonical_id() for v in bnd5.detail.vertices(ex5)) == [
        "r:b:0", "r:b:1"]
    sb5 = regions.class_support(ex5, classes5["b"])
    assert not eng5.top_finite_stage(sb5).ok


def test_classification_sets(ex1, ex2, ex3, ex4, ex5):
    assert engine_for(ex1).infinite_pred_set().is_empty
    assert engine_for(ex2).infinite_pred_set().ray_part("a").display("int") == "all"
    ip3 = engine_for(ex3).infinite_pred_set()
    assert ip3.is_empty
    fs3 = engine_for(ex3).fan_successor_set()
    assert fs3.contains(core("v0"))
    assert fs3.ray_part("b").display("nat") == "all"
    ip5 = engine_for(ex5).infinite_pred_set()
    assert ip5.ray_part("b").display("int") == "all"
    assert ip5.ray_part("a").is_empty
    assert engine_for(ex4).infinite_pred_set().is_empty


def test_class_equivalence(ex4):
    eng = engine_for(ex4)
    c_a5 = TailClass(ray="a", direction="+", stride=1, base_index=0,
                     start=ray("a", 5), cycle=("alpha",))
    c_a9 = TailClass(ray="a", direction="+", stride=1, base_index=0,
                     start=ray("a", 9), cycle=("alpha",))
    c_b2 = TailClass(ray="b", direction="+", stride=1, base_index=0,
                     start=ray("b", 2), cycle=("beta",))
    assert eng.classes_equivalent(c_a5, c_a9)
    assert not eng.classes_equivalent(c_a5, c_b2)


def test_stabilization_index_positive(corpus):
    for q in corpus.values():
        assert regions.stabilization_index(q) >= 1
