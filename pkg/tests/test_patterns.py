"""Symbolic index sets and support descriptions."""

import pytest

from fpquiver.patterns import (
    Finite,
    IndexSet,
    Infinite,
    SupportDescription,
    TailWitness,
)
from fpquiver.qdl import core, ray


def test_finite_set_basics():
    s = IndexSet.of([3, 1, 3])
    assert s.display("int") == "{1, 3}"
    assert s.shape("int") == "finite"
    assert list(s.elements()) == [1, 3]
    assert s.size() == 2
    assert s.min_element() == 1
    assert s.max_element() == 3
    assert s.contains(3)
    assert not s.contains(2)


def test_empty_set():
    e = IndexSet.empty()
    assert e.is_empty
    assert e.shape("int") == "empty"
    assert e.size() == 0


def test_tails():
    u = IndexSet.up_from(4)
    assert u.display("int") == "i >= 4"
    assert u.shape("int") == "up"
    assert u.contains(4) and u.contains(100) and not u.contains(3)
    assert u.size() is None
    d = IndexSet.down_from(-1)
    assert d.display("int") == "i <= -1"
    assert d.shape("int") == "down"
    assert u.intersect(d).is_empty


def test_up_tail_is_cofinite_on_nat():
    u = IndexSet.up_from(4)
    assert u.shape("nat") == "cofinite"
    assert u.display("nat") == "all except {0, 1, 2, 3}"


def test_domain_sets():
    assert IndexSet.domain_set("nat").shape("nat") == "all"
    assert IndexSet.domain_set("int").display("int") == "all"


def test_union_difference():
    nat = IndexSet.domain_set("nat")
    cof = nat.difference(IndexSet.of([0, 2]))
    assert cof.shape("nat") == "cofinite"
    assert cof.display("nat") == "all except {0, 2}"
    assert not cof.contains(0)
    assert cof.contains(1)
    mix = IndexSet.of([0]).union(IndexSet.up_from(4))
    assert mix.display("int") == "{0} | i >= 4"
    assert mix.contains(0) and mix.contains(4) and not mix.contains(2)
    # two opposite tails leave a finite gap: cofinite
    both = IndexSet.up_from(5).union(IndexSet.down_from(-5))
    assert both.shape("int") == "cofinite"


def test_strided_tail():
    s = IndexSet.up_from(1, 2)
    assert s.contains(1) and s.contains(3)
    assert not s.contains(2)
    assert "mod 2" in s.display("int")


def test_shift():
    assert IndexSet.of([1, 2]).shift(3).display("int") == "{4, 5}"
    assert IndexSet.up_from(0).shift(-2).contains(-2)


def test_set_algebra_against_enumeration():
    window = range(-20, 21)
    a = IndexSet.of([-3, 0, 5]).union(IndexSet.up_from(7, 3))
    b = IndexSet.down_from(2)
    for s, t, op in (
        (a, b, "union"),
        (a, b, "intersect"),
        (a, b, "difference"),
        (b, a, "difference"),
    ):
        got = getattr(s, op)(t)
        for i in window:
            lhs = got.contains(i)
            if op == "union":
                rhs = s.contains(i) or t.contains(i)
            elif op == "intersect":
                rhs = s.contains(i) and t.contains(i)
            else:
                rhs = s.contains(i) and not t.contains(i)
            assert lhs == rhs, (op, i)


def test_support_description_finite(ex3):
    s = SupportDescription.build(
        cores=("v0",), parts={"b": IndexSet.of([0, 1])}
    )
    assert s.summary(ex3) == "finite {v:v0, r:b:0, r:b:1}"
    assert s.cardinality(ex3) == Finite(3)
    assert [v.canonical_id() for v in s.vertices(ex3)] == [
        "v:v0", "r:b:0", "r:b:1"]
    assert s.contains(core("v0"))
    assert not s.contains(ray("b", 2))
    assert s.display_lines(ex3) == ["core v0", "ray b: {0, 1}"]


def test_support_description_infinite(ex2):
    s = SupportDescription.build(parts={"a": IndexSet.down_from(0)})
    assert s.summary(ex2) == "infinite (ray a, i <= 0)"
    card = s.cardinality(ex2)
    assert isinstance(card, Infinite)
    assert card.witness == TailWitness(ray="a", direction="-", start=0,
                                       stride=1)
    with pytest.raises(ValueError):
        s.vertices(ex2)


def test_support_description_everything(ex2):
    ev = SupportDescription.everything(ex2)
    assert ev.summary(ex2) == "infinite (ray a, all)"
    assert ev.contains(ray("a", -100))


def test_support_algebra(ex3):
    s = SupportDescription.build(cores=("v0",),
                                 parts={"b": IndexSet.of([0, 1])})
    t = SupportDescription.build(parts={"b": IndexSet.of([1, 2])})
    u = s.union(t)
    assert u.contains(ray("b", 2)) and u.contains(core("v0"))
    i = s.intersect(t)
    assert i.summary(ex3) == "finite {r:b:1}"
    d = s.difference(t)
    assert d.contains(ray("b", 0)) and not d.contains(ray("b", 1))


def test_cardinality_flags():
    assert Finite(2).is_finite
    assert not Infinite(None).is_finite
    assert Finite(0) == Finite(0)
