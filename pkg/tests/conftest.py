"""Shared fixtures: the bundled example quivers."""

import pathlib

import pytest

from fpquiver.qdl import parse

FIXTURE_DIR = pathlib.Path(__file__).parent / "fixtures"
GOLDEN_DIR = pathlib.Path(__file__).parent / "golden"


def load_quiver(name):
    """Parse one of the bundled .quiver description files."""
    text = (FIXTURE_DIR / f"{name}.quiver").read_text(encoding="utf-8")
    return parse(text)


@pytest.fixture(scope="session")
def ex1():
    """One nat ray a[0] -> a[1] -> ..."""
    return load_quiver("ex1")


@pytest.fixture(scope="session")
def ex2():
    """One int ray, arrows upward for all i."""
    return load_quiver("ex2")


@pytest.fixture(scope="session")
def ex3():
    """A core vertex fanning into every vertex of a nat ray."""
    return load_quiver("ex3")


@pytest.fixture(scope="session")
def ex4():
    """Two nat rays joined by a translation family (a ladder)."""
    return load_quiver("ex4")


@pytest.fixture(scope="session")
def ex5():
    """A nat ray and an int ray joined by two single arrows."""
    return load_quiver("ex5")


@pytest.fixture(scope="session")
def corpus(ex1, ex2, ex3, ex4, ex5):
    return {"ex1": ex1, "ex2": ex2, "ex3": ex3, "ex4": ex4, "ex5": ex5}
