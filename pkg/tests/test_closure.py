import numpy as np
import pytest
from hypothesis import given

from netclosure import (
    closure,
    closure_table,
    enumerate_closed_sets,
    generators,
    is_closed,
    neighborhood,
    oracle,
    region,
    verify_closure_axioms,
)
from netclosure.errors import SizeLimitError
from netclosure.system import System

from conftest import system_and_sets, systems


def lab(ns):
    return set(ns.labels())


@pytest.mark.parametrize(
    "node, nbhd, reg, clo",
    [
        ("a", "bc", "abc", "a"),
        ("b", "acde", "abcde", "ab"),
        ("c", "bf", "bcf", "c"),
        ("e", "bgh", "bdegh" if False else "begh", "eh"),
        ("f", "ci", "cfi", "fi"),
        ("g", "de", "deg", "g"),
        ("h", "eg", "egh", "h"),
    ],
)
def test_singletons_on_F1(F1, node, nbhd, reg, clo):
    y = F1.nodeset([node])
    assert lab(neighborhood(F1, y)) == set(nbhd)
    assert lab(region(F1, y)) == set(reg)
    assert lab(closure(F1, y)) == set(clo)


def test_empty_set_is_closed(F1):
    assert closure(F1, F1.none()) == F1.none()
    assert is_closed(F1, F1.full())


@given(system_and_sets(k=2))
def test_axioms_on_random_pairs(args):
    s, y, z = args
    cy, cz = closure(s, y), closure(s, z)
    assert y <= cy
    assert closure(s, cy) == cy
    if y <= z:
        assert cy <= cz
    meet = cy & cz
    assert closure(s, meet) == meet
    # closure order mirrors region order
    assert (cy <= cz) == (region(s, y) <= region(s, z))


@given(systems(max_n=8))
def test_table_matches_pointwise(s):
    tab = closure_table(s)
    for m in range(1 << s.n):
        assert int(tab[m]) == closure(s, s.from_mask(m)).mask


@given(systems(max_n=7))
def test_verify_axioms_exhaustive(s):
    rep = verify_closure_axioms(s)
    assert rep.passed and rep.mode == "exhaustive"


def test_verify_axioms_sampled_mode():
    s = oracle.random_system(24, 0.2, seed=1)
    rep = verify_closure_axioms(s, max_n=10, samples=300)
    assert rep.mode == "sampled" and rep.passed


def test_verify_axioms_catches_bad_operators(F1):
    shrink = verify_closure_axioms(F1, operator=lambda y: F1.none())
    assert shrink.failures() == ["extensive"]
    # extensive and idempotent, but not monotone
    def flip(y):
        return F1.full() if len(y) == 1 else y
    rep = verify_closure_axioms(F1, operator=flip)
    assert "monotone" in rep.failures()
    sub, sup = rep.checks["monotone"].witness
    assert sub <= sup


def test_closed_sets_family():
    from netclosure import fixtures

    dst = fixtures.load("CX1_dst")
    fam = enumerate_closed_sets(dst)
    assert [c.labels() for c in fam] == [[], ["x'", "z'"]]
    assert dst.none() in fam and len(fam) == 2


@given(systems(max_n=7))
def test_closed_sets_match_table(s):
    tab = oracle.closure_table(s)
    want = sorted(np.flatnonzero(tab == np.arange(1 << s.n)).tolist())
    assert sorted(enumerate_closed_sets(s).masks()) == want


def test_generators_on_F1(F1):
    assert [g.labels() for g in generators(F1, F1.nodeset(["a", "b"]))] == [["b"]]
    assert [g.labels() for g in generators(F1, F1.nodeset(["e", "h"]))] == [["e"]]


@given(system_and_sets(k=1, max_n=6))
def test_generators_are_minimal(args):
    s, y = args
    cy = closure(s, y)
    gens = generators(s, y)
    assert gens
    for g in gens:
        assert g <= y and closure(s, g) == cy
        for v in g.labels():
            assert closure(s, g - s.nodeset([v])) != cy


def test_size_guard():
    s = System([f"v{i}" for i in range(21)], [0] * 21)
    with pytest.raises(SizeLimitError):
        closure_table(s)
    with pytest.raises(SizeLimitError):
        closure_table(s, max_n=40)
