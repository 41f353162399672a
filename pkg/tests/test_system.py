import pytest
from hypothesis import given

from netclosure import System, UsageError
from netclosure.system import canonical_key, iter_bits, popcount, valid_label

from conftest import systems


def test_bit_helpers():
    assert list(iter_bits(0b10110)) == [1, 2, 4]
    assert popcount(0b10110) == 3
    assert sorted([0b110, 0b001, 0b011, 0b000], key=canonical_key) == [0, 1, 3, 6]


@pytest.mark.parametrize("bad", ["", "a b", "a#b", "a,b", "--", "->", "=>", "!", "a\tb"])
def test_invalid_labels(bad):
    assert not valid_label(bad)


def test_nodeset_algebra(F1):
    x, y = F1.nodeset(["a", "b"]), F1.nodeset(["b", "c"])
    assert (x | y).labels() == ["a", "b", "c"]
    assert (x & y).labels() == ["b"]
    assert (x - y).labels() == ["a"]
    assert x & y <= x and not x <= y
    assert repr(x) == "{a,b}"
    assert "a" in x and "c" not in x
    assert len(F1.full()) == 9 and not F1.none()


def test_string_is_one_label():
    s = System.from_edges(["ab", "a", "b"], [], [])
    assert s.nodeset("ab").labels() == ["ab"]


def test_foreign_sets_rejected(F1, F2):
    with pytest.raises(UsageError):
        F1.nodeset(["a"]) | F2.nodeset(["a"])
    with pytest.raises(UsageError, match="zz"):
        F1.nodeset(["zz"])


def test_edge_queries(F1):
    assert F1.has_edge("a", "b") and F1.has_arc("a", "c") and not F1.has_arc("c", "a")
    assert F1.arc_count() == 20
    assert ("a", "c") in F1.asymmetric_arcs() and ("h", "g") in F1.asymmetric_arcs()
    assert len(F1.symmetric_edges()) == 9
    assert not F1.is_symmetric()


def test_mutations(F1):
    s = F1.without_edge("a", "b")
    assert not s.has_arc("a", "b") and not s.has_arc("b", "a")
    assert s.with_edge("a", "b") == F1
    with pytest.raises(UsageError):
        F1.with_edge("a", "b")
    with pytest.raises(UsageError):
        F1.without_edge("a", "i")
    assert F1.without_node("a").labels == tuple("bcdefghi")
    assert F1.symmetrized().has_edge("a", "c")


@given(systems())
def test_digest_is_label_and_order_sensitive(s):
    t = System(s.labels, s.out)
    assert s == t and s.digest() == t.digest() and hash(s) == hash(t)
