import pytest
from hypothesis import given, strategies as st

from netclosure import (
    NodeMap,
    UsageError,
    apply,
    check_edge_addition,
    check_edge_deletion,
    closure,
    compose,
    fixtures,
    is_continuous,
    is_surjective,
    triadic_candidates,
)
from netclosure.oracle import oracle_continuous
from netclosure.transform import EdgeMutation, mutate

from conftest import systems


@st.composite
def node_maps(draw, max_n=6):
    s = draw(systems(max_n=max_n))
    t = draw(systems(min_n=s.n, max_n=s.n + 1))
    targets = draw(st.permutations(range(t.n)))
    dropped = draw(st.sets(st.integers(0, s.n - 1)))
    return NodeMap(s, t, [-1 if i in dropped else targets[i] for i in range(s.n)])


def test_nodemap_validation(F1, F2):
    with pytest.raises(UsageError):
        NodeMap(F1, F2, [0] * 9)  # not injective
    with pytest.raises(UsageError):
        NodeMap(F1, F2, [0, 1])
    with pytest.raises(UsageError):
        NodeMap(F1, F2, list(range(8)) + [9])
    f = NodeMap.identity(F1, F2)
    assert f.image("a") == "a" and f.as_dict()["i"] == "i"


def test_identity_drops_missing_labels(F1):
    small = F1.without_node("a")
    f = NodeMap.identity(F1, small)
    assert f.image("a") is None
    assert apply(f, F1.nodeset(["a", "b"])).labels() == ["b"]


@given(node_maps())
def test_fast_continuity_matches_oracle(f):
    fast, ref = is_continuous(f), oracle_continuous(f)
    assert fast.continuous == ref.continuous
    if not fast.continuous:
        assert fast.witness == ref.witness
        y = fast.witness
        assert not apply(f, closure(f.source, y)) <= closure(f.target, apply(f, y))


@given(node_maps())
def test_witness_is_locally_minimal(f):
    v = is_continuous(f)
    if v.continuous:
        return
    for lab in v.witness.labels():
        y = v.witness - f.source.nodeset([lab])
        assert apply(f, closure(f.source, y)) <= closure(f.target, apply(f, y))


@given(node_maps(max_n=5), st.data())
def test_composition_of_continuous_maps(f, data):
    t = f.target
    u = data.draw(systems(min_n=t.n, max_n=t.n))
    g = NodeMap(t, u, data.draw(st.permutations(range(u.n))))
    h = compose(f, g)
    if is_continuous(f) and is_continuous(g):
        assert is_continuous(h)
    if is_continuous(g) and is_surjective(f) and is_surjective(g):
        assert is_surjective(h)


def test_compose_checks_systems(F1, F2):
    with pytest.raises(UsageError):
        compose(NodeMap.identity(F1), NodeMap.identity(F2))


def test_cx1_continuous_and_surjective():
    f = fixtures.cx1()
    assert is_continuous(f) and is_surjective(f)


def test_identity_F1_to_F2_discontinuous(F1, F2):
    v = is_continuous(NodeMap.identity(F1, F2))
    assert not v.continuous and v.witness.labels() == ["e"]


def test_mutation_helper(F1):
    f = mutate(F1, EdgeMutation("DELETE", ("a", "b")))
    assert not f.target.has_arc("a", "b")
    with pytest.raises(UsageError):
        EdgeMutation("SPLIT", ("a", "b")).apply_to(F1)


# -- the structural deletion criterion ---------------------------------------


@pytest.mark.parametrize(
    "edge, verdict, witness",
    [(("a", "b"), "DISCONTINUOUS_A", ["b"]), (("d", "g"), "DISCONTINUOUS_B", ["a", "g"])],
)
def test_deletion_criterion_on_F1(F1, edge, verdict, witness):
    v = check_edge_deletion(F1, *edge, oracle=True)
    assert v.verdict == verdict
    assert v.oracle_continuous is False and v.agreement
    assert v.oracle_witness == witness


def test_deletion_on_cycle_reports_the_cycle(F1):
    v = check_edge_deletion(F1, "d", "g")
    assert v.cycle == ["d", "g", "e", "b"]


def test_deletion_criterion_misses_third_node_closure(F1):
    # deleting b -- c removes c from b's region, so a (whose region holds c
    # via a -> c) drops out of closure({b}); neither clause sees this
    v = check_edge_deletion(F1, "b", "c", oracle=True)
    assert v.verdict == "CONTINUOUS"
    assert v.oracle_continuous is False and v.oracle_witness == ["b"]
    assert v.agreement is False


@pytest.mark.parametrize("edge", [("c0", "c1"), ("c1", "c2"), ("c2", "c3"), ("c0", "c3")])
def test_every_C4_edge(edge):
    v = check_edge_deletion(fixtures.load("C4"), *edge, oracle=True)
    assert v.verdict == "DISCONTINUOUS_B" and v.agreement


def test_diamond_plus_diagonal():
    v = check_edge_deletion(fixtures.load("DIAMOND_PLUS"), "x", "z", oracle=True)
    assert v.verdict == "CONTINUOUS"
    assert v.oracle_continuous is False and v.oracle_witness == ["x"]


def test_deletion_needs_a_symmetric_edge(F1):
    with pytest.raises(UsageError):
        check_edge_deletion(F1, "a", "c")


# -- triadic additions --------------------------------------------------------


def test_triangle_plus_pendant():
    v = check_edge_addition(fixtures.load("GT"), "x", "z")
    assert v.claim_applies and v.common_neighbors == ["y"]
    assert v.oracle_continuous is False and v.oracle_witness == ["p"]
    assert v.agreement == "MISMATCH"


def test_addition_errors(F1):
    with pytest.raises(UsageError):
        check_edge_addition(F1, "a", "b")
    with pytest.raises(UsageError):
        check_edge_addition(F1, "a", "a")
    assert check_edge_addition(F1, "a", "i", oracle=False).agreement == "NOT_APPLICABLE"


def test_triadic_candidates():
    assert triadic_candidates(fixtures.load("GT")) == [("p", "z"), ("x", "z")]
