import pytest

from netclosure import NodeMap, SizeLimitError, UsageError, fixtures
from netclosure.oracle import (
    CLAIMS,
    TableTransform,
    audit,
    code_of,
    enumerate_graphs,
    graph_from_code,
    is_monotone,
    isomorphic,
    map_claim_violations,
    monotone_witness,
    oracle_continuous,
    random_system,
)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 8), (4, 64), (5, 1024)])
def test_symmetric_enumeration_counts(n, count):
    assert sum(1 for _ in enumerate_graphs(n)) == count


def test_directed_enumeration_count():
    assert sum(1 for _ in enumerate_graphs(3, symmetric_only=False)) == 64


def test_enumeration_guard():
    with pytest.raises(SizeLimitError):
        next(enumerate_graphs(7))
    with pytest.raises(SizeLimitError):
        next(enumerate_graphs(5, symmetric_only=False))


def test_codes_round_trip():
    for g in enumerate_graphs(4):
        assert graph_from_code(4, code_of(g)) == g


def test_random_system_is_seeded():
    assert random_system(10, 0.3, 7) == random_system(10, 0.3, 7)
    assert random_system(10, 0.3, 7) != random_system(10, 0.3, 8)


def test_isomorphic():
    a = fixtures.load("C4")
    b = graph_from_code(4, code_of(a))
    assert isomorphic(a, b)
    assert isomorphic(a, fixtures.load("DIAMOND"))
    assert not isomorphic(a, fixtures.load("DIAMOND_PLUS"))


def test_cx1_table_transform():
    f = fixtures.cx1()
    t = TableTransform.from_nodemap(f)
    v = oracle_continuous(t)
    assert v.continuous and v.monotone and is_monotone(t)


def test_constructed_monotonicity_violation():
    f = fixtures.cx1()
    s, d = f.source, f.target
    t = TableTransform.from_nodemap(f).with_values(
        {s.nodeset(["x"]): d.nodeset(["x'", "z'"]), s.nodeset(["x", "z"]): d.nodeset(["x'"])}
    )
    sub, sup = monotone_witness(t)
    assert sub <= sup and not t(sub) <= t(sup)
    assert oracle_continuous(t).monotone is False


def test_table_validation():
    f = fixtures.cx1()
    with pytest.raises(UsageError):
        TableTransform(f.source, f.target, [0, 1])
    with pytest.raises(UsageError):
        TableTransform(f.source, f.target, [0, 1, 2, 8])


def test_F1_edge_deletion_witness(F1):
    v = oracle_continuous(NodeMap.identity(F1, F1.without_edge("a", "b")))
    assert not v.continuous and v.witness.labels() == ["b"]


def test_map_claims_on_fixtures(F1):
    assert map_claim_violations(fixtures.cx1()) == []
    small = F1.without_node("i")
    assert map_claim_violations(NodeMap.identity(F1, small), NodeMap.identity(small)) == []


def test_audit_small_is_deterministic():
    a, b = audit(3), audit(3)
    assert [f.as_dict() for f in a.findings] == [f.as_dict() for f in b.findings]
    assert set(a.instances) == set(CLAIMS)


@pytest.fixture(scope="module")
def audit4():
    return audit(4)


@pytest.mark.parametrize(
    "claim",
    [
        "closure-axioms",
        "closure-order-matches-region-order",
        "node-in-closure-of-its-neighbors",
        "separation-four-overlaps",
        "node-map-distributivity",
        "continuous-closed-image",
        "equal-closures-equal-image-closures",
        "closed-preimage",
        "composition-preserves-surjectivity",
        "separation-preservation",
        "core-uniqueness",
    ],
)
def test_audit_claims_that_hold(audit4, claim):
    assert audit4.instances[claim] > 0
    assert audit4.by_claim(claim) == []


def test_composition_claims_at_five():
    claims = ["composition-preserves-continuity", "composition-preserves-surjectivity"]
    rep = audit(5, claims=claims)
    assert all(rep.instances[c] > 0 for c in claims)
    assert rep.findings == []


def test_audit_deletion_criterion_findings(audit4):
    found = audit4.by_claim("edge-deletion-criterion")
    assert len(found) == 55
    # diamond plus diagonal, labelled v0=x, v1=y1, v2=y2, v3=z
    want = ["v0 -- v1", "v0 -- v2", "v0 -- v3", "v1 -- v3", "v2 -- v3"]
    hit = [f for f in found if f.instance["edges"] == want and f.instance["edge"] == ["v0", "v3"]]
    assert len(hit) == 1
    assert hit[0].expected == "CONTINUOUS" and hit[0].observed == "DISCONTINUOUS"
    assert hit[0].witness == ["v0"]


def test_audit_triadic_findings(audit4):
    found = audit4.by_claim("triadic-addition-continuity")
    assert len(found) == 24
    # triangle v0 v1 v2 with pendant v2 -- v3, joining v1 and v3
    edges = ["v0 -- v1", "v0 -- v2", "v1 -- v2", "v2 -- v3"]
    assert any(f.instance["edges"] == edges and f.instance["edge"] == ["v1", "v3"] for f in found)


def test_audit_twin_edges_always_change_closed_sets(audit4):
    assert audit4.instances["twin-edge-no-change"] == len(audit4.by_claim("twin-edge-no-change"))


def test_directed_audit_finds_neighbour_generation_gap():
    rep = audit(3, claims=["node-in-closure-of-its-neighbors"], directed=True)
    found = rep.by_claim("node-in-closure-of-its-neighbors")
    assert found and all(not f.instance["symmetric"] for f in found)


def test_audit_guards():
    with pytest.raises(SizeLimitError):
        audit(7)
    with pytest.raises(UsageError):
        audit(3, claims=["no-such-claim"])
