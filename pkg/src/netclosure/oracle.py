"""Brute-force reference implementations and the claim audit.

Nothing here touches :mod:`netclosure.kernels`: closure tables are rebuilt
from a membership matrix (``2**n x n``) straight from the definitions, so
the audit cross-checks the compiled path rather than reusing it.

:func:`audit` instantiates every claim of the closure calculus over all
small graphs and reports each instance where the claim and the definitional
computation disagree. Findings are data, not errors.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Union

import numpy as np

from .errors import DEFAULT_MAX_N, SizeLimitError, UsageError, check_size
from .formats import format_edgelist
from .system import NodeSet, System, canonical_key, iter_bits
from .transform import ContinuityVerdict, NodeMap, check_edge_deletion

_CHUNK = 1 << 15


# --------------------------------------------------------------------------
# definitional tables


def _membership(n: int, masks: np.ndarray) -> np.ndarray:
    return ((masks[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(bool)


def unions_of(rows: np.ndarray, masks: np.ndarray) -> np.ndarray:
    """OR of ``rows[i]`` over members ``i`` of each mask."""
    n = len(rows)
    masks = np.asarray(masks, dtype=np.int64)
    if n == 0:
        return np.zeros(masks.shape, dtype=np.int64)
    out = np.empty(masks.shape, dtype=np.int64)
    for lo in range(0, masks.size, _CHUNK):
        part = masks[lo : lo + _CHUNK]
        member = _membership(n, part)
        out[lo : lo + _CHUNK] = np.bitwise_or.reduce(np.where(member, rows, 0), axis=1)
    return out


def region_rows(s: System) -> np.ndarray:
    return np.array([s.out[i] | (1 << i) for i in range(s.n)], dtype=np.int64)


def closures_of(s: System, masks: np.ndarray) -> np.ndarray:
    """``{x : region(x) <= region(Y)}`` for each mask ``Y``."""
    rows = region_rows(s)
    reg = unions_of(rows, masks) if s.n else np.zeros(len(masks), dtype=np.int64)
    weights = np.int64(1) << np.arange(s.n, dtype=np.int64)
    out = np.empty(reg.shape, dtype=np.int64)
    for lo in range(0, reg.size, _CHUNK):
        part = reg[lo : lo + _CHUNK]
        inside = (rows[None, :] & ~part[:, None]) == 0
        out[lo : lo + _CHUNK] = (inside * weights).sum(axis=1)
    return out


def all_masks(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def closure_table(s: System, max_n: int = DEFAULT_MAX_N) -> np.ndarray:
    check_size(s.n, max_n)
    return closures_of(s, all_masks(s.n))


def region_table(s: System, max_n: int = DEFAULT_MAX_N) -> np.ndarray:
    check_size(s.n, max_n)
    return unions_of(region_rows(s), all_masks(s.n))


# --------------------------------------------------------------------------
# general set transformations


class TableTransform:
    """Arbitrary map from every subset of ``source`` to a subset of ``target``."""

    def __init__(self, source: System, target: System, table):
        table = np.asarray(table, dtype=np.int64)
        if table.shape != (1 << source.n,):
            raise UsageError("table must hold one entry per source subset")
        if np.any((table < 0) | (table >> target.n != 0)):
            raise UsageError("table entries must be target subsets")
        self.source = source
        self.target = target
        self.table = table

    @classmethod
    def from_function(cls, source, target, fn: Callable[[NodeSet], NodeSet], max_n=DEFAULT_MAX_N):
        check_size(source.n, max_n)
        table = [target.check(fn(NodeSet(source, m))).mask for m in range(1 << source.n)]
        return cls(source, target, table)

    @classmethod
    def from_nodemap(cls, f: NodeMap, max_n: int = DEFAULT_MAX_N) -> "TableTransform":
        check_size(f.source.n, max_n)
        rows = np.array([0 if j == -1 else 1 << j for j in f.images], dtype=np.int64)
        return cls(f.source, f.target, unions_of(rows, all_masks(f.source.n)))

    def with_values(self, values: dict) -> "TableTransform":
        """Copy with some entries replaced; keys and values are NodeSets."""
        table = self.table.copy()
        for y, img in values.items():
            table[self.source.check(y).mask] = self.target.check(img).mask
        return TableTransform(self.source, self.target, table)

    def __call__(self, y: NodeSet) -> NodeSet:
        return NodeSet(self.target, int(self.table[self.source.check(y).mask]))


def monotone_witness(t: TableTransform, max_n: int = 10) -> Optional[tuple[NodeSet, NodeSet]]:
    """First pair ``X <= Y`` (in mask order) with ``t(X) </= t(Y)``; checks all
    ``3**n`` nested pairs."""
    n = t.source.n
    check_size(n, max_n, "monotonicity check")
    masks = all_masks(n)
    tab = t.table
    for ylo in range(0, masks.size, 256):
        ys = masks[ylo : ylo + 256]
        nested = (masks[None, :] & ~ys[:, None]) == 0
        bad = nested & ((tab[None, :] & ~tab[ys][:, None]) != 0)
        hit = np.argwhere(bad)
        if hit.size:
            order = np.lexsort((hit[:, 1], hit[:, 0]))
            yi, xi = hit[order[0]]
            return NodeSet(t.source, int(masks[xi])), NodeSet(t.source, int(ys[yi]))
    return None


def is_monotone(t: Union[TableTransform, NodeMap], max_n: int = 10) -> bool:
    if isinstance(t, NodeMap):
        t = TableTransform.from_nodemap(t)
    return monotone_witness(t, max_n) is None


def oracle_continuous(
    f: Union[TableTransform, NodeMap], max_n: int = DEFAULT_MAX_N
) -> ContinuityVerdict:
    """Definitional continuity: ``f(closure(Y)) <= closure'(f(Y))`` for all ``Y``.

    For tables the verdict also reports monotonicity (when ``n <= 10``).
    """
    monotone = True
    if isinstance(f, NodeMap):
        t = TableTransform.from_nodemap(f, max_n)
    else:
        t = f
        check_size(t.source.n, max_n)
        if t.source.n <= 10:
            monotone = monotone_witness(t) is None
    src, dst, tab = t.source, t.target, t.table
    lhs = tab[closure_table(src, max_n)]
    rhs = closures_of(dst, tab)
    viol = lhs & ~rhs
    hits = np.flatnonzero(viol)
    if hits.size == 0:
        return ContinuityVerdict(True, monotone=monotone)

    def violates(m):
        return int(tab[closures_of(src, np.array([m]))[0]]) & ~int(
            closures_of(dst, tab[[m]])[0]
        )

    best = min((int(h) for h in hits), key=canonical_key)
    for i in list(iter_bits(best)):
        if violates(best & ~(1 << i)):
            best &= ~(1 << i)
    bad = violates(best)
    return ContinuityVerdict(
        False, NodeSet(src, best), dst.labels[(bad & -bad).bit_length() - 1], monotone
    )


def map_claim_violations(f: NodeMap, g: Optional[NodeMap] = None, max_n: int = 12) -> list[tuple[str, object]]:
    """Check the general transformation claims on one node map (and, given
    ``g``, on the composite ``f`` then ``g``), by table lookup.

    Returns ``(claim, witness)`` for every claim whose hypotheses hold but
    whose conclusion fails.
    """
    s, t = f.source, f.target
    check_size(s.n, max_n)
    check_size(t.n, max_n)
    masks = all_masks(s.n)
    img = TableTransform.from_nodemap(f, max_n).table
    Cs, Ct = closure_table(s, max_n), closure_table(t, max_n)
    out: list[tuple[str, object]] = []
    lab = lambda sys_, m: NodeSet(sys_, int(m)).labels()  # noqa: E731

    for i in range(s.n):
        y = 1 << i
        if img[y]:
            twins = [j for j in range(s.n) if j != i and img[1 << j] == img[y]]
            if twins:
                out.append(("node-map-distributivity", [s.labels[i], s.labels[twins[0]]]))
    meet = img[masks[:, None] & masks[None, :]] != (img[:, None] & img[None, :])
    join = img[masks[:, None] | masks[None, :]] != (img[:, None] | img[None, :])
    if meet.any() or join.any():
        a, b = np.argwhere(meet | join)[0]
        out.append(("node-map-distributivity", [lab(s, a), lab(s, b)]))

    cont = not np.any(img[Cs] & ~Ct[img])
    closed_t = np.flatnonzero(Ct == all_masks(t.n))
    surj = bool(np.isin(closed_t, img).all())
    if cont:
        closed_img = Ct[img] == img
        bad = np.flatnonzero(closed_img & (img[Cs] != img))
        if bad.size:
            out.append(("continuous-closed-image", lab(s, bad[0])))
        bad = np.flatnonzero(Ct[img] != Ct[img[Cs]])
        if bad.size:
            out.append(("equal-closures-equal-image-closures", lab(s, bad[0])))
        if surj:
            reach = img[masks[Cs == masks]]
            miss = closed_t[~np.isin(closed_t, reach)]
            if miss.size:
                out.append(("closed-preimage", lab(t, miss[0])))
    if g is not None:
        from .transform import compose, is_continuous, is_surjective

        h = compose(f, g)
        g_cont = is_continuous(g, max_n).continuous
        if cont and g_cont:
            v = is_continuous(h, max_n)
            if not v.continuous:
                out.append(("composition-preserves-continuity", v.witness.labels()))
        if g_cont and surj and is_surjective(g, max_n) and not is_surjective(h, max_n):
            out.append(("composition-preserves-surjectivity", None))
    return out


# --------------------------------------------------------------------------
# graph enumeration


def _pairs(n: int, symmetric: bool) -> list[tuple[int, int]]:
    if symmetric:
        return list(itertools.combinations(range(n), 2))
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def graph_from_code(n: int, code: int, symmetric: bool = True) -> System:
    out = [0] * n
    for b, (i, j) in enumerate(_pairs(n, symmetric)):
        if code >> b & 1:
            out[i] |= 1 << j
            if symmetric:
                out[j] |= 1 << i
    return System([f"v{i}" for i in range(n)], out)


def code_of(s: System, symmetric: bool = True) -> int:
    code = 0
    for b, (i, j) in enumerate(_pairs(s.n, symmetric)):
        if s.out[i] >> j & 1:
            code |= 1 << b
    return code


def enumerate_graphs(n: int, symmetric_only: bool = True) -> Iterator[System]:
    """Every labelled graph on ``v0..v(n-1)``, in edge-code order."""
    limit = 6 if symmetric_only else 4
    if n > limit:
        raise SizeLimitError(
            f"exhaustive {'symmetric' if symmetric_only else 'directed'} enumeration "
            f"is limited to n <= {limit}"
        )
    for code in range(1 << len(_pairs(n, symmetric_only))):
        yield graph_from_code(n, code, symmetric_only)


def random_system(n: int, p: float, seed: int, symmetric: bool = True) -> System:
    """Erdos-Renyi style graph with independent ties of probability ``p``."""
    rng = np.random.default_rng(seed)
    pairs = _pairs(n, symmetric)
    keep = rng.random(len(pairs)) < p
    code = sum(1 << b for b in np.flatnonzero(keep))
    return graph_from_code(n, code, symmetric)


def isomorphic(a: System, b: System) -> bool:
    if a.n != b.n or a.arc_count() != b.arc_count():
        return False
    deg_a = sorted(bin(m).count("1") for m in a.out)
    if deg_a != sorted(bin(m).count("1") for m in b.out):
        return False
    for perm in itertools.permutations(range(b.n)):
        if all(
            sum(1 << perm[j] for j in iter_bits(a.out[i])) == b.out[perm[i]] for i in range(a.n)
        ):
            return True
    return False


# --------------------------------------------------------------------------
# audit

CLAIMS = (
    "closure-axioms",
    "closure-order-matches-region-order",
    "node-in-closure-of-its-neighbors",
    "separation-four-overlaps",
    "node-map-distributivity",
    "composition-preserves-continuity",
    "continuous-closed-image",
    "equal-closures-equal-image-closures",
    "closed-preimage",
    "composition-preserves-surjectivity",
    "separation-preservation",
    "edge-deletion-criterion",
    "triadic-addition-continuity",
    "core-characterization",
    "twin-edge-no-change",
    "core-uniqueness",
)

DIRECTED_CLAIMS = CLAIMS[:4]


@dataclass
class AuditFinding:
    claim: str
    instance: dict
    expected: str
    observed: str
    witness: Optional[object] = None

    def as_dict(self) -> dict:
        return {
            "claim": self.claim,
            "instance": self.instance,
            "expected": self.expected,
            "observed": self.observed,
            "witness": self.witness,
        }


@dataclass
class AuditReport:
    max_n: int
    directed: bool
    instances: dict[str, int] = field(default_factory=dict)
    findings: list[AuditFinding] = field(default_factory=list)

    def by_claim(self, claim: str) -> list[AuditFinding]:
        return [f for f in self.findings if f.claim == claim]

    def counts(self) -> dict[str, int]:
        return {c: len(self.by_claim(c)) for c in self.instances}


class _Graph:
    """One enumerated graph with its definitional tables."""

    def __init__(self, n, code, symmetric, table_cache):
        self.n, self.code, self.symmetric = n, code, symmetric
        self.system = graph_from_code(n, code, symmetric)
        self._cache = table_cache
        self.masks = all_masks(n)
        self.rows = region_rows(self.system)
        self.region = unions_of(self.rows, self.masks)
        self.closure = table_cache(n, code)

    def instance(self, **params) -> dict:
        inst = {
            "n": self.n,
            "code": self.code,
            "symmetric": self.symmetric,
            "edges": format_edgelist(self.system).strip().splitlines()[self.n :],
        }
        inst.update(params)
        return inst

    def labels(self, mask) -> list[str]:
        return [f"v{i}" for i in iter_bits(int(mask))]


def _pair_bit(n: int, i: int, j: int) -> int:
    i, j = min(i, j), max(i, j)
    return list(itertools.combinations(range(n), 2)).index((i, j))


def _first_canonical(masks) -> Optional[int]:
    masks = [int(m) for m in masks]
    return min(masks, key=canonical_key) if masks else None


class _Auditor:
    def __init__(self, max_n, claims, directed, seed):
        self.report = AuditReport(max_n, directed)
        self.claims = claims
        self.seed = seed
        self._tables: dict[tuple, np.ndarray] = {}
        self._symmetric = True
        for c in claims:
            self.report.instances[c] = 0

    def table(self, n, code):
        key = (n, code, self._symmetric)
        tab = self._tables.get(key)
        if tab is None:
            tab = closure_table(graph_from_code(n, code, self._symmetric))
            self._tables[key] = tab
        return tab

    def want(self, claim):
        return claim in self.claims

    def count(self, claim, k=1):
        self.report.instances[claim] += k

    def find(self, claim, g, expected, observed, witness=None, **params):
        self.report.findings.append(
            AuditFinding(claim, g.instance(**params), expected, observed, witness)
        )

    # -- claims over a single closure table --------------------------------

    def closure_claims(self, g: _Graph):
        masks, C, R = g.masks, g.closure, g.region
        nested = (masks[:, None] & ~masks[None, :]) == 0  # [y, z]: y <= z
        if self.want("closure-axioms"):
            self.count("closure-axioms")
            problems = []
            if np.any(masks & ~C):
                problems.append(("extensive", int(np.flatnonzero(masks & ~C)[0])))
            bad = nested & ((C[:, None] & ~C[None, :]) != 0)
            if bad.any():
                y, z = np.argwhere(bad)[0]
                problems.append(("monotone", [int(y), int(z)]))
            if np.any(C[C] != C):
                problems.append(("idempotent", int(np.flatnonzero(C[C] != C)[0])))
            closed = masks[C == masks]
            meet = closed[:, None] & closed[None, :]
            if np.any(C[meet] != meet):
                problems.append(("intersection", 1))
            for axiom, w in problems:
                self.find("closure-axioms", g, "closure operator", f"{axiom} fails", w)
        if self.want("closure-order-matches-region-order"):
            self.count("closure-order-matches-region-order")
            c_le = (C[:, None] & ~C[None, :]) == 0
            r_le = (R[:, None] & ~R[None, :]) == 0
            bad = np.argwhere(c_le != r_le)
            if bad.size:
                x, y = bad[0]
                self.find(
                    "closure-order-matches-region-order", g,
                    "closure(X) <= closure(Y) iff region(X) <= region(Y)",
                    f"closure order {bool(c_le[x, y])}, region order {bool(r_le[x, y])}",
                    [g.labels(x), g.labels(y)],
                )
        if self.want("node-in-closure-of-its-neighbors"):
            for y in range(g.n):
                nb = g.system.out[y]
                if not nb:
                    continue
                self.count("node-in-closure-of-its-neighbors")
                sub, ok = nb, False
                while True:
                    if C[sub] >> y & 1:
                        ok = True
                        break
                    if sub == 0:
                        break
                    sub = (sub - 1) & nb
                if not ok:
                    self.find(
                        "node-in-closure-of-its-neighbors", g,
                        "some X <= nbhd(y) has y in closure(X)", "no such X", f"v{y}",
                    )
        if self.want("separation-four-overlaps"):
            self.count("separation-four-overlaps")
            N = R & ~masks
            sep = (R[:, None] & R[None, :]) == 0
            four = (
                ((masks[:, None] & masks[None, :]) == 0)
                & ((masks[:, None] & N[None, :]) == 0)
                & ((N[:, None] & masks[None, :]) == 0)
                & ((N[:, None] & N[None, :]) == 0)
            )
            bad = np.argwhere(sep != four)
            if bad.size:
                x, z = bad[0]
                self.find(
                    "separation-four-overlaps", g,
                    "separated iff all four overlaps empty",
                    f"separated={bool(sep[x, z])}, four-empty={bool(four[x, z])}",
                    [g.labels(x), g.labels(z)],
                )

    # -- transformation families ------------------------------------------

    def _maps(self, g: _Graph):
        """(name, target (n, code), image table) for single-edge deletions
        and node deletions of ``g``."""
        n = g.n
        out = []
        pairs = list(itertools.combinations(range(n), 2))
        for b, (i, j) in enumerate(pairs):
            if g.code >> b & 1:
                out.append((f"delete-edge v{i}--v{j}", (n, g.code & ~(1 << b)), g.masks))
        for v in range(n):
            keep = [i for i in range(n) if i != v]
            pos = {old: new for new, old in enumerate(keep)}
            code = 0
            for b, (i, j) in enumerate(pairs):
                if g.code >> b & 1 and v not in (i, j):
                    code |= 1 << _pair_bit(n - 1, pos[i], pos[j])
            rows = np.array([0 if i == v else 1 << pos[i] for i in range(n)], dtype=np.int64)
            out.append((f"delete-node v{v}", (n - 1, code), unions_of(rows, g.masks)))
        return out

    def _continuous(self, src_closure, img, dst_closure):
        bad = np.flatnonzero(img[src_closure] & ~dst_closure[img])
        return bad.size == 0, (int(bad[0]) if bad.size else None)

    def _surjective(self, img, dst_closure, dst_n):
        closed = np.flatnonzero(dst_closure == all_masks(dst_n))
        return bool(np.isin(closed, img).all())

    def transform_claims(self, g: _Graph):
        fam = ("node-map-distributivity", "composition-preserves-continuity",
               "continuous-closed-image", "equal-closures-equal-image-closures",
               "closed-preimage", "composition-preserves-surjectivity")
        if not any(self.want(c) for c in fam):
            return
        Cs = g.closure
        for name, (tn, tcode), img in self._maps(g):
            Ct = self.table(tn, tcode)
            cont, _ = self._continuous(Cs, img, Ct)
            surj = self._surjective(img, Ct, tn)
            if self.want("node-map-distributivity"):
                self.count("node-map-distributivity")
                m = g.masks
                meet_ok = img[m[:, None] & m[None, :]] == (img[:, None] & img[None, :])
                join_ok = img[m[:, None] | m[None, :]] == (img[:, None] | img[None, :])
                single = [int(img[1 << i]) for i in range(g.n) if img[1 << i]]
                atomistic = len(single) == len(set(single))
                if not (meet_ok.all() and join_ok.all() and atomistic):
                    self.find("node-map-distributivity", g,
                              "singleton images distinct; images distribute over meet and join",
                              "violated", None, map=name)
            if cont:
                if self.want("continuous-closed-image"):
                    self.count("continuous-closed-image")
                    closed_img = Ct[img] == img
                    bad = np.flatnonzero(closed_img & (img[Cs] != img))
                    if bad.size:
                        self.find("continuous-closed-image", g, "f(closure(Y)) = f(Y) when f(Y) closed",
                                  "differs", g.labels(bad[0]), map=name)
                if self.want("equal-closures-equal-image-closures"):
                    self.count("equal-closures-equal-image-closures")
                    bad = np.flatnonzero(Ct[img] != Ct[img[Cs]])
                    if bad.size:
                        self.find("equal-closures-equal-image-closures", g,
                                  "closure'(f(Y)) = closure'(f(closure(Y)))", "differs",
                                  g.labels(bad[0]), map=name)
                if surj and self.want("closed-preimage"):
                    self.count("closed-preimage")
                    closed_t = np.flatnonzero(Ct == all_masks(tn))
                    closed_s = g.masks[Cs == g.masks]
                    missing = closed_t[~np.isin(closed_t, img[closed_s])]
                    if missing.size:
                        self.find("closed-preimage", g, "closed sets have closed preimages",
                                  "missing", [f"v{i}" for i in iter_bits(int(missing[0]))], map=name)
            # compose with every continuous edge deletion of the target
            if not (self.want("composition-preserves-continuity")
                    or self.want("composition-preserves-surjectivity")):
                continue
            tpairs = list(itertools.combinations(range(tn), 2))
            for b, (i, j) in enumerate(tpairs):
                if not tcode >> b & 1:
                    continue
                Cu = self.table(tn, tcode & ~(1 << b))
                tmask = all_masks(tn)
                g_cont, _ = self._continuous(Ct, tmask, Cu)
                if not g_cont:
                    continue
                comp = img  # the second map is the identity on nodes
                c_cont, w = self._continuous(Cs, comp, Cu)
                label = f"{name}; delete-edge v{i}--v{j}"
                if cont and self.want("composition-preserves-continuity"):
                    self.count("composition-preserves-continuity")
                    if not c_cont:
                        self.find("composition-preserves-continuity", g, "continuous",
                                  "discontinuous", g.labels(w), map=label)
                if surj and self.want("composition-preserves-surjectivity"):
                    self.count("composition-preserves-surjectivity")
                    g_surj = self._surjective(tmask, Cu, tn)
                    if g_surj and not self._surjective(comp, Cu, tn):
                        self.find("composition-preserves-surjectivity", g, "surjective",
                                  "not surjective", None, map=label)

    # -- single-edge mutations ---------------------------------------------

    def _violation_witness(self, Cs, Ct):
        """Minimised first violating set for the identity map."""
        bad = np.flatnonzero(Cs & ~Ct)
        if not bad.size:
            return None
        best = _first_canonical(bad)
        for i in list(iter_bits(best)):
            smaller = best & ~(1 << i)
            if int(Cs[smaller]) & ~int(Ct[smaller]):
                best = smaller
        return best

    def mutation_claims(self, g: _Graph):
        n, s, C, R = g.n, g.system, g.closure, g.region
        pairs = list(itertools.combinations(range(n), 2))
        for b, (i, j) in enumerate(pairs):
            x, z = f"v{i}", f"v{j}"
            if g.code >> b & 1:
                Cd = self.table(n, g.code & ~(1 << b))
                if self.want("edge-deletion-criterion"):
                    self.count("edge-deletion-criterion")
                    fast = check_edge_deletion(s, x, z).verdict
                    w = self._violation_witness(C, Cd)
                    oracle_cont = w is None
                    if oracle_cont != (fast == "CONTINUOUS"):
                        self.find("edge-deletion-criterion", g, fast,
                                  "CONTINUOUS" if oracle_cont else "DISCONTINUOUS",
                                  None if w is None else g.labels(w), edge=[x, z])
                if self.want("twin-edge-no-change") and C[1 << i] == C[1 << j]:
                    self.count("twin-edge-no-change")
                    before = set(np.flatnonzero(C == g.masks).tolist())
                    after = set(np.flatnonzero(Cd == g.masks).tolist())
                    if before != after:
                        gained = sorted(after - before, key=canonical_key)
                        lost = sorted(before - after, key=canonical_key)
                        self.find("twin-edge-no-change", g, "closed sets unchanged by deleting the edge",
                                  f"{len(lost)} closed sets lost, {len(gained)} gained",
                                  {"lost": [g.labels(m) for m in lost[:3]],
                                   "gained": [g.labels(m) for m in gained[:3]]},
                                  edge=[x, z])
                continue
            Ca = self.table(n, g.code | (1 << b))
            common = s.out[i] & s.out[j]
            if self.want("separation-preservation"):
                if R[1 << i] & R[1 << j] == 0 and s.out[i] and s.out[j]:
                    self.count("separation-preservation")
                    w = self._violation_witness(C, Ca)
                    if w is None:
                        self.find("separation-preservation", g,
                                  "joining separated non-isolated nodes is discontinuous",
                                  "CONTINUOUS", None, edge=[x, z])
            if self.want("triadic-addition-continuity") and common:
                self.count("triadic-addition-continuity")
                w = self._violation_witness(C, Ca)
                if w is not None:
                    self.find("triadic-addition-continuity", g, "CONTINUOUS", "DISCONTINUOUS",
                              g.labels(w), edge=[x, z],
                              common=[f"v{k}" for k in iter_bits(common)])

    # -- reduction ----------------------------------------------------------

    def reduction_claims(self, g: _Graph):
        from .reduction import characterization_check, reduce

        s = g.system
        if self.want("core-characterization"):
            self.count("core-characterization")
            rep = characterization_check(s)
            if rep.status != "PASS":
                self.find("core-characterization", g, "core = cycle vertices + bridging paths",
                          rep.status, {"core": rep.core_nodes,
                                       "only_in_core": rep.only_in_core,
                                       "only_predicted": rep.only_predicted,
                                       "residual": rep.residual})
        if self.want("core-uniqueness"):
            self.count("core-uniqueness")
            base = reduce(s)
            rng = random.Random(self.seed * 1_000_003 + g.n * 65_537 + g.code)
            for k in range(10):
                other = reduce(s, rng)
                if not isomorphic(base.core, other.core):
                    self.find("core-uniqueness", g, "cores isomorphic under any deletion order",
                              "non-isomorphic cores",
                              {"default": base.core_nodes.labels(),
                               "random": other.core_nodes.labels(), "order": k})
                    break

    # -- driver --------------------------------------------------------------

    def run(self, ns, symmetric, claims, progress=None):
        self._symmetric = symmetric
        for n in ns:
            for g_sys in enumerate_graphs(n, symmetric):
                code = code_of(g_sys, symmetric)
                g = _Graph(n, code, symmetric, self.table)
                self.closure_claims(g)
                if symmetric:
                    self.transform_claims(g)
                    self.mutation_claims(g)
                    self.reduction_claims(g)
            if progress:
                progress(n)
            self._tables = {k: v for k, v in self._tables.items() if k[0] >= n}


def audit(
    max_n: int,
    claims=None,
    directed: bool = False,
    seed: int = 0,
    progress=None,
) -> AuditReport:
    """Exhaustively test each claim on every symmetric graph with ``1..max_n``
    nodes (and, with ``directed=True``, the relation-level claims on every
    directed graph with up to ``min(max_n, 4)`` nodes).
    """
    if max_n > 6:
        raise SizeLimitError("audit is limited to max_n <= 6")
    if max_n < 1:
        raise UsageError("max_n must be at least 1")
    claims = tuple(CLAIMS if claims is None else claims)
    unknown = [c for c in claims if c not in CLAIMS]
    if unknown:
        raise UsageError(f"unknown claim {unknown[0]!r}")
    aud = _Auditor(max_n, claims, directed, seed)
    aud.run(range(1, max_n + 1), True, claims, progress)
    if directed:
        sym_findings = aud.report.findings
        aud.report.findings = []
        aud.claims = tuple(c for c in claims if c in DIRECTED_CLAIMS)
        aud.run(range(1, min(max_n, 4) + 1), False, aud.claims, progress)
        aud.report.findings = sym_findings + aud.report.findings
    order = {c: k for k, c in enumerate(CLAIMS)}
    aud.report.findings.sort(
        key=lambda f: (order[f.claim], not f.instance["symmetric"], f.instance["n"], f.instance["code"])
    )
    return aud.report
