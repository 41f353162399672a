"""Neighbourhood, dominated region and neighbourhood closure.

For a node set ``Y``::

    neighborhood(Y) = {z not in Y : some y in Y has an arc y -> z}
    region(Y)       = Y | neighborhood(Y)
    closure(Y)      = {x : region({x}) <= region(Y)}

Single evaluations work on Python ints and have no size limit. Whole-family
questions go through :func:`closure_table`, which fills a ``2**n`` table with
the compiled kernels.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

import numpy as np

from . import kernels
from .errors import DEFAULT_MAX_N, check_size
from .system import NodeSet, System, canonical_key, iter_bits

_PAIR_BUDGET = 1 << 24


def _region_mask(s: System, mask: int) -> int:
    r = mask
    for i in iter_bits(mask):
        r |= s.out[i]
    return r


def _closure_mask(s: System, mask: int) -> int:
    r = _region_mask(s, mask)
    c = 0
    for x in range(s.n):
        if s.region_mask(x) & ~r == 0:
            c |= 1 << x
    return c


def neighborhood(s: System, y: NodeSet) -> NodeSet:
    s.check(y)
    return NodeSet(s, _region_mask(s, y.mask) & ~y.mask)


def region(s: System, y: NodeSet) -> NodeSet:
    s.check(y)
    return NodeSet(s, _region_mask(s, y.mask))


def closure(s: System, y: NodeSet) -> NodeSet:
    s.check(y)
    return NodeSet(s, _closure_mask(s, y.mask))


def is_closed(s: System, y: NodeSet) -> bool:
    s.check(y)
    return _closure_mask(s, y.mask) == y.mask


def closure_table(s: System, max_n: int = DEFAULT_MAX_N) -> np.ndarray:
    """``table[m]`` is the closure mask of the subset with bitmask ``m``."""
    check_size(s.n, max_n)
    return kernels.all_closures(s.region_rows(), s.n)


@dataclass(frozen=True)
class ClosedSetFamily:
    """Closed sets in canonical order (cardinality, then member indices)."""

    system: System
    sets: tuple[NodeSet, ...]

    def __iter__(self) -> Iterator[NodeSet]:
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)

    def __getitem__(self, k):
        return self.sets[k]

    def __contains__(self, y):
        return any(y == f for f in self.sets)

    def masks(self) -> list[int]:
        return [f.mask for f in self.sets]


def _family(s: System, table: np.ndarray) -> ClosedSetFamily:
    masks = sorted({int(m) for m in np.unique(table)}, key=canonical_key)
    return ClosedSetFamily(s, tuple(NodeSet(s, m) for m in masks))


def enumerate_closed_sets(s: System, max_n: int = DEFAULT_MAX_N) -> ClosedSetFamily:
    return _family(s, closure_table(s, max_n))


def generators(s: System, y: NodeSet, max_n: int = DEFAULT_MAX_N) -> list[NodeSet]:
    """All inclusion-minimal ``X <= Y`` with ``closure(X) == closure(Y)``.

    Because closure is monotone, ``X`` is minimal exactly when removing any
    single member changes its closure.
    """
    s.check(y)
    check_size(len(y), max_n, "generator search set")
    members = y.indices()
    target = _closure_mask(s, y.mask)
    found = []
    for bits in range(1 << len(members)):
        x = 0
        for k, i in enumerate(members):
            if bits >> k & 1:
                x |= 1 << i
        if _closure_mask(s, x) != target:
            continue
        if all(_closure_mask(s, x & ~(1 << i)) != target for i in iter_bits(x)):
            found.append(x)
    return [NodeSet(s, m) for m in sorted(found, key=canonical_key)]


# --------------------------------------------------------------------------
# axiom verification


@dataclass
class AxiomResult:
    passed: bool = True
    witness: Optional[tuple] = None  # (Y, Z) node sets; Z is None for one-set axioms


@dataclass
class AxiomReport:
    n: int
    mode: str  # "exhaustive" | "sampled"
    checks: dict[str, AxiomResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, r in self.checks.items() if not r.passed]


AXIOMS = ("extensive", "monotone", "idempotent", "intersection_closed")


def verify_closure_axioms(
    s: System,
    max_n: int = DEFAULT_MAX_N,
    *,
    operator: Optional[Callable[[NodeSet], NodeSet]] = None,
    samples: int = 2000,
    seed: int = 0,
) -> AxiomReport:
    """Check extensivity, monotonicity, idempotence and Moore-family closure.

    ``operator`` defaults to the neighbourhood closure of ``s``; any set
    operator over ``s`` may be supplied instead. Ground sets up to ``max_n``
    nodes are checked exhaustively (monotonicity over covering pairs
    ``Y - {i} <= Y``, which by transitivity covers every ``Y <= Z``); larger
    ones are sampled with a seeded generator.
    """
    if s.n <= max_n:
        check_size(s.n, max_n)
        return _verify_exhaustive(s, operator)
    return _verify_sampled(s, operator, samples, seed)


def _op_table(s: System, operator) -> np.ndarray:
    if operator is None:
        return closure_table(s, s.n)
    table = np.empty(1 << s.n, dtype=np.int64)
    for m in range(1 << s.n):
        table[m] = s.check(operator(NodeSet(s, m))).mask
    return table


def _verify_exhaustive(s: System, operator) -> AxiomReport:
    n = s.n
    table = _op_table(s, operator)
    masks = np.arange(1 << n, dtype=np.int64)
    rep = AxiomReport(n, "exhaustive", {k: AxiomResult() for k in AXIOMS})
    ns = lambda m: NodeSet(s, int(m))  # noqa: E731

    bad = np.flatnonzero(masks & ~table)
    if bad.size:
        rep.checks["extensive"] = AxiomResult(False, (ns(bad[0]), None))

    sub, sup = kernels.monotone_violation(table, n)
    if sub >= 0:
        rep.checks["monotone"] = AxiomResult(False, (ns(sub), ns(sup)))

    if np.all((table >= 0) & (table < (1 << n))):
        bad = np.flatnonzero(table[table] != table)
        if bad.size:
            rep.checks["idempotent"] = AxiomResult(False, (ns(bad[0]), None))

        closed = np.flatnonzero(table == masks).astype(np.int64)
        pair = _intersection_violation(table, closed)
        if pair is not None:
            rep.checks["intersection_closed"] = AxiomResult(False, (ns(pair[0]), ns(pair[1])))
    return rep


def _intersection_violation(table, closed):
    if closed.size * closed.size <= _PAIR_BUDGET:
        meet = closed[:, None] & closed[None, :]
        bad = np.argwhere(table[meet] != meet)
        if bad.size:
            i, j = bad[0]
            return int(closed[i]), int(closed[j])
        return None
    step = max(1, _PAIR_BUDGET // closed.size)
    for start in range(0, closed.size, step):
        rows = closed[start : start + step]
        meet = rows[:, None] & closed[None, :]
        bad = np.argwhere(table[meet] != meet)
        if bad.size:
            i, j = bad[0]
            return int(rows[i]), int(closed[j])
    return None


def _verify_sampled(s: System, operator, samples: int, seed: int) -> AxiomReport:
    op = operator or (lambda y: closure(s, y))
    rng = np.random.default_rng(seed)
    full = (1 << s.n) - 1
    rep = AxiomReport(s.n, "sampled", {k: AxiomResult() for k in AXIOMS})

    def draw():
        bits = rng.integers(0, 2, size=s.n)
        return sum(1 << int(i) for i in np.flatnonzero(bits))

    def fail(name, y, z=None):
        if rep.checks[name].passed:
            rep.checks[name] = AxiomResult(False, (y, z))

    for _ in range(samples):
        z = NodeSet(s, draw())
        y = NodeSet(s, draw() & z.mask)
        cy, cz = op(y), op(z)
        if not y <= cy:
            fail("extensive", y)
        if not cy <= cz:
            fail("monotone", y, z)
        if op(cy) != cy:
            fail("idempotent", y)
        w = NodeSet(s, draw() & full)
        cw = op(w)
        meet = cz & cw
        if op(meet) != meet:
            fail("intersection_closed", cz, cw)
    return rep
