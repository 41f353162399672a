"""Separation and connectivity of node sets.

``X`` and ``Z`` are separated when their dominated regions are disjoint,
equivalently when all four of ``X & Z``, ``X & nbhd(Z)``, ``nbhd(X) & Z`` and
``nbhd(X) & nbhd(Z)`` are empty.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .closure import _region_mask
from .errors import DEFAULT_MAX_N, UsageError
from .system import NodeSet, System, iter_bits
from .transform import NodeMap, apply, is_continuous

OVERLAP_KINDS = ("X&Z", "X&nbhd(Z)", "nbhd(X)&Z", "nbhd(X)&nbhd(Z)")


@dataclass
class SeparationReport:
    separated: bool
    overlaps: dict[str, Optional[str]] = field(default_factory=dict)  # kind -> witness label

    def __bool__(self):
        return self.separated


def _first_label(s: System, mask: int) -> Optional[str]:
    return s.labels[(mask & -mask).bit_length() - 1] if mask else None


def are_separated(s: System, x: NodeSet, z: NodeSet) -> SeparationReport:
    s.check(x)
    s.check(z)
    rx, rz = _region_mask(s, x.mask), _region_mask(s, z.mask)
    nx_, nz = rx & ~x.mask, rz & ~z.mask
    parts = (x.mask & z.mask, x.mask & nz, nx_ & z.mask, nx_ & nz)
    overlaps = {k: _first_label(s, m) for k, m in zip(OVERLAP_KINDS, parts)}
    return SeparationReport(rx & rz == 0, overlaps)


def components(s: System, y: NodeSet) -> list[NodeSet]:
    """Classes of ``y`` under the transitive closure of 'regions meet'.

    A split ``Y = X | Z`` is separated exactly when no member of ``X`` has a
    region meeting the region of a member of ``Z``, since a set's region is
    the union of its members' regions.
    """
    s.check(y)
    members = y.indices()
    reg = {i: s.region_mask(i) for i in members}
    left = set(members)
    out = []
    while left:
        start = min(left)
        comp, frontier = {start}, [start]
        left.discard(start)
        while frontier:
            u = frontier.pop()
            for v in sorted(left):
                if reg[u] & reg[v]:
                    left.discard(v)
                    comp.add(v)
                    frontier.append(v)
        out.append(NodeSet(s, sum(1 << i for i in comp)))
    return out


def is_connected_set(s: System, y: NodeSet) -> bool:
    s.check(y)
    if not y:
        raise UsageError("connectivity is undefined for the empty set")
    return len(components(s, y)) == 1


def is_connected_set_bruteforce(s: System, y: NodeSet) -> bool:
    """Reference check over every bipartition of ``y``."""
    s.check(y)
    if not y:
        raise UsageError("connectivity is undefined for the empty set")
    members = y.indices()
    first, rest = members[0], members[1:]
    for k in range(len(rest) + 1):
        for combo in combinations(rest, k):
            xm = (1 << first) | sum(1 << i for i in combo)
            zm = y.mask & ~xm
            if zm and are_separated(s, NodeSet(s, xm), NodeSet(s, zm)).separated:
                return False
    return True


@dataclass
class PreservationReport:
    hypothesis_holds: bool
    hypothesis: str
    isolated: list[str]
    images_separated: bool
    image_report: SeparationReport
    continuous: Optional[bool]
    status: str  # CONFIRMS | CONTRADICTS | VACUOUS


HYPOTHESIS_TEXT = (
    "non-isolation: every member of X and Z, and every source node whose image "
    "lies in the image regions of X or Z, has a non-empty neighbourhood"
)


def check_separation_preservation(
    f: NodeMap, x: NodeSet, z: NodeSet, max_n: int = DEFAULT_MAX_N
) -> PreservationReport:
    """Does ``f`` keep the separated sets ``x``, ``z`` separated?

    The instance can only contradict the preservation claim when ``f`` is
    continuous and the non-isolation hypothesis holds.
    """
    s, t = f.source, f.target
    if not are_separated(s, x, z).separated:
        raise UsageError("inputs are not separated in the source system")
    fx, fz = apply(f, x), apply(f, z)
    image_regions = _region_mask(t, fx.mask) | _region_mask(t, fz.mask)
    relevant = x.mask | z.mask
    for i, j in enumerate(f.images):
        if j != -1 and image_regions >> j & 1:
            relevant |= 1 << i
    isolated = [s.labels[i] for i in iter_bits(relevant) if s.out[i] == 0]
    rep = are_separated(t, fx, fz)
    cont = is_continuous(f, max_n).continuous if s.n <= max_n else None
    holds = not isolated
    if holds and cont and not rep.separated:
        status = "CONTRADICTS"
    elif holds and cont:
        status = "CONFIRMS"
    else:
        status = "VACUOUS"
    return PreservationReport(holds, HYPOTHESIS_TEXT, isolated, rep.separated, rep, cont, status)
