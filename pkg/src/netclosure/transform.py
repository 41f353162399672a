"""Atomistic transformations between systems and their continuity.

A :class:`NodeMap` sends every source node either to a distinct target node
or to nothing (deleted). The image of a set is the union of its members'
images, so ``apply`` distributes over union and intersection by
construction and ``apply(f, {}) == {}``.

``f`` is continuous when ``apply(f, closure(Y)) <= closure'(apply(f, Y))``
for every source set ``Y``; :func:`is_continuous` checks all ``2**n`` sets.
:func:`check_edge_deletion` instead evaluates the two-clause structural
criterion for deleting one symmetric edge and never consults the exhaustive
check unless asked to.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from . import kernels
from .closure import _closure_mask, enumerate_closed_sets
from .errors import DEFAULT_MAX_N, ParseError, UsageError, check_size
from .formats import parse_map_entries
from .reduction import cycle_through_edge
from .system import NodeSet, System, canonical_key, iter_bits, popcount

DELETED = None


class NodeMap:
    """Injective partial node map ``source -> target``."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: System, target: System, images):
        images = tuple(-1 if v is None else int(v) for v in images)
        if len(images) != source.n:
            raise UsageError("node map must give an image for every source node")
        seen = {}
        for i, j in enumerate(images):
            if j == -1:
                continue
            if not 0 <= j < target.n:
                raise UsageError(f"image index {j} out of range")
            if j in seen:
                raise UsageError(
                    f"{source.labels[seen[j]]} and {source.labels[i]} both map to "
                    f"{target.labels[j]}; node maps must be injective"
                )
            seen[j] = i
        self.source = source
        self.target = target
        self.images = images

    @classmethod
    def from_labels(cls, source: System, target: System, mapping: Mapping[str, Optional[str]]):
        missing = [lab for lab in source.labels if lab not in mapping]
        if missing:
            raise UsageError(f"no image given for {', '.join(missing)}")
        extra = [lab for lab in mapping if lab not in source._index]
        if extra:
            raise UsageError(f"unknown source node {extra[0]!r}")
        return cls(
            source,
            target,
            [-1 if mapping[lab] is None else target.index(mapping[lab]) for lab in source.labels],
        )

    @classmethod
    def identity(cls, source: System, target: Optional[System] = None) -> "NodeMap":
        """Map each node to the same label in ``target``; labels missing from
        the target are deleted."""
        target = source if target is None else target
        return cls(source, target, [target._index.get(lab, -1) for lab in source.labels])

    def image(self, label: str) -> Optional[str]:
        j = self.images[self.source.index(label)]
        return None if j == -1 else self.target.labels[j]

    def as_dict(self) -> dict[str, Optional[str]]:
        return {lab: self.image(lab) for lab in self.source.labels}

    def image_rows(self) -> np.ndarray:
        return np.array([0 if j == -1 else 1 << j for j in self.images], dtype=np.int64)

    def image_mask(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            j = self.images[i]
            if j != -1:
                out |= 1 << j
        return out

    def __eq__(self, other):
        if not isinstance(other, NodeMap):
            return NotImplemented
        return (self.source, self.target, self.images) == (other.source, other.target, other.images)

    def __hash__(self):
        return hash((self.source, self.target, self.images))

    def __repr__(self):
        pairs = ", ".join(f"{k}=>{v if v is not None else '!'}" for k, v in self.as_dict().items())
        return f"NodeMap({pairs})"


def parse_map(text: str, source: System, target: System) -> NodeMap:
    mapping: dict[str, Optional[str]] = {}
    for src, dst, lineno in parse_map_entries(text):
        if src not in source._index:
            raise ParseError(f"unknown source node {src!r}", lineno)
        if dst is not None and dst not in target._index:
            raise ParseError(f"unknown target node {dst!r}", lineno)
        if src in mapping and mapping[src] != dst:
            raise ParseError(f"conflicting images for {src!r}", lineno)
        mapping[src] = dst
    return NodeMap.from_labels(source, target, mapping)


def format_map(f: NodeMap) -> str:
    return "".join(f"{k} => {v if v is not None else '!'}\n" for k, v in f.as_dict().items())


def apply(f: NodeMap, y: NodeSet) -> NodeSet:
    f.source.check(y)
    return NodeSet(f.target, f.image_mask(y.mask))


def is_monotone(f: NodeMap) -> bool:
    """Node maps act by union of node images, hence are always monotone.

    General set transformations, which need not be, live in
    :class:`netclosure.oracle.TableTransform`.
    """
    return isinstance(f, NodeMap)


@dataclass
class ContinuityVerdict:
    continuous: bool
    witness: Optional[NodeSet] = None
    offending_element: Optional[str] = None
    monotone: bool = True

    def __bool__(self):
        return self.continuous


def _violates(f_image, src: System, dst: System, mask: int) -> int:
    """Target nodes in ``f(closure(Y)) - closure'(f(Y))``."""
    lhs = f_image(_closure_mask(src, mask))
    rhs = _closure_mask(dst, f_image(mask))
    return lhs & ~rhs


def canonical_first(masks) -> int:
    """Least mask under (cardinality, member indices) order."""
    masks = np.asarray(masks, dtype=np.int64)
    counts = np.bitwise_count(masks) if hasattr(np, "bitwise_count") else np.array(
        [popcount(int(m)) for m in masks]
    )
    small = masks[counts == counts.min()]
    return min((int(m) for m in small), key=canonical_key)


def minimize_witness(violates, mask: int) -> int:
    """Greedy single-element removal while the set still violates."""
    for i in list(iter_bits(mask)):
        smaller = mask & ~(1 << i)
        if violates(smaller):
            mask = smaller
    return mask


def verdict_from_violations(viol: np.ndarray, violates, source: System, target: System):
    hits = np.flatnonzero(viol)
    if hits.size == 0:
        return ContinuityVerdict(True)
    first = minimize_witness(lambda m: violates(m) != 0, canonical_first(hits))
    bad = violates(first)
    return ContinuityVerdict(
        False, NodeSet(source, first), target.labels[(bad & -bad).bit_length() - 1]
    )


def is_continuous(f: NodeMap, max_n: int = DEFAULT_MAX_N) -> ContinuityVerdict:
    """Exhaustive continuity test over every subset of the source."""
    check_size(f.source.n, max_n)
    if f.target.n > 62:
        raise UsageError("target systems are limited to 62 nodes")
    viol = kernels.continuity_violations(
        f.source.region_rows(), f.target.region_rows(), f.image_rows()
    )
    return verdict_from_violations(
        viol, lambda m: _violates(f.image_mask, f.source, f.target, m), f.source, f.target
    )


def is_surjective(f: NodeMap, max_n: int = DEFAULT_MAX_N) -> bool:
    """Every closed target set is the image of some source set.

    Images are unions of node images, so a closed set is reachable exactly
    when it lies inside the image of the whole source.
    """
    reach = f.image_mask((1 << f.source.n) - 1)
    return all(c.mask & ~reach == 0 for c in enumerate_closed_sets(f.target, max_n))


def compose(f: NodeMap, g: NodeMap) -> NodeMap:
    """``f`` then ``g`` (suffix order: ``Y.f.g``)."""
    if f.target != g.source:
        raise UsageError("cannot compose: f's target is not g's source")
    return NodeMap(f.source, g.target, [-1 if j == -1 else g.images[j] for j in f.images])


# --------------------------------------------------------------------------
# single-edge mutations


@dataclass(frozen=True)
class EdgeMutation:
    kind: str  # "DELETE" | "ADD"
    endpoints: tuple[str, str]
    symmetric: bool = True

    def apply_to(self, s: System) -> System:
        u, v = self.endpoints
        if self.kind == "DELETE":
            return s.without_edge(u, v) if self.symmetric else s.without_arc(u, v)
        if self.kind == "ADD":
            return s.with_edge(u, v) if self.symmetric else s.with_arc(u, v)
        raise UsageError(f"unknown mutation kind {self.kind!r}")


def mutate(s: System, m: EdgeMutation) -> NodeMap:
    """Identity node map from ``s`` onto the mutated system."""
    return NodeMap.identity(s, m.apply_to(s))


@dataclass
class DelVerdict:
    edge: tuple[str, str]
    verdict: str  # CONTINUOUS | DISCONTINUOUS_A | DISCONTINUOUS_B
    closure_x: list[str]
    closure_z: list[str]
    out_degree_x: int
    out_degree_z: int
    cycle: Optional[list[str]] = None
    oracle_continuous: Optional[bool] = None
    oracle_witness: Optional[list[str]] = None

    @property
    def continuous(self) -> bool:
        return self.verdict == "CONTINUOUS"

    @property
    def agreement(self) -> Optional[bool]:
        if self.oracle_continuous is None:
            return None
        return self.oracle_continuous == self.continuous


def check_edge_deletion(
    s: System, x: str, z: str, oracle: bool = False, max_n: int = DEFAULT_MAX_N
) -> DelVerdict:
    """Classify deleting the symmetric edge ``x -- z`` by the structural
    criterion, taken literally:

    (a) ``z`` in ``closure({x})`` or ``x`` in ``closure({z})``, with the two
        singleton closures different; or
    (b) the edge lies on a chordless cycle of length >= 4 and ``x`` or ``z``
        has exactly two out-neighbours.

    With ``oracle=True`` the exhaustive continuity test is run as well.
    """
    if not s.has_edge(x, z):
        raise UsageError(f"no symmetric edge {x} -- {z}")
    xi, zi = s.index(x), s.index(z)
    cx, cz = _closure_mask(s, 1 << xi), _closure_mask(s, 1 << zi)
    dx, dz = popcount(s.out[xi]), popcount(s.out[zi])
    lab = lambda m: [s.labels[i] for i in iter_bits(m)]  # noqa: E731
    verdict, cycle = "CONTINUOUS", None
    if (cx >> zi & 1 or cz >> xi & 1) and cx != cz:
        verdict = "DISCONTINUOUS_A"
    elif dx == 2 or dz == 2:
        cycle = cycle_through_edge(s, x, z)
        if cycle is not None:
            verdict = "DISCONTINUOUS_B"
    res = DelVerdict((x, z), verdict, lab(cx), lab(cz), dx, dz, cycle)
    if oracle:
        v = is_continuous(NodeMap.identity(s, s.without_edge(x, z)), max_n)
        res.oracle_continuous = v.continuous
        res.oracle_witness = None if v.witness is None else v.witness.labels()
    return res


@dataclass
class AddVerdict:
    edge: tuple[str, str]
    claim_applies: bool
    common_neighbors: list[str]
    oracle_continuous: Optional[bool] = None
    oracle_witness: Optional[list[str]] = None

    @property
    def agreement(self) -> str:
        """AGREE / MISMATCH for the claim 'shared neighbour => continuous';
        NOT_APPLICABLE without a shared neighbour; UNKNOWN without oracle."""
        if not self.claim_applies:
            return "NOT_APPLICABLE"
        if self.oracle_continuous is None:
            return "UNKNOWN"
        return "AGREE" if self.oracle_continuous else "MISMATCH"


def check_edge_addition(
    s: System, x: str, z: str, oracle: bool = True, max_n: int = DEFAULT_MAX_N
) -> AddVerdict:
    if x == z:
        raise UsageError(f"self-loop on {x!r}")
    if s.has_arc(x, z) or s.has_arc(z, x):
        raise UsageError(f"{x} and {z} are already adjacent")
    common = s.out[s.index(x)] & s.out[s.index(z)]
    res = AddVerdict((x, z), bool(common), [s.labels[i] for i in iter_bits(common)])
    if oracle:
        v = is_continuous(NodeMap.identity(s, s.with_edge(x, z)), max_n)
        res.oracle_continuous = v.continuous
        res.oracle_witness = None if v.witness is None else v.witness.labels()
    return res


def triadic_candidates(s: System) -> list[tuple[str, str]]:
    """Non-adjacent pairs sharing at least one out-neighbour."""
    res = []
    for i in range(s.n):
        for j in range(i + 1, s.n):
            if s.und_mask(i) >> j & 1:
                continue
            if s.out[i] & s.out[j]:
                res.append((s.labels[i], s.labels[j]))
    return res


__all__ = [
    "AddVerdict",
    "ContinuityVerdict",
    "DELETED",
    "DelVerdict",
    "EdgeMutation",
    "NodeMap",
    "apply",
    "check_edge_addition",
    "check_edge_deletion",
    "compose",
    "format_map",
    "is_continuous",
    "is_monotone",
    "is_surjective",
    "mutate",
    "parse_map",
    "triadic_candidates",
]
