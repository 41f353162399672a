"""Subsumption, reduction to an irreducible core, and chordless k-cycles.

Node ``y`` is subsumed by ``x`` when ``region({y}) <= region({x})``, i.e.
``y`` lies in the closure of ``{x}``. Repeatedly deleting subsumed nodes
leaves a core in which every singleton is closed.

Cycles run over symmetric ties only. A chord is an arc in *either*
direction between two non-consecutive cycle vertices, so a one-way arc is
enough to break a cycle.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import DEFAULT_MAX_N, check_size
from .system import NodeSet, System, iter_bits

DEFAULT_CYCLE_LIMIT = 10_000


def _subsumed_masks(s: System) -> list[tuple[int, int]]:
    regions = [s.region_mask(i) for i in range(s.n)]
    pairs = []
    for y in range(s.n):
        ry = regions[y]
        for x in range(s.n):
            if x != y and ry & ~regions[x] == 0:
                pairs.append((y, x))
    return pairs


def subsumed_pairs(s: System) -> list[tuple[str, str]]:
    """``(y, x)`` pairs with ``y`` subsumed by ``x``, ordered by index."""
    return [(s.labels[y], s.labels[x]) for y, x in _subsumed_masks(s)]


def is_irreducible(s: System) -> bool:
    return not _subsumed_masks(s)


@dataclass
class ReductionTrace:
    steps: list[tuple[str, str]]  # (deleted, subsumer), in deletion order
    core: System
    core_nodes: NodeSet  # over the original system

    def __len__(self):
        return len(self.steps)


def reduce(s: System, rng: Optional[random.Random] = None) -> ReductionTrace:
    """Delete subsumed nodes one at a time until the system is irreducible.

    Without ``rng`` the least subsumed node (tie-break: least subsumer) goes
    first; with ``rng`` a uniformly random subsumed pair is taken each round.
    """
    current = s
    steps = []
    while True:
        pairs = _subsumed_masks(current)
        if not pairs:
            break
        y, x = rng.choice(pairs) if rng is not None else pairs[0]
        steps.append((current.labels[y], current.labels[x]))
        current = current.induced(((1 << current.n) - 1) & ~(1 << y))
    return ReductionTrace(steps, current, s.nodeset(current.labels))


# --------------------------------------------------------------------------
# chordless cycles


@dataclass(frozen=True)
class KCycle:
    """Chordless cycle in canonical rotation and direction."""

    vertices: tuple[str, ...]

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def edges(self) -> list[tuple[str, str]]:
        v = self.vertices
        return [(v[k], v[(k + 1) % len(v)]) for k in range(len(v))]

    def __str__(self):
        return "<" + ",".join(self.vertices) + ">"


@dataclass
class CycleSearch:
    cycles: list[KCycle] = field(default_factory=list)
    truncated: bool = False

    def __iter__(self) -> Iterator[KCycle]:
        return iter(self.cycles)

    def __len__(self):
        return len(self.cycles)

    def __getitem__(self, k):
        return self.cycles[k]


def is_chordless_cycle(s: System, idx: list[int]) -> bool:
    k = len(idx)
    if k < 3 or len(set(idx)) != k:
        return False
    for a in range(k):
        u, v = idx[a], idx[(a + 1) % k]
        if not (s.out[u] >> v & 1 and s.out[v] >> u & 1):
            return False
        for b in range(a + 2, k):
            if a == 0 and b == k - 1:
                continue
            if s.und_mask(u) >> idx[b] & 1:
                return False
    return True


def _canonical(idx: list[int]) -> list[int]:
    r = idx.index(min(idx))
    fwd = idx[r:] + idx[:r]
    back = [fwd[0]] + fwd[1:][::-1]
    return min(fwd, back)


def chordless_cycles(
    s: System,
    min_len: int = 4,
    max_len: Optional[int] = None,
    limit: int = DEFAULT_CYCLE_LIMIT,
) -> CycleSearch:
    """All chordless cycles with ``min_len <= length <= max_len``.

    Each cycle is grown from its least vertex ``s0`` using only larger
    vertices, and reported once with its second vertex smaller than its last.
    """
    n = s.n
    max_len = n if max_len is None else min(max_len, n)
    sym = [s.sym_mask(i) for i in range(n)]
    und = [s.und_mask(i) for i in range(n)]
    found: list[list[int]] = []
    state = {"truncated": False}

    def dfs(path, on_path, forbidden, s0):
        v = path[-1]
        for w in iter_bits(sym[v] & ~on_path & ~((2 << s0) - 1)):
            if forbidden >> w & 1:
                continue
            if und[w] >> s0 & 1:
                if len(path) >= 3 and sym[w] >> s0 & 1 and path[1] < w:
                    if len(path) + 1 >= min_len and len(path) + 1 <= max_len:
                        if len(found) >= limit:
                            state["truncated"] = True
                            return
                        found.append(path + [w])
                continue
            if len(path) + 1 < max_len:
                dfs(path + [w], on_path | (1 << w), forbidden | und[v], s0)
            if state["truncated"]:
                return

    for s0 in range(n):
        for v in iter_bits(sym[s0] & ~((2 << s0) - 1)):
            dfs([s0, v], (1 << s0) | (1 << v), 0, s0)
            if state["truncated"]:
                break
        if state["truncated"]:
            break

    out = []
    for idx in found:
        if not is_chordless_cycle(s, idx):  # pragma: no cover - search invariant
            raise AssertionError(f"non-chordless cycle emitted: {idx}")
        out.append(_canonical(idx))
    out.sort(key=lambda c: (len(c), c))
    return CycleSearch([KCycle(tuple(s.labels[i] for i in c)) for c in out], state["truncated"])


def cycle_through_edge(
    s: System, x: str, z: str, min_len: int = 4, max_len: Optional[int] = None
) -> Optional[list[str]]:
    """First chordless cycle (DFS order) using the symmetric edge ``x -- z``.

    Returned as ``[x, z, ..., w]`` with ``w`` adjacent to ``x``.
    """
    xi, zi = s.index(x), s.index(z)
    n = s.n
    max_len = n if max_len is None else min(max_len, n)
    sym = [s.sym_mask(i) for i in range(n)]
    und = [s.und_mask(i) for i in range(n)]

    def dfs(path, on_path, forbidden):
        v = path[-1]
        for w in iter_bits(sym[v] & ~on_path):
            if forbidden >> w & 1:
                continue
            if und[w] >> xi & 1:
                if len(path) >= 3 and sym[w] >> xi & 1 and len(path) + 1 >= min_len:
                    return path + [w]
                continue
            if len(path) + 1 < max_len:
                hit = dfs(path + [w], on_path | (1 << w), forbidden | und[v])
                if hit:
                    return hit
        return None

    if not (sym[xi] >> zi & 1):
        return None
    hit = dfs([xi, zi], (1 << xi) | (1 << zi), 0)
    return [s.labels[i] for i in hit] if hit else None


# --------------------------------------------------------------------------
# irreducible-core characterisation


@dataclass
class CharacterizationReport:
    status: str  # PASS | RESIDUAL_ONLY | MISMATCH | INCOMPLETE
    core_nodes: list[str]
    cycle_nodes: list[str]
    path_nodes: list[str]
    only_in_core: list[str]
    only_predicted: list[str]
    cycles: list[KCycle]
    residual: list[str] = field(default_factory=list)
    reading: str = (
        "predicted = vertices of chordless cycles (len >= 4) plus interior "
        "vertices of simple paths, in the symmetrised graph, from a vertex "
        "only on one such cycle to a vertex only on another, avoiding both"
    )

    @property
    def passed(self) -> bool:
        return self.status == "PASS"


def _bridge_interiors(s: System, a: int, b: int) -> int:
    """Vertices interior to some simple path from ``a - b`` to ``b - a`` whose
    interior avoids ``a | b``.

    Paths from a shared vertex are excluded: they run from a cycle back to
    the same cycle.
    """
    import networkx as nx

    src, dst = a & ~b, b & ~a
    if not src or not dst:
        return 0
    g = nx.Graph()
    rest = ((1 << s.n) - 1) & ~(a | b)
    g.add_nodes_from(iter_bits(rest))
    g.add_edge("S", "T")
    for v in iter_bits(rest):
        nb = s.und_mask(v)
        for w in iter_bits(nb & rest):
            g.add_edge(v, w)
        if nb & src:
            g.add_edge("S", v)
        if nb & dst:
            g.add_edge("T", v)
    for block in nx.biconnected_components(g):
        if "S" in block and "T" in block:
            return sum(1 << v for v in block if isinstance(v, int))
    return 0


def characterization_check(
    s: System, max_n: int = DEFAULT_MAX_N, limit: int = DEFAULT_CYCLE_LIMIT
) -> CharacterizationReport:
    """Compare the reduced core against cycle vertices plus bridging paths."""
    check_size(s.n, max_n)
    core = reduce(s).core_nodes.mask
    search = chordless_cycles(s, limit=limit)
    cyc_masks = sorted({sum(1 << s.index(v) for v in c) for c in search})
    cycle_mask = 0
    for m in cyc_masks:
        cycle_mask |= m
    path_mask = 0
    for i, a in enumerate(cyc_masks):
        for b in cyc_masks[i + 1 :]:
            path_mask |= _bridge_interiors(s, a, b)
    path_mask &= ~cycle_mask
    predicted = cycle_mask | path_mask
    residual = core & _cycle_free_components(s, cycle_mask)
    lab = lambda m: [s.labels[i] for i in iter_bits(m)]  # noqa: E731
    if search.truncated:
        status = "INCOMPLETE"
    elif predicted == core:
        status = "PASS"
    elif predicted & ~core == 0 and core & ~predicted & ~residual == 0:
        status = "RESIDUAL_ONLY"
    else:
        status = "MISMATCH"
    return CharacterizationReport(
        status=status,
        core_nodes=lab(core),
        cycle_nodes=lab(cycle_mask),
        path_nodes=lab(path_mask),
        only_in_core=lab(core & ~predicted),
        only_predicted=lab(predicted & ~core),
        cycles=list(search),
        residual=lab(residual),
    )


def _cycle_free_components(s: System, cycle_mask: int) -> int:
    """Nodes whose (symmetrised) component holds no chordless-cycle vertex.

    Such a component always keeps at least one node after reduction, which
    the cycle/path description does not account for.
    """
    seen, free = 0, 0
    for start in range(s.n):
        if seen >> start & 1:
            continue
        comp, frontier = 1 << start, [start]
        while frontier:
            v = frontier.pop()
            for w in iter_bits(s.und_mask(v) & ~comp):
                comp |= 1 << w
                frontier.append(w)
        seen |= comp
        if not comp & cycle_mask:
            free |= comp
    return free
