"""Seeded simulation of networks shedding edges through continuous deletions.

Each step lists the symmetric edges whose deletion (as the identity node map
onto the smaller system) is continuous, picks one uniformly and removes it.
In ``DELETION_PLUS_TRIADIC`` mode a triadic addition may fire first; it is
applied whatever its continuity, which is recorded.

Random sequence contract (part of the trace header): a single
``numpy.random.PCG64(seed)`` bit generator, consumed via ``random_raw()``.

* uniform index in ``[0, k)``:  ``(raw * k) >> 64``
* unit float in ``[0, 1)``:     ``(raw >> 11) * 2**-53``

Per step, in triadic mode one unit float is drawn first (the addition
coin); then at most one index draw is made, over the sorted triadic
candidates if the coin fired, otherwise over the continuous deletions.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .errors import DEFAULT_MAX_N, UsageError, check_size
from .reduction import _subsumed_masks, chordless_cycles, reduce
from .system import System, iter_bits, popcount
from .transform import NodeMap, check_edge_deletion, is_continuous, triadic_candidates

TRACE_FORMAT = "netclosure-trace"
TRACE_VERSION = 1
MODES = ("DELETION_ONLY", "DELETION_PLUS_TRIADIC")
CHECKERS = ("ORACLE", "FASTPATH")
RNG_CONTRACT = {
    "algorithm": "PCG64",
    "draw": "random_raw",
    "index": "(raw * k) >> 64",
    "unit": "(raw >> 11) * 2**-53",
}


def sig6(x: float) -> float:
    return float(f"{x:.6g}")


@dataclass(frozen=True)
class Metrics:
    edge_count: int
    symmetric_edge_count: int
    component_count: int
    subsumed_node_count: int
    core_size: int
    kcycle_count: int
    triangle_count: int
    closed_triad_ratio: float

    def as_dict(self) -> dict:
        d = asdict(self)
        d["closed_triad_ratio"] = sig6(self.closed_triad_ratio)
        return d


def _components(s: System) -> int:
    seen, count = 0, 0
    for start in range(s.n):
        if seen >> start & 1:
            continue
        count += 1
        seen |= 1 << start
        stack = [start]
        while stack:
            v = stack.pop()
            for w in iter_bits(s.und_mask(v) & ~seen):
                seen |= 1 << w
                stack.append(w)
    return count


def metrics(s: System, cap: int = 1000) -> Metrics:
    """Structural summary; adjacency-based counts use the symmetrised relation."""
    und = [s.und_mask(i) for i in range(s.n)]
    edges = sum(popcount(m) for m in und) // 2
    triangles, triads = 0, 0
    for v in range(s.n):
        d = popcount(und[v])
        triads += d * (d - 1) // 2
        for w in iter_bits(und[v] & ~((2 << v) - 1)):
            triangles += popcount(und[v] & und[w] & ~((2 << w) - 1))
    ratio = 3 * triangles / triads if triads else 0.0
    subsumed = len({y for y, _ in _subsumed_masks(s)})
    return Metrics(
        edge_count=edges,
        symmetric_edge_count=len(s.symmetric_edges()),
        component_count=_components(s),
        subsumed_node_count=subsumed,
        core_size=len(reduce(s).core_nodes),
        kcycle_count=len(chordless_cycles(s, limit=cap)),
        triangle_count=triangles,
        closed_triad_ratio=ratio,
    )


@dataclass(frozen=True)
class SimConfig:
    seed: int = 0
    max_steps: int = 1000
    mode: str = "DELETION_ONLY"
    p_add: float = 0.0
    continuity_checker: str = "ORACLE"
    metric_cycle_cap: int = 1000

    def validate(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must be a 64-bit unsigned integer")
        if self.max_steps < 0:
            raise UsageError("max_steps must be non-negative")
        if self.mode not in MODES:
            raise UsageError(f"mode must be one of {', '.join(MODES)}")
        if self.continuity_checker not in CHECKERS:
            raise UsageError(f"continuity_checker must be one of {', '.join(CHECKERS)}")
        if not 0.0 <= self.p_add <= 1.0:
            raise UsageError("p_add must lie in [0, 1]")
        if self.mode == "DELETION_ONLY" and self.p_add != 0:
            raise UsageError("p_add must be 0 in DELETION_ONLY mode")
        if self.metric_cycle_cap < 1:
            raise UsageError("metric_cycle_cap must be positive")

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "max_steps": self.max_steps,
            "mode": self.mode,
            "p_add": sig6(self.p_add),
            "continuity_checker": self.continuity_checker,
            "metric_cycle_cap": self.metric_cycle_cap,
        }


@dataclass
class SimStep:
    index: int
    op: str  # DELETE | ADD | HALT
    edge: Optional[tuple[str, str]]
    metrics: Metrics
    add_continuous: Optional[bool] = None
    mismatches: list[dict] = field(default_factory=list)
    reason: Optional[str] = None  # HALT only: FIXPOINT | STEP_LIMIT

    def as_dict(self) -> dict:
        if self.op == "HALT":
            return {"index": self.index, "op": "HALT", "reason": self.reason,
                    "metrics": self.metrics.as_dict()}
        return {
            "index": self.index,
            "op": self.op,
            "edge": list(self.edge),
            "add_continuous": self.add_continuous,
            "mismatches": self.mismatches,
            "metrics": self.metrics.as_dict(),
        }


@dataclass
class SimTrace:
    config: SimConfig
    initial: System
    initial_metrics: Metrics
    steps: list[SimStep]
    halt: SimStep
    final: System

    @property
    def reason(self) -> str:
        return self.halt.reason

    def header(self) -> dict:
        return {
            "format": TRACE_FORMAT,
            "version": TRACE_VERSION,
            "config": self.config.as_dict(),
            "graph": {"n": self.initial.n, "digest": self.initial.digest()},
            "rng": dict(RNG_CONTRACT, seed=self.config.seed),
            "metrics": self.initial_metrics.as_dict(),
        }

    def records(self) -> list[dict]:
        return [self.header()] + [st.as_dict() for st in self.steps] + [self.halt.as_dict()]

    def to_text(self) -> str:
        return "".join(json.dumps(r, separators=(", ", ": ")) + "\n" for r in self.records())


def read_trace(text: str) -> list[dict]:
    """Parse a trace file back into its records, checking the envelope."""
    recs = [json.loads(line) for line in text.splitlines() if line.strip()]
    if not recs or recs[0].get("format") != TRACE_FORMAT:
        raise UsageError("not a netclosure trace")
    if recs[-1].get("op") != "HALT":
        raise UsageError("trace does not end with a HALT record")
    return recs


class _Rng:
    def __init__(self, seed: int):
        self._bg = np.random.PCG64(seed)

    def _raw(self) -> int:
        return int(self._bg.random_raw())

    def index(self, k: int) -> int:
        return (self._raw() * k) >> 64

    def unit(self) -> float:
        return (self._raw() >> 11) * 2.0**-53


def deletable_edges(
    s: System, checker: str = "ORACLE", max_n: int = DEFAULT_MAX_N
) -> tuple[list[tuple[str, str]], list[dict]]:
    """Symmetric edges whose deletion is continuous, plus fast-path/oracle
    disagreements when the fast path decides (and the oracle can run)."""
    ok, mismatches = [], []
    for x, z in s.symmetric_edges():
        oracle = None
        if checker == "ORACLE" or s.n <= max_n:
            oracle = is_continuous(NodeMap.identity(s, s.without_edge(x, z)), max_n).continuous
        if checker == "ORACLE":
            cont = oracle
        else:
            cont = check_edge_deletion(s, x, z).continuous
            if oracle is not None and oracle != cont:
                mismatches.append({"edge": [x, z], "fastpath": cont, "oracle": oracle})
        if cont:
            ok.append((x, z))
    return ok, mismatches


def run(s: System, cfg: SimConfig, max_n: int = DEFAULT_MAX_N) -> SimTrace:
    """Simulate until no continuous deletion remains or ``max_steps`` ops ran."""
    cfg.validate()
    if cfg.continuity_checker == "ORACLE" or cfg.mode == "DELETION_PLUS_TRIADIC":
        check_size(s.n, max_n)
    rng = _Rng(cfg.seed)
    cap = cfg.metric_cycle_cap
    current = s
    steps: list[SimStep] = []
    reason = "STEP_LIMIT"
    while len(steps) < cfg.max_steps:
        idx = len(steps) + 1
        if cfg.mode == "DELETION_PLUS_TRIADIC":
            coin = rng.unit()
            cands = triadic_candidates(current)
            if coin < cfg.p_add and cands:
                x, z = cands[rng.index(len(cands))]
                nxt = current.with_edge(x, z)
                cont = is_continuous(NodeMap.identity(current, nxt), max_n).continuous
                current = nxt
                steps.append(SimStep(idx, "ADD", (x, z), metrics(current, cap), add_continuous=cont))
                continue
        ok, mismatches = deletable_edges(current, cfg.continuity_checker, max_n)
        if not ok:
            reason = "FIXPOINT"
            break
        x, z = ok[rng.index(len(ok))]
        current = current.without_edge(x, z)
        steps.append(SimStep(idx, "DELETE", (x, z), metrics(current, cap), mismatches=mismatches))
    halt = SimStep(len(steps), "HALT", None, metrics(current, cap), reason=reason)
    return SimTrace(cfg, s, metrics(s, cap), steps, halt, current)


def fixpoint_check(s: System, max_n: int = DEFAULT_MAX_N) -> list[tuple[str, str]]:
    """Symmetric edges of ``s`` whose deletion the oracle finds continuous."""
    return deletable_edges(s, "ORACLE", max_n)[0]


__all__ = [
    "CHECKERS",
    "MODES",
    "Metrics",
    "SimConfig",
    "SimStep",
    "SimTrace",
    "deletable_edges",
    "fixpoint_check",
    "metrics",
    "read_trace",
    "run",
]
