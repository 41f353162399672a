"""Ground sets, node sets and the adjacency relation.

A :class:`System` is a finite ground set of labelled nodes with a directed,
irreflexive boolean relation. Symmetric ties are stored as two arcs. Node sets
are bitmasks over the node indices; Python ints are used so there is no upper
bound on the size of a system (the exhaustive kernels impose their own).
"""
from __future__ import annotations

import hashlib
import re
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import UsageError

_LABEL = re.compile(r"^[!-~¡-￿]+$")
_RESERVED = {"--", "->", "=>", "!"}


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def canonical_key(mask: int) -> tuple:
    """Sort key: cardinality first, then lexicographic on member indices."""
    return (popcount(mask), tuple(iter_bits(mask)))


def valid_label(label: str) -> bool:
    return (
        isinstance(label, str)
        and bool(_LABEL.match(label))
        and not any(ch.isspace() for ch in label)
        and label not in _RESERVED
        and "#" not in label
        and "," not in label
    )


class NodeSet:
    """An immutable subset of a system's ground set."""

    __slots__ = ("system", "mask")

    def __init__(self, system: "System", mask: int):
        mask = int(mask)
        if mask < 0 or mask >> system.n:
            raise UsageError(f"mask {mask:#x} out of range for a system of {system.n} nodes")
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("NodeSet is immutable")

    def _other(self, other: "NodeSet") -> int:
        if not isinstance(other, NodeSet):
            return NotImplemented
        self.system.check(other)
        return other.mask

    def __or__(self, other):
        return NodeSet(self.system, self.mask | self._other(other))

    def __and__(self, other):
        return NodeSet(self.system, self.mask & self._other(other))

    def __sub__(self, other):
        return NodeSet(self.system, self.mask & ~self._other(other))

    def __le__(self, other):
        return self.mask & ~self._other(other) == 0

    def __lt__(self, other):
        return self <= other and self.mask != other.mask

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def __eq__(self, other):
        if not isinstance(other, NodeSet):
            return NotImplemented
        return self.mask == other.mask and (
            self.system is other.system or self.system == other.system
        )

    def __hash__(self):
        return hash((self.mask, self.system.labels))

    def __len__(self):
        return popcount(self.mask)

    def __bool__(self):
        return self.mask != 0

    def __iter__(self) -> Iterator[str]:
        labels = self.system.labels
        return (labels[i] for i in iter_bits(self.mask))

    def __contains__(self, label):
        i = self.system.index(label)
        return bool(self.mask >> i & 1)

    def indices(self) -> list[int]:
        return list(iter_bits(self.mask))

    def labels(self) -> list[str]:
        return list(self)

    def isdisjoint(self, other: "NodeSet") -> bool:
        return self.mask & self._other(other) == 0

    def sort_key(self):
        return canonical_key(self.mask)

    def __repr__(self):
        return "{" + ",".join(self) + "}"


class System:
    """Finite ground set plus a directed irreflexive adjacency relation.

    ``out[i]`` is the bitmask of out-neighbours of node ``i``. Instances are
    treated as immutable; every mutation helper returns a new system.
    """

    __slots__ = ("labels", "out", "_index", "_inn")

    def __init__(self, labels: Sequence[str], out: Sequence[int]):
        labels = tuple(labels)
        out = tuple(int(m) for m in out)
        if len(labels) != len(out):
            raise UsageError("labels and adjacency rows differ in length")
        index = {}
        for i, lab in enumerate(labels):
            if not valid_label(lab):
                raise UsageError(f"invalid node label {lab!r}")
            if lab in index:
                raise UsageError(f"duplicate node label {lab!r}")
            index[lab] = i
        n = len(labels)
        for i, m in enumerate(out):
            if m < 0 or m >> n:
                raise UsageError(f"adjacency row {i} out of range")
            if m >> i & 1:
                raise UsageError(f"self-loop on {labels[i]!r}")
        self.labels = labels
        self.out = out
        self._index = index
        inn = [0] * n
        for i, m in enumerate(out):
            for j in iter_bits(m):
                inn[j] |= 1 << i
        self._inn = tuple(inn)

    # construction ---------------------------------------------------------

    @classmethod
    def empty(cls) -> "System":
        return cls((), ())

    @classmethod
    def from_edges(
        cls,
        nodes: Iterable[str] = (),
        edges: Iterable[tuple[str, str]] = (),
        arcs: Iterable[tuple[str, str]] = (),
    ) -> "System":
        """Build from symmetric ``edges`` and directed ``arcs``.

        Node order is first appearance: ``nodes`` first, then endpoints.
        """
        order: dict[str, int] = {}

        def idx(lab):
            if lab not in order:
                order[lab] = len(order)
            return order[lab]

        for lab in nodes:
            idx(lab)
        pairs = []
        for u, v in edges:
            pairs.append((idx(u), idx(v)))
            pairs.append((idx(v), idx(u)))
        for u, v in arcs:
            pairs.append((idx(u), idx(v)))
        out = [0] * len(order)
        for i, j in pairs:
            if i == j:
                raise UsageError(f"self-loop on {list(order)[i]!r}")
            out[i] |= 1 << j
        return cls(list(order), out)

    # identity -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, System):
            return NotImplemented
        return self is other or (self.labels == other.labels and self.out == other.out)

    def __hash__(self):
        return hash((self.labels, self.out))

    def __repr__(self):
        return f"System(n={self.n}, arcs={self.arc_count()})"

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self):
        return self.n

    def digest(self) -> str:
        from .formats import format_edgelist

        return "sha256:" + hashlib.sha256(format_edgelist(self).encode()).hexdigest()

    # node access ----------------------------------------------------------

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UsageError(f"unknown node {label!r}") from None

    def label(self, i: int) -> str:
        return self.labels[i]

    def check(self, y: NodeSet) -> NodeSet:
        if not isinstance(y, NodeSet):
            raise UsageError(f"expected a NodeSet, got {type(y).__name__}")
        if y.system is not self and y.system != self:
            raise UsageError("node set belongs to a different system")
        return y

    def nodeset(self, labels: Iterable[str] = ()) -> NodeSet:
        if isinstance(labels, str):
            labels = [labels]
        mask = 0
        for lab in labels:
            mask |= 1 << self.index(lab)
        return NodeSet(self, mask)

    def from_mask(self, mask: int) -> NodeSet:
        return NodeSet(self, int(mask))

    def full(self) -> NodeSet:
        return NodeSet(self, (1 << self.n) - 1)

    def none(self) -> NodeSet:
        return NodeSet(self, 0)

    # adjacency ------------------------------------------------------------

    def has_arc(self, u: str, v: str) -> bool:
        return bool(self.out[self.index(u)] >> self.index(v) & 1)

    def has_edge(self, u: str, v: str) -> bool:
        """True when both arcs u->v and v->u are present."""
        return self.has_arc(u, v) and self.has_arc(v, u)

    def in_mask(self, i: int) -> int:
        return self._inn[i]

    def sym_mask(self, i: int) -> int:
        """Neighbours joined to ``i`` by arcs in both directions."""
        return self.out[i] & self._inn[i]

    def und_mask(self, i: int) -> int:
        """Neighbours joined to ``i`` by an arc in either direction."""
        return self.out[i] | self._inn[i]

    def region_mask(self, i: int) -> int:
        return self.out[i] | (1 << i)

    def region_rows(self) -> np.ndarray:
        """Singleton regions as an int64 array (requires n <= 62)."""
        if self.n > 62:
            raise UsageError("bitmask kernels support at most 62 nodes")
        return np.array([self.region_mask(i) for i in range(self.n)], dtype=np.int64)

    def arc_count(self) -> int:
        return sum(popcount(m) for m in self.out)

    def symmetric_edges(self) -> list[tuple[str, str]]:
        """Pairs present in both directions, ``(u, v)`` with index(u) < index(v)."""
        res = []
        for i in range(self.n):
            for j in iter_bits(self.sym_mask(i) >> (i + 1) << (i + 1)):
                res.append((self.labels[i], self.labels[j]))
        return res

    def asymmetric_arcs(self) -> list[tuple[str, str]]:
        res = []
        for i in range(self.n):
            for j in iter_bits(self.out[i] & ~self._inn[i]):
                res.append((self.labels[i], self.labels[j]))
        return res

    def is_symmetric(self) -> bool:
        return all(self.out[i] == self._inn[i] for i in range(self.n))

    def isolated(self, i: int) -> bool:
        return self.out[i] == 0

    # derived systems ------------------------------------------------------

    def _with_rows(self, out) -> "System":
        return System(self.labels, out)

    def without_edge(self, u: str, v: str) -> "System":
        i, j = self.index(u), self.index(v)
        if not self.has_edge(u, v):
            raise UsageError(f"no symmetric edge {u} -- {v}")
        out = list(self.out)
        out[i] &= ~(1 << j)
        out[j] &= ~(1 << i)
        return self._with_rows(out)

    def with_edge(self, u: str, v: str) -> "System":
        i, j = self.index(u), self.index(v)
        if i == j:
            raise UsageError(f"self-loop on {u!r}")
        if self.has_arc(u, v) or self.has_arc(v, u):
            raise UsageError(f"{u} and {v} are already adjacent")
        out = list(self.out)
        out[i] |= 1 << j
        out[j] |= 1 << i
        return self._with_rows(out)

    def without_arc(self, u: str, v: str) -> "System":
        if not self.has_arc(u, v):
            raise UsageError(f"no arc {u} -> {v}")
        out = list(self.out)
        out[self.index(u)] &= ~(1 << self.index(v))
        return self._with_rows(out)

    def with_arc(self, u: str, v: str) -> "System":
        i, j = self.index(u), self.index(v)
        if i == j:
            raise UsageError(f"self-loop on {u!r}")
        if self.has_arc(u, v):
            raise UsageError(f"arc {u} -> {v} already present")
        out = list(self.out)
        out[i] |= 1 << j
        return self._with_rows(out)

    def induced(self, keep: int) -> "System":
        """Subsystem induced on the node mask ``keep``; order is preserved."""
        kept = list(iter_bits(keep))
        pos = {old: new for new, old in enumerate(kept)}
        out = []
        for old in kept:
            row = 0
            for j in iter_bits(self.out[old] & keep):
                row |= 1 << pos[j]
            out.append(row)
        return System([self.labels[i] for i in kept], out)

    def without_node(self, label: str) -> "System":
        return self.induced(((1 << self.n) - 1) & ~(1 << self.index(label)))

    def symmetrized(self) -> "System":
        return self._with_rows([self.und_mask(i) for i in range(self.n)])
