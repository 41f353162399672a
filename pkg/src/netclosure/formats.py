"""Text formats: edge lists, adjacency matrices, node-map files and DOT.

Edge list::

    # comment
    node a          isolated node (or just fixes the order)
    a -- b          symmetric edge
    a -> c          directed arc

Matrix: first line ``n``, then ``n`` rows of ``0``/``1``; row ``i`` holds the
out-arcs of node ``v<i>``.

Node map: ``<src> => <dst>`` or ``<src> => !`` for a deleted node.
"""
from __future__ import annotations

from pathlib import Path

from .errors import ParseError, UsageError
from .system import System, valid_label


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_edgelist(text: str) -> System:
    order: dict[str, int] = {}
    arcs: set[tuple[int, int]] = set()

    def node(tok, lineno):
        if not valid_label(tok):
            raise ParseError(f"invalid node label {tok!r}", lineno)
        if tok not in order:
            order[tok] = len(order)
        return order[tok]

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        toks = line.split()
        if len(toks) == 2 and toks[0] == "node":
            node(toks[1], lineno)
        elif len(toks) == 3 and toks[1] in ("--", "->"):
            u, v = node(toks[0], lineno), node(toks[2], lineno)
            if u == v:
                raise ParseError(f"self-loop on {toks[0]!r}", lineno)
            arcs.add((u, v))
            if toks[1] == "--":
                arcs.add((v, u))
        else:
            raise ParseError(f"cannot parse {raw.strip()!r}", lineno)
    if not order:
        raise ParseError("no nodes declared")
    out = [0] * len(order)
    for u, v in arcs:
        out[u] |= 1 << v
    return System(list(order), out)


def format_edgelist(s: System) -> str:
    lines = [f"node {lab}" for lab in s.labels]
    lines += [f"{u} -- {v}" for u, v in s.symmetric_edges()]
    lines += [f"{u} -> {v}" for u, v in s.asymmetric_arcs()]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> System:
    rows = [(i, _strip(r)) for i, r in enumerate(text.splitlines(), 1)]
    rows = [(i, r) for i, r in rows if r]
    if not rows:
        raise ParseError("empty matrix file")
    lineno, head = rows[0]
    try:
        n = int(head)
    except ValueError:
        raise ParseError(f"expected node count, got {head!r}", lineno) from None
    if n <= 0:
        raise ParseError("no nodes declared", lineno)
    if len(rows) - 1 != n:
        raise ParseError(f"expected {n} matrix rows, found {len(rows) - 1}")
    out = []
    for i, (lineno, row) in enumerate(rows[1:]):
        cells = row.split()
        if len(cells) != n or any(c not in ("0", "1") for c in cells):
            raise ParseError(f"row must hold {n} entries of 0/1", lineno)
        if cells[i] == "1":
            raise ParseError(f"self-loop on v{i}", lineno)
        out.append(sum(1 << j for j, c in enumerate(cells) if c == "1"))
    return System([f"v{i}" for i in range(n)], out)


def format_matrix(s: System) -> str:
    lines = [str(s.n)]
    for i in range(s.n):
        lines.append(" ".join("1" if s.out[i] >> j & 1 else "0" for j in range(s.n)))
    return "\n".join(lines) + "\n"


FORMATS = {"edgelist": (parse_edgelist, format_edgelist), "matrix": (parse_matrix, format_matrix)}


def parse_graph(text: str, fmt: str = "edgelist") -> System:
    try:
        parser = FORMATS[fmt][0]
    except KeyError:
        raise UsageError(f"unknown graph format {fmt!r}") from None
    return parser(text)


def load_graph(path, fmt: str = "edgelist") -> System:
    return parse_graph(Path(path).read_text(encoding="utf-8"), fmt)


def parse_map_entries(text: str) -> list[tuple[str, str | None, int]]:
    """Raw ``(src, dst-or-None, lineno)`` entries of a node-map file."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        toks = line.split()
        if len(toks) != 3 or toks[1] != "=>":
            raise ParseError(f"cannot parse {raw.strip()!r}", lineno)
        dst = None if toks[2] == "!" else toks[2]
        entries.append((toks[0], dst, lineno))
    return entries


def to_dot(s: System, subsumed=(), cycle_edges=(), name: str = "G") -> str:
    """DOT rendering: undirected ties without arrowheads, subsumed nodes dashed,
    chordless-cycle edges bold."""
    subsumed = set(subsumed)
    bold = {frozenset(e) for e in cycle_edges}

    def q(lab):
        return '"' + lab.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = [f"digraph {name} {{"]
    for lab in s.labels:
        attr = " [style=dashed]" if lab in subsumed else ""
        lines.append(f"  {q(lab)}{attr};")
    for u, v in s.symmetric_edges():
        attrs = ["dir=none"]
        if frozenset((u, v)) in bold:
            attrs.append("style=bold")
            attrs.append("penwidth=2.5")
        lines.append(f"  {q(u)} -> {q(v)} [{', '.join(attrs)}];")
    for u, v in s.asymmetric_arcs():
        lines.append(f"  {q(u)} -> {q(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
