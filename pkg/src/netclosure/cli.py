"""Command-line interface.

Every command prints a report with four sections in fixed order: ``input``
(graph digests), ``analyses`` (what was asked), ``results`` and ``findings``.
``--json`` switches the rendering, not the content.

Exit codes: 0 ok, 1 findings, 2 usage or parse error, 3 size guard.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import fixtures
from .closure import closure, enumerate_closed_sets, generators, neighborhood, region
from .dynamics import CHECKERS, MODES, SimConfig, metrics, run
from .errors import DEFAULT_MAX_N, SizeLimitError, UsageError, check_size
from .formats import FORMATS, parse_graph, to_dot
from .oracle import CLAIMS, audit
from .reduction import characterization_check, chordless_cycles, reduce, subsumed_pairs
from .separation import are_separated, components
from .system import System
from .transform import (
    check_edge_addition,
    check_edge_deletion,
    is_continuous,
    is_surjective,
    parse_map,
)

EXIT_OK, EXIT_FINDINGS, EXIT_USAGE, EXIT_SIZE = 0, 1, 2, 3
AUDIT_DEFAULT_N = 4


# --------------------------------------------------------------------------
# report rendering


def _norm(v):
    if isinstance(v, float):
        return float(f"{v:.6g}")
    if isinstance(v, dict):
        return {k: _norm(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_norm(x) for x in v]
    return v


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "; ".join(f"{k}={_scalar(x)}" for k, x in v.items())
    return str(v)


def _flat(v) -> bool:
    if isinstance(v, dict):
        return False
    if isinstance(v, (list, tuple)):
        return all(not isinstance(x, (dict, list, tuple)) or _flat_list(x) for x in v)
    return True


def _flat_list(v) -> bool:
    return isinstance(v, (list, tuple)) and all(not isinstance(x, (dict, list, tuple)) for x in v)


def _render(value, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        for k, v in value.items():
            if _flat(v):
                out.append(f"{pad}{k}: {_scalar(v)}")
            else:
                out.append(f"{pad}{k}:")
                _render(v, indent + 1, out)
    else:
        for item in value:
            out.append(f"{pad}- {_scalar(item)}")


class Report:
    SECTIONS = ("input", "analyses", "results", "findings")

    def __init__(self, analyses: list[str]):
        self.input: list[dict] = []
        self.analyses = analyses
        self.results: dict = {}
        self.findings: list = []

    def add_graph(self, source: str, fmt: str, s: System) -> None:
        self.input.append({"source": source, "format": fmt, "n": s.n, "digest": s.digest()})

    def as_dict(self) -> dict:
        return _norm(
            {"input": self.input, "analyses": self.analyses, "results": self.results,
             "findings": self.findings}
        )

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        d = self.as_dict()
        out: list[str] = []
        for sec in self.SECTIONS:
            v = d[sec]
            if not v:
                out.append(f"{sec}: none")
            elif sec == "analyses":
                out.append(f"{sec}: {', '.join(v)}")
            else:
                out.append(f"{sec}:")
                _render(v, 1, out)
        return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# argument helpers


def _load(arg: str, fmt: str) -> tuple[System, str]:
    if arg == "-":
        return parse_graph(sys.stdin.read(), fmt), "<stdin>"
    p = Path(arg)
    if p.is_file():
        return parse_graph(p.read_text(encoding="utf-8"), fmt), arg
    try:
        return fixtures.load(arg), f"fixture:{arg}"
    except KeyError:
        raise UsageError(f"no such file or fixture: {arg}") from None


def _labels(text: str) -> list[str]:
    parts = text.split(",")
    if not text or any(not p for p in parts):
        raise UsageError(f"bad node list {text!r}: use comma-separated labels without spaces")
    return parts


def _set(s: System, text: str):
    return s.nodeset(_labels(text))


def _edge(s: System, text: str) -> tuple[str, str]:
    parts = _labels(text)
    if len(parts) != 2:
        raise UsageError(f"an edge is two labels, got {text!r}")
    for p in parts:
        s.index(p)
    return parts[0], parts[1]


def _guard(args) -> int:
    return DEFAULT_MAX_N if args.max_n is None else args.max_n


def _cycle_dicts(cycles) -> list[str]:
    return [str(c) for c in cycles]


# --------------------------------------------------------------------------
# commands; each fills the report and returns an exit code


def cmd_analyze(args, rep: Report) -> int:
    s, _ = _graph(args, rep)
    check_size(s.n, _guard(args))
    search = chordless_cycles(s)
    nodes = {}
    for lab in s.labels:
        y = s.nodeset([lab])
        nodes[lab] = {
            "neighborhood": neighborhood(s, y).labels(),
            "region": region(s, y).labels(),
            "closure": closure(s, y).labels(),
        }
    rep.results = {
        "nodes": nodes,
        "subsumed_pairs": [list(p) for p in subsumed_pairs(s)],
        "cycles": _cycle_dicts(search),
        "cycles_truncated": search.truncated,
        "components": [c.labels() for c in components(s, s.full())],
        "metrics": metrics(s).as_dict(),
    }
    return EXIT_OK


def cmd_closure(args, rep: Report) -> int:
    s, _ = _graph(args, rep)
    y = _set(s, args.set)
    rep.results = {
        "set": y.labels(),
        "neighborhood": neighborhood(s, y).labels(),
        "region": region(s, y).labels(),
        "closure": closure(s, y).labels(),
    }
    return EXIT_OK


def cmd_closed_sets(args, rep: Report) -> int:
    s, _ = _graph(args, rep)
    fam = enumerate_closed_sets(s, _guard(args))
    rep.results = {"count": len(fam), "closed_sets": [c.labels() for c in fam]}
    return EXIT_OK


def cmd_generators(args, rep: Report) -> int:
    s, _ = _graph(args, rep)
    y = _set(s, args.set)
    gens = generators(s, y, _guard(args))
    rep.results = {
        "set": y.labels(),
        "closure": closure(s, y).labels(),
        "generators": [g.labels() for g in gens],
    }
    return EXIT_OK


def cmd_reduce(args, rep: Report) -> int:
    s, _ = _graph(args, rep)
    check_size(s.n, _guard(args))
    tr = reduce(s)
    ch = characterization_check(s, _guard(args))
    rep.results = {"core": tr.core_nodes.labels(), "deleted": len(tr)}
    if args.trace:
        rep.results["trace"] = [{"deleted": y, "subsumed_by": x} for y, x in tr.steps]
    rep.results["characterization"] = {
        "status": ch.status,
        "cycle_nodes": ch.cycle_nodes,
        "path_nodes": ch.path_nodes,
        "only_in_core": ch.only_in_core,
        "only_predicted": ch.only_predicted,
        "residual": ch.residual,
        "reading": ch.reading,
    }
    return EXIT_OK


def cmd_cycles(args, rep: Report) -> int:
    s, _ = _graph(args, rep)
    search = chordless_cycles(s, args.min_len, args.max_len, args.limit)
    rep.results = {
        "count": len(search),
        "cycles": _cycle_dicts(search),
        "truncated": search.truncated,
    }
    return EXIT_OK


def cmd_separated(args, rep: Report) -> int:
    s, _ = _graph(args, rep)
    x, z = _set(s, args.x), _set(s, args.z)
    r = are_separated(s, x, z)
    rep.results = {"x": x.labels(), "z": z.labels(), "separated": r.separated, "overlaps": r.overlaps}
    return EXIT_OK


def cmd_connected(args, rep: Report) -> int:
    s, _ = _graph(args, rep)
    y = _set(s, args.set)
    comps = components(s, y)
    rep.results = {"set": y.labels(), "connected": len(comps) == 1,
                   "components": [c.labels() for c in comps]}
    return EXIT_OK


def cmd_check_del(args, rep: Report) -> int:
    s, _ = _graph(args, rep)
    x, z = _edge(s, args.edge)
    v = check_edge_deletion(s, x, z, oracle=args.oracle, max_n=_guard(args))
    rep.results = {
        "edge": list(v.edge),
        "verdict": v.verdict,
        "closure_x": v.closure_x,
        "closure_z": v.closure_z,
        "out_degree_x": v.out_degree_x,
        "out_degree_z": v.out_degree_z,
        "cycle": v.cycle,
        "oracle_continuous": v.oracle_continuous,
        "oracle_witness": v.oracle_witness,
        "agreement": v.agreement,
    }
    if v.agreement is False:
        rep.findings.append({
            "kind": "edge-deletion-criterion",
            "edge": list(v.edge),
            "criterion": v.verdict,
            "oracle": "CONTINUOUS" if v.oracle_continuous else "DISCONTINUOUS",
            "witness": v.oracle_witness,
        })
    return EXIT_FINDINGS if rep.findings else EXIT_OK


def cmd_check_add(args, rep: Report) -> int:
    s, _ = _graph(args, rep)
    x, z = _edge(s, args.edge)
    v = check_edge_addition(s, x, z, oracle=not args.no_oracle, max_n=_guard(args))
    rep.results = {
        "edge": list(v.edge),
        "claim_applies": v.claim_applies,
        "common_neighbors": v.common_neighbors,
        "oracle_continuous": v.oracle_continuous,
        "oracle_witness": v.oracle_witness,
        "agreement": v.agreement,
    }
    if v.agreement == "MISMATCH":
        rep.findings.append({
            "kind": "triadic-addition-continuity",
            "edge": list(v.edge),
            "expected": "CONTINUOUS",
            "oracle": "DISCONTINUOUS",
            "witness": v.oracle_witness,
        })
    return EXIT_FINDINGS if rep.findings else EXIT_OK


def cmd_check_map(args, rep: Report) -> int:
    src, _ = _graph(args, rep, args.graph)
    dst, _ = _graph(args, rep, args.target)
    p = Path(args.map)
    if p.is_file():
        text = p.read_text(encoding="utf-8")
    else:
        try:
            text = fixtures.fixture_text(args.map, ".map")
        except (FileNotFoundError, OSError):
            raise UsageError(f"no such map file or fixture: {args.map}") from None
    f = parse_map(text, src, dst)
    v = is_continuous(f, _guard(args))
    rep.results = {
        "map": f.as_dict(),
        "monotone": True,
        "continuous": v.continuous,
        "witness": None if v.witness is None else v.witness.labels(),
        "offending_element": v.offending_element,
        "surjective": is_surjective(f, _guard(args)),
    }
    if not v.continuous:
        rep.findings.append({
            "kind": "discontinuous",
            "witness": v.witness.labels(),
            "offending_element": v.offending_element,
        })
    return EXIT_FINDINGS if rep.findings else EXIT_OK


def cmd_audit(args, rep: Report) -> int:
    max_n = AUDIT_DEFAULT_N if args.max_n is None else args.max_n
    claims = None if args.claims is None else _labels(args.claims)
    r = audit(max_n, claims=claims, directed=args.directed)
    counts = r.counts()
    rep.results = {
        "max_n": r.max_n,
        "directed": r.directed,
        "claims": {c: {"instances": r.instances[c], "findings": counts[c]} for c in r.instances},
    }
    rep.findings = [f.as_dict() for f in r.findings]
    return EXIT_FINDINGS if rep.findings else EXIT_OK


def cmd_simulate(args, rep: Report) -> int:
    s, _ = _graph(args, rep)
    cfg = SimConfig(
        seed=args.seed,
        max_steps=args.max_steps,
        mode=args.mode,
        p_add=args.p_add,
        continuity_checker=args.checker,
        metric_cycle_cap=args.cycle_cap,
    )
    tr = run(s, cfg, _guard(args))
    text = tr.to_text()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    rep.results = {
        "config": cfg.as_dict(),
        "steps": len(tr.steps),
        "halt": tr.reason,
        "ops": [f"{st.op} {st.edge[0]}--{st.edge[1]}" for st in tr.steps],
        "initial_metrics": tr.initial_metrics.as_dict(),
        "final_metrics": tr.halt.metrics.as_dict(),
        "trace": args.out,
    }
    for st in tr.steps:
        for m in st.mismatches:
            rep.findings.append(dict(kind="fastpath-oracle-divergence", step=st.index, **m))
    return EXIT_FINDINGS if rep.findings else EXIT_OK


def cmd_export_dot(args, rep: Report) -> Optional[str]:
    s, _ = _graph(args, rep)
    subsumed = sorted({y for y, _ in subsumed_pairs(s)}, key=s.index)
    cyc = [e for c in chordless_cycles(s) for e in c.edges()]
    dot = to_dot(s, subsumed, cyc)
    if args.out:
        Path(args.out).write_text(dot, encoding="utf-8")
        return ""
    return dot


def _graph(args, rep: Report, arg: Optional[str] = None):
    arg = args.graph if arg is None else arg
    s, src = _load(arg, args.format)
    rep.add_graph(src, args.format, s)
    return s, src


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=sorted(FORMATS), default="edgelist",
                        help="graph file format (default: edgelist)")
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--max-n", type=int, default=None,
                        help=f"size guard for exhaustive scans (default {DEFAULT_MAX_N}); "
                             f"for audit, the largest graph size (default {AUDIT_DEFAULT_N})")

    p = argparse.ArgumentParser(prog="netclosure", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, fn, help_, graph=True):
        sp = sub.add_parser(name, parents=[common], help=help_, description=help_)
        if graph:
            sp.add_argument("graph", help="graph file, '-' for stdin, or a fixture name such as F1")
        sp.set_defaults(fn=fn)
        return sp

    add("analyze", cmd_analyze, "per-node neighbourhoods, regions and closures; cycles; components")
    add("closure", cmd_closure, "closure of a node set").add_argument("--set", required=True)
    add("closed-sets", cmd_closed_sets, "every closed set")
    add("generators", cmd_generators, "minimal generators of a set's closure").add_argument(
        "--set", required=True)
    add("reduce", cmd_reduce, "delete subsumed nodes down to the irreducible core").add_argument(
        "--trace", action="store_true", help="list every deletion")
    sp = add("cycles", cmd_cycles, "chordless cycles of length >= 4")
    sp.add_argument("--min-len", type=int, default=4)
    sp.add_argument("--max-len", type=int, default=None)
    sp.add_argument("--limit", type=int, default=10_000)
    sp = add("separated", cmd_separated, "are two node sets separated?")
    sp.add_argument("--x", required=True)
    sp.add_argument("--z", required=True)
    add("connected", cmd_connected, "is a node set connected?").add_argument("--set", required=True)
    sp = add("check-del", cmd_check_del, "classify deleting a symmetric edge")
    sp.add_argument("--edge", required=True, help="x,z")
    sp.add_argument("--oracle", action="store_true", help="also run the exhaustive continuity test")
    sp = add("check-add", cmd_check_add, "probe the triadic-addition claim for a new edge")
    sp.add_argument("--edge", required=True, help="x,z")
    sp.add_argument("--oracle", action="store_true", help="run the oracle (the default)")
    sp.add_argument("--no-oracle", action="store_true", help="skip the exhaustive continuity test")
    sp = add("check-map", cmd_check_map, "monotone / continuous / surjective node map")
    sp.add_argument("target", help="target graph")
    sp.add_argument("--map", required=True, help="map file, or a fixture name such as CX1")
    sp = add("audit", cmd_audit, "exhaustively audit every claim on small graphs", graph=False)
    sp.add_argument("--directed", action="store_true", help="also audit relation-level claims on directed graphs")
    sp.add_argument("--claims", default=None, help=f"comma-separated subset of: {', '.join(CLAIMS)}")
    sp = add("simulate", cmd_simulate, "seeded continuous-deletion simulation")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-steps", type=int, default=1000)
    sp.add_argument("--mode", choices=MODES, default="DELETION_ONLY")
    sp.add_argument("--p-add", type=float, default=0.0)
    sp.add_argument("--checker", choices=CHECKERS, default="ORACLE")
    sp.add_argument("--cycle-cap", type=int, default=1000)
    sp.add_argument("--out", default=None, help="trace file")
    sp = add("export-dot", cmd_export_dot, "Graphviz rendering")
    sp.add_argument("--out", default=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    rep = Report([args.command])
    try:
        if args.command == "export-dot":
            sys.stdout.write(cmd_export_dot(args, rep))
            return EXIT_OK
        code = args.fn(args, rep)
    except SizeLimitError as e:
        print(f"netclosure: size limit: {e}", file=sys.stderr)
        return EXIT_SIZE
    except (UsageError, OSError) as e:
        print(f"netclosure: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(rep.to_json() if args.json else rep.to_text())
    return code


if __name__ == "__main__":
    sys.exit(main())
