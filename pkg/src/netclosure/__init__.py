"""Neighbourhood closure, continuous transformations and reduction of
finite networks."""
from .closure import (
    closure,
    closure_table,
    enumerate_closed_sets,
    generators,
    is_closed,
    neighborhood,
    region,
    verify_closure_axioms,
)
from .dynamics import SimConfig, SimTrace, metrics, run
from .errors import NetClosureError, ParseError, SizeLimitError, UsageError
from .formats import format_edgelist, format_matrix, load_graph, parse_edgelist, parse_matrix
from .reduction import chordless_cycles, characterization_check, is_irreducible, reduce, subsumed_pairs
from .separation import are_separated, check_separation_preservation, is_connected_set
from .system import NodeSet, System
from .transform import (
    NodeMap,
    apply,
    check_edge_addition,
    check_edge_deletion,
    compose,
    is_continuous,
    is_monotone,
    is_surjective,
    triadic_candidates,
)

__version__ = "0.1.0"

__all__ = [
    "apply",
    "are_separated",
    "characterization_check",
    "check_edge_addition",
    "check_edge_deletion",
    "check_separation_preservation",
    "chordless_cycles",
    "closure",
    "closure_table",
    "compose",
    "enumerate_closed_sets",
    "format_edgelist",
    "format_matrix",
    "generators",
    "is_closed",
    "is_connected_set",
    "is_continuous",
    "is_irreducible",
    "is_monotone",
    "is_surjective",
    "load_graph",
    "metrics",
    "neighborhood",
    "NetClosureError",
    "NodeMap",
    "NodeSet",
    "parse_edgelist",
    "parse_matrix",
    "ParseError",
    "reduce",
    "region",
    "run",
    "SimConfig",
    "SimTrace",
    "SizeLimitError",
    "subsumed_pairs",
    "System",
    "triadic_candidates",
    "UsageError",
    "verify_closure_axioms",
]
