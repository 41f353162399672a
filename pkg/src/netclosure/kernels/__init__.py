"""Subset-table kernels over int64 bitmasks.

Two interchangeable backends implement the same functions: numba-compiled
loops (default when numba imports) and vectorised numpy. Set
``NETCLOSURE_NUMBA=0`` to force the numpy path. ``BACKEND`` names the active
one; ``backends()`` returns every importable implementation, which the test
suite and the benchmark use to cross-check them.
"""
import importlib
import os

from . import _numpy


def _load_numba():
    try:
        return importlib.import_module(__name__ + "._numba")
    except ImportError:  # pragma: no cover - numba missing
        return None


_numba = None
if os.environ.get("NETCLOSURE_NUMBA", "1").lower() not in ("0", "false", "no", "off"):
    _numba = _load_numba()

_impl = _numba if _numba is not None else _numpy
BACKEND = "numba" if _numba is not None else "numpy"

subset_unions = _impl.subset_unions
all_closures = _impl.all_closures
closures_of = _impl.closures_of
continuity_violations = _impl.continuity_violations
any_violation = _impl.any_violation
monotone_violation = _impl.monotone_violation


def backends():
    found = {"numpy": _numpy}
    nb = _load_numba()
    if nb is not None:
        found["numba"] = nb
    return found


__all__ = [
    "BACKEND",
    "all_closures",
    "any_violation",
    "backends",
    "closures_of",
    "continuity_violations",
    "monotone_violation",
    "subset_unions",
]
