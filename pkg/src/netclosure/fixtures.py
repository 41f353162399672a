"""Canonical small systems shipped with the package."""
from __future__ import annotations

from importlib import resources

from .formats import parse_edgelist
from .system import System

NAMES = ("F1", "F2", "CX1_src", "CX1_dst", "FIG3B", "FIG3C", "DIAMOND", "DIAMOND_PLUS", "GT", "C4")


def fixture_text(name: str, suffix: str = ".edges") -> str:
    return resources.files("netclosure").joinpath("data").joinpath(name + suffix).read_text(encoding="utf-8")


def load(name: str) -> System:
    key = {n.lower(): n for n in NAMES}.get(name.lower().replace("+", "_plus"))
    if key is None:
        raise KeyError(f"no fixture named {name!r}; choose from {', '.join(NAMES)}")
    return parse_edgelist(fixture_text(key))


def cx1():
    """The two-point example: isolated ``x, z`` mapped onto the edge ``x' -- z'``."""
    from .transform import parse_map

    return parse_map(fixture_text("CX1", ".map"), load("CX1_src"), load("CX1_dst"))
