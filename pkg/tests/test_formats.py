import pytest
from hypothesis import given

from netclosure import ParseError, fixtures
from netclosure.formats import (
    format_edgelist,
    format_matrix,
    parse_edgelist,
    parse_graph,
    parse_map_entries,
    parse_matrix,
    to_dot,
)
from netclosure.transform import format_map, parse_map

from conftest import systems


@given(systems())
def test_edgelist_round_trip(s):
    assert parse_edgelist(format_edgelist(s)) == s


@given(systems())
def test_matrix_round_trip(s):
    assert parse_matrix(format_matrix(s)) == s


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_fixture_round_trip(name):
    s = fixtures.load(name)
    assert parse_edgelist(format_edgelist(s)) == s


def test_comments_duplicates_and_blank_lines():
    s = parse_edgelist("# hi\n\nx -- y   # tie\ny -- x\nx -> z\nnode w\n")
    assert s.labels == ("x", "y", "z", "w")
    assert s.has_edge("x", "y") and s.has_arc("x", "z") and not s.has_arc("z", "x")


def test_arc_pair_equals_edge():
    assert parse_edgelist("x -> y\ny -> x\n") == parse_edgelist("x -- y\n")


@pytest.mark.parametrize(
    "text, msg",
    [
        ("", "no nodes"),
        ("# only a comment\n", "no nodes"),
        ("x -- x\n", "line 1"),
        ("x -- \n", "line 1"),
        ("a -- b\nx ~ y\n", "line 2"),
        ("node a b\n", "line 1"),
    ],
)
def test_parse_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_edgelist(text)


@pytest.mark.parametrize("text", ["", "1 0\n0 1\n", "0 1\n1\n", "0 2\n0 0\n", "0 1\n"])
def test_matrix_errors(text):
    with pytest.raises(ParseError):
        parse_matrix(text)


def test_unknown_format():
    with pytest.raises(ValueError):
        parse_graph("x -- y", "gml")


def test_map_round_trip_and_errors():
    f = fixtures.cx1()
    assert parse_map(format_map(f), f.source, f.target) == f
    with pytest.raises(ParseError):
        parse_map_entries("x -> y\n")
    with pytest.raises(ValueError, match="z"):
        parse_map("x => x'\n", f.source, f.target)  # z unlisted
    with pytest.raises(ValueError):
        parse_map("x => x'\nz => x'\n", f.source, f.target)  # not injective


def test_dot_styles(F1):
    dot = to_dot(F1, ["a"], [("b", "d")])
    assert '"a" [style=dashed];' in dot
    assert '"b" -> "d" [dir=none, style=bold, penwidth=2.5];' in dot
    assert '"a" -> "c";' in dot
    assert dot.startswith("digraph G {") and dot.endswith("}\n")
