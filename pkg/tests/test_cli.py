import json
import os
from pathlib import Path

import pytest

from netclosure import fixtures
from netclosure.cli import main
from netclosure.dynamics import SimConfig, run
from netclosure.formats import format_edgelist, format_matrix
from netclosure.transform import format_map

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("NETCLOSURE_REGEN_GOLDEN") == "1"


def golden(name: str, text: str):
    path = GOLDEN / name
    if REGEN:
        path.write_text(text, encoding="utf-8")
    assert text == path.read_text(encoding="utf-8"), f"golden mismatch: {name}"


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- golden files for every external format ----------------------------------


def test_golden_edgelist(F1):
    golden("F1.edges", format_edgelist(F1))


def test_golden_matrix(F1):
    golden("F1.matrix", format_matrix(F1))


def test_golden_map():
    golden("CX1.map", format_map(fixtures.cx1()))


def test_golden_dot(capsys):
    code, out, _ = cli(capsys, "export-dot", "F1")
    assert code == 0
    golden("F1.dot", out)


def test_golden_trace(F1, tmp_path, capsys):
    out = tmp_path / "t.jsonl"
    code, _, _ = cli(capsys, "simulate", "F1", "--seed", "3", "--checker", "FASTPATH", "--out", str(out))
    assert code == 1  # the fast path disagrees with the oracle on this run
    golden("F1_fastpath_seed3.trace", out.read_text())
    assert out.read_text() == run(F1, SimConfig(seed=3, continuity_checker="FASTPATH")).to_text()


@pytest.mark.parametrize(
    "name, argv",
    [
        ("cycles_F1", ["cycles", "F1"]),
        ("check_del_F1_ab", ["check-del", "F1", "--edge", "a,b", "--oracle"]),
        ("check_add_GT_xz", ["check-add", "GT", "--edge", "x,z"]),
        ("reduce_F1", ["reduce", "F1", "--trace"]),
        ("analyze_F1", ["analyze", "F1"]),
    ],
)
def test_golden_reports(capsys, name, argv):
    _, text, _ = cli(capsys, *argv)
    _, js, _ = cli(capsys, *argv, "--json")
    golden(name + ".txt", text)
    golden(name + ".json", js)
    assert list(json.loads(js)) == ["input", "analyses", "results", "findings"]


def _leaves(v):
    if isinstance(v, dict):
        for k, x in v.items():
            yield str(k)
            yield from _leaves(x)
    elif isinstance(v, list):
        for x in v:
            yield from _leaves(x)
    elif v is not None and not isinstance(v, bool):
        yield str(v)


@pytest.mark.parametrize("argv", [["analyze", "F1"], ["check-del", "F1", "--edge", "d,g", "--oracle"],
                                  ["separated", "F1", "--x", "a", "--z", "d"]])
def test_text_and_json_carry_same_facts(capsys, argv):
    _, text, _ = cli(capsys, *argv)
    _, js, _ = cli(capsys, *argv, "--json")
    for leaf in _leaves(json.loads(js)):
        assert leaf in text


def test_reports_are_byte_identical(capsys):
    a = cli(capsys, "analyze", "F2", "--json")
    b = cli(capsys, "analyze", "F2", "--json")
    assert a == b


# -- commands and exit codes ----------------------------------------------------


def test_cycles_F1(capsys):
    code, out, _ = cli(capsys, "cycles", "F1", "--json")
    assert code == 0 and json.loads(out)["results"]["cycles"] == ["<b,d,g,e>"]


def test_check_del_bc_reports_disagreement(capsys):
    code, out, _ = cli(capsys, "check-del", "F1", "--edge", "b,c", "--oracle", "--json")
    res = json.loads(out)
    assert res["results"]["verdict"] == "CONTINUOUS"
    assert res["results"]["oracle_continuous"] is False
    assert code == 1 and res["findings"]


def test_check_add_GT_exit_1(capsys):
    code, out, _ = cli(capsys, "check-add", "GT", "--edge", "x,z", "--json")
    r = json.loads(out)["results"]
    assert code == 1 and r["claim_applies"] and r["oracle_continuous"] is False


def test_check_map_cx1(capsys, tmp_path):
    src = tmp_path / "s.edges"
    dst = tmp_path / "d.edges"
    mp = tmp_path / "m.map"
    src.write_text(fixtures.fixture_text("CX1_src"))
    dst.write_text(fixtures.fixture_text("CX1_dst"))
    mp.write_text(fixtures.fixture_text("CX1", ".map"))
    code, out, _ = cli(capsys, "check-map", str(src), str(dst), "--map", str(mp), "--json")
    r = json.loads(out)["results"]
    assert code == 0 and r["continuous"] and r["surjective"] and r["monotone"]


def test_check_map_discontinuous(capsys, tmp_path):
    mp = tmp_path / "id.map"
    mp.write_text("".join(f"{v} => {v}\n" for v in "abcdefghi"))
    code, out, _ = cli(capsys, "check-map", "F1", "F2", "--map", str(mp), "--json")
    assert code == 1 and json.loads(out)["results"]["witness"] == ["e"]


@pytest.mark.parametrize(
    "argv, key, value",
    [
        (["closure", "F1", "--set", "b"], "closure", ["a", "b"]),
        (["closed-sets", "CX1_dst"], "count", 2),
        (["generators", "F1", "--set", "e,h"], "generators", [["e"]]),
        (["separated", "F1", "--x", "e,g,h", "--z", "f,i"], "separated", True),
        (["connected", "F1", "--set", "e,g,h,f,i"], "connected", False),
        (["reduce", "F1"], "core", ["b", "d", "e", "g"]),
    ],
)
def test_query_commands(capsys, argv, key, value):
    code, out, _ = cli(capsys, *argv, "--json")
    assert code == 0 and json.loads(out)["results"][key] == value


def test_matrix_input(capsys, tmp_path, F1):
    p = tmp_path / "f1.txt"
    p.write_text(format_matrix(F1))
    code, out, _ = cli(capsys, "cycles", str(p), "--format", "matrix", "--json")
    assert code == 0 and json.loads(out)["results"]["cycles"] == ["<v1,v3,v6,v4>"]


def test_audit_command(capsys):
    code, out, _ = cli(capsys, "audit", "--max-n", "3", "--json")
    rep = json.loads(out)
    assert code == 1  # twin edges already change the closed sets at n = 2
    assert rep["results"]["max_n"] == 3
    code, out, _ = cli(capsys, "audit", "--max-n", "4", "--claims", "closure-axioms", "--json")
    assert code == 0 and json.loads(out)["findings"] == []


def test_simulate_summary(capsys):
    code, out, _ = cli(capsys, "simulate", "C4", "--json")
    r = json.loads(out)["results"]
    assert code == 0 and r["halt"] == "FIXPOINT" and r["steps"] == 0


def test_export_dot_to_file(capsys, tmp_path, F1):
    p = tmp_path / "g.dot"
    code, out, _ = cli(capsys, "export-dot", "F1", "--out", str(p))
    assert code == 0 and out == ""
    assert "style=dashed" in p.read_text()


@pytest.mark.parametrize(
    "argv, code, msg",
    [
        (["analyze", "EMPTY"], 2, "no nodes"),
        (["closure", "F1", "--set", "a,zz"], 2, "zz"),
        (["closure", "F1", "--set", "a,,b"], 2, "comma"),
        (["check-del", "F1", "--edge", "a"], 2, "two labels"),
        (["cycles", "nowhere.edges"], 2, "no such file"),
        (["audit", "--max-n", "7"], 3, "size"),
        (["closed-sets", "F1", "--max-n", "5"], 3, "limit"),
        (["frobnicate"], 2, ""),
        (["simulate", "F1", "--p-add", "0.5"], 2, "p_add"),
    ],
)
def test_error_exit_codes(capsys, tmp_path, monkeypatch, argv, code, msg):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "EMPTY").write_text("# nothing here\n")
    got, _, err = cli(capsys, *argv)
    assert got == code
    assert msg in err


def test_stdin_input(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("x -- y\ny -- z\n"))
    code, out, _ = cli(capsys, "closure", "-", "--set", "y", "--json")
    assert code == 0 and json.loads(out)["results"]["closure"] == ["x", "y", "z"]
