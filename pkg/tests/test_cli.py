import json
import subprocess
import sys

import pytest

from madtree import io
from madtree.cli import main
from madtree.generators import gen_random_connected
from madtree.graph import Graph


def write(tmp_path, name, g, comments=()):
    path = tmp_path / name
    path.write_text(io.format_graph(g, comments))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def test_solve_oracle_yes(tmp_path, capsys):
    c4 = write(tmp_path, "c4.gr", Graph.cycle(4))
    assert run(capsys, "solve", "--algo", "oracle", c4, "--budget", "10")[:2] == (0, "W=10 yes")


def test_solve_treewidth(tmp_path, capsys):
    k4 = write(tmp_path, "k4.gr", Graph.complete(4))
    assert run(capsys, "solve", "--algo", "treewidth", k4)[:2] == (0, "W=9")


def test_solve_above_no(tmp_path, capsys):
    c4 = write(tmp_path, "c4.gr", Graph.cycle(4))
    assert run(capsys, "solve", "--algo", "above", c4, "--budget", "9")[:2] == (1, "no")


def test_wiener(tmp_path, capsys):
    assert run(capsys, "wiener", write(tmp_path, "p4.gr", Graph.path(4)))[:2] == (0, "10")
    assert run(capsys, "wiener", write(tmp_path, "c4.gr", Graph.cycle(4)))[:2] == (0, "8")


def test_gen_x3c_has_budget(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "x3c", "--q", "1", "--s", "1", "--planted", "--seed", "7")
    assert code == 0 and "c budget 9" in out
    g, notes = io.parse_graph(out)
    assert g == Graph(4, [(0, 3), (1, 3), (2, 3)]) and notes["budget"] == "9"


def test_gen_x3c_budget_sidecar_drives_solve(tmp_path, capsys):
    path = tmp_path / "r.gr"
    x3c = tmp_path / "r.x3c"
    assert run(capsys, "gen", "x3c", "--q", "2", "--s", "2", "--planted", "--out", str(path), "--x3c-out", str(x3c))[0] == 0
    assert io.read_x3c(x3c)[0] == 6
    assert run(capsys, "solve", "--algo", "oracle", str(path))[:2] == (0, "W=58 yes")


def test_check_tree(tmp_path, capsys):
    g = write(tmp_path, "g.gr", Graph.cycle(4))
    good = write(tmp_path, "t.gr", Graph(4, [(0, 1), (1, 2), (2, 3)]))
    code, out, _ = run(capsys, "check", g, "--tree", good)
    assert code == 0 and "W=10" in out
    bad = write(tmp_path, "b.gr", Graph(4, [(0, 1), (0, 2), (2, 3)]))
    code, out, _ = run(capsys, "check", g, "--tree", bad)
    assert code == 2 and "violation: edge (1, 3) is not in the graph" in out
    short = write(tmp_path, "s.gr", Graph(4, [(0, 1), (1, 2)]))
    code, out, _ = run(capsys, "check", g, "--tree", short)
    assert code == 2 and out.count("violation") == 2


def test_check_td(tmp_path, capsys):
    g = write(tmp_path, "g.gr", Graph.path(3))
    td = tmp_path / "g.td"
    td.write_text(io.format_td([frozenset({0, 1}), frozenset({1, 2})], [(0, 1)], 3))
    code, out, _ = run(capsys, "check", g, "--td", str(td))
    assert code == 0 and "width 1" in out
    td.write_text(io.format_td([frozenset({0, 1}), frozenset({2})], [(0, 1)], 3))
    code, out, _ = run(capsys, "check", g, "--td", str(td))
    assert code == 2 and "edge (2, 3) is in no bag" in out


def test_solve_with_td_file(tmp_path, capsys):
    g = write(tmp_path, "g.gr", Graph.cycle(5))
    td = tmp_path / "g.td"
    td.write_text(io.format_td([frozenset({0, 1, 2}), frozenset({0, 2, 3}), frozenset({0, 3, 4})], [(0, 1), (1, 2)], 5))
    assert run(capsys, "solve", "--algo", "treewidth", g, "--td", str(td))[:2] == (0, "W=20")
    td.write_text(io.format_td([frozenset({0, 1, 2})], [], 5))
    code, _, err = run(capsys, "solve", "--algo", "treewidth", g, "--td", str(td))
    assert code == 2 and "invalid structure" in err


def test_error_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.gr"
    bad.write_text("p edge 2 1\ne 1 9\n")
    code, _, err = run(capsys, "solve", str(bad))
    assert code == 2 and "cannot parse" in err
    disc = write(tmp_path, "d.gr", Graph(3, [(0, 1)]))
    code, _, err = run(capsys, "solve", disc)
    assert code == 2 and "disconnected" in err
    code, _, err = run(capsys, "solve", str(tmp_path / "missing.gr"))
    assert code == 2 and err.startswith("error:")


def test_oracle_size_guard(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("MADST_MAX_ORACLE_N", "4")
    g = write(tmp_path, "p5.gr", Graph.path(5))
    code, _, err = run(capsys, "solve", "--algo", "oracle", g)
    assert code == 2 and "too large" in err


def test_auto_unavailable(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("MADST_MAX_ORACLE_N", "4")
    g = write(tmp_path, "g.gr", gen_random_connected(9, 0.6, seed=3))
    code, _, err = run(
        capsys, "solve", g, "--max-modules", "0", "--max-width", "0", "--max-above-k", "-1", "--threads", "4"
    )
    assert code == 2 and "AlgorithmUnavailable" in err


def test_json_round_trip_and_emit_tree(tmp_path, capsys):
    g = write(tmp_path, "g.gr", Graph.complete(4))
    tree = tmp_path / "t.gr"
    code, out, _ = run(capsys, "solve", "--algo", "modular", g, "--budget", "9", "--json", "--emit-tree", str(tree))
    report = json.loads(out)
    assert code == 0
    assert set(report) == {"algo", "n", "m", "W", "millis", "budget", "decision", "witness_edges"}
    assert (report["algo"], report["n"], report["m"], report["W"], report["decision"]) == ("modular", 4, 6, 9, True)
    assert json.loads(json.dumps(report)) == report
    t, notes = io.read_graph(tree)
    assert notes["wiener"] == "9"
    assert sorted([u + 1, v + 1] for u, v in t.edges()) == sorted(report["witness_edges"])
    code, out, _ = run(capsys, "check", g, "--tree", str(tree))
    assert code == 0


@pytest.mark.parametrize("seed", range(12))
def test_algorithms_agree(tmp_path, capsys, seed):
    g = write(tmp_path, "g.gr", gen_random_connected(7, 0.5, seed))
    values = set()
    for algo in ("oracle", "modular", "treewidth", "above", "vi", "auto"):
        code, out, _ = run(capsys, "solve", "--algo", algo, g, "--json")
        assert code == 0
        values.add(json.loads(out)["W"])
    assert len(values) == 1


def test_console_entry_point(tmp_path):
    g = write(tmp_path, "p4.gr", Graph.path(4))
    res = subprocess.run([sys.executable, "-m", "madtree.cli", "wiener", g], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "10"
