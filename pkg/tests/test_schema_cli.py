import json
import subprocess
import sys
from pathlib import Path

import pytest

from gencluster import cli
from gencluster.report import Report
from gencluster.schema import (InputError, load_pattern, parse_walk, pattern_from_dict, pattern_to_dict,
                               seed_from_dict, seed_to_dict)
from gencluster.symalg import NotLaurentError

DEMO = Path(__file__).resolve().parents[1] / "demos" / "patterns" / "rank2_r21.json"
BASE = {"B0": [[0, -1], [1, 0]], "R": [2, 1]}


def write(tmp_path, data, name="p.json"):
    f = tmp_path / name
    f.write_text(json.dumps(data))
    return str(f)


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_modes():
    p = pattern_from_dict({**BASE, "Z": {"1,1": "z"}, "coefficients": {"mode": "principal"}})
    assert p.frozen == ("y1", "y2") and "z" in p.semifield
    p = pattern_from_dict(BASE)
    assert p.frozen == () and p.semifield.generators == ("z1_1",)
    p = pattern_from_dict({**BASE, "Z": {"(1,1)": 1}, "coefficients": {"mode": "geometric", "C0": [[1, -1]]}})
    assert p.C0.tolist() == [[1, -1]] and len(p.semifield) == 1
    p = pattern_from_dict({**BASE, "R": [3, 1], "Z": {"1,1": {"a": 2}}})
    assert p.kit.z(0, 2) == p.kit.z(0, 1)


def test_explicit_round_trip(example):
    data = pattern_to_dict(example)
    q = pattern_from_dict(json.loads(json.dumps(data)))
    assert q.B0.tolist() == example.B0.tolist() and q.R == example.R
    assert q.seed((0, 1)).X == example.seed((0, 1)).X


@pytest.mark.parametrize("data", [
    "not an object",
    {"R": [1, 1]},
    {"B0": [[0, 1], [1, 0]]},
    {"B0": [[0, 1.5], [-1, 0]]},
    {**BASE, "R": [0, 1]},
    {**BASE, "Z": {"2,1": "z"}},
    {**BASE, "Z": {"1-1": "z"}},
    {**BASE, "coefficients": {"mode": "geometric"}},
    {**BASE, "coefficients": {"mode": "bogus"}},
    {**BASE, "schema": "other/2"},
    {**BASE, "S": [1, 1]},
])
def test_bad_pattern_files(data):
    with pytest.raises(InputError):
        pattern_from_dict(data)


def test_walks_and_seed_records(example):
    assert parse_walk("1,2,1", 2) == (0, 1, 0)
    assert parse_walk("", 2) == ()
    for bad in ("1,3", "a", "0"):
        with pytest.raises(InputError):
            parse_walk(bad, 2)
    s = example.seed((0, 1))
    rec = json.loads(json.dumps(seed_to_dict(s)))
    assert rec["walk"] == [1, 2]
    assert seed_from_dict(example, rec) == s


def test_mutate_cli(capsys):
    code, out, _ = run(capsys, "mutate", DEMO, "1,2", "--show", "x,b", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["B"] == [[0, -1], [1, 0]]
    p = load_pattern(DEMO)
    assert p.ring.parse(data["X"][0]) == p.ring.parse("(1 + z*y1*x2 + y1^2*x2^2)/x1")
    code, out, _ = run(capsys, "mutate", DEMO, "1", "--show", "all")
    assert code == 0 and "x1 = " in out and "C = " in out and "D = " in out
    assert run(capsys, "mutate", DEMO, "1", "--show", "q")[0] == 2
    assert run(capsys, "mutate", DEMO, "3")[0] == 2
    code, out, _ = run(capsys, "mutate", DEMO, "1", "--show", "b", "--standard", "--format", "json")
    assert json.loads(out)["B"] == [[0, 1], [-2, 0]]


@pytest.mark.parametrize("identity", sorted(cli.IDENTITIES))
def test_verify_cli(capsys, identity):
    code, out, _ = run(capsys, "verify", DEMO, "--identity", identity, "--walks", 4, "--max-len", 3)
    data = json.loads(out)
    assert code == 0 and data["pass"] and data["walks_checked"] == 4


def test_verify_reports_failures(capsys, monkeypatch):
    def failing(p, walk):
        return Report("cluster-formula").fail(walk=list(walk), entry=[0, 0])

    monkeypatch.setitem(cli.IDENTITIES, "cluster-formula", failing)
    code, out, _ = run(capsys, "verify", DEMO, "--identity", "cluster-formula")
    assert code == 1 and json.loads(out)["pass"] is False

    def broken(p, walk):
        raise NotLaurentError("x")

    monkeypatch.setitem(cli.IDENTITIES, "cluster-formula", broken)
    assert run(capsys, "verify", DEMO, "--identity", "cluster-formula")[0] == 3


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "mutate", tmp_path / "missing.json")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "verify", bad, "--identity", "structure")[0] == 2
    assert run(capsys, "verify", DEMO, "--identity", "nope")[0] == 2
    assert run(capsys)[0] == 2


def test_fpoly_cli(capsys):
    code, out, _ = run(capsys, "fpoly", DEMO, "1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["variables"][0]["g"] == [-1, 0]
    p = load_pattern(DEMO)
    assert p.ring.parse(data["variables"][0]["F"]) == p.ring.parse("1 + z*y1 + y1^2")


def test_graph_cli(capsys, tmp_path):
    code, out, err = run(capsys, "graph", DEMO, "--check", "agree", "--check", "adjacency",
                         "--check", "cluster-determines-seed")
    assert code == 0 and len(json.loads(out)["vertices"]) == 6
    assert all(json.loads(line)["pass"] for line in err.strip().splitlines())
    code, out, _ = run(capsys, "graph", DEMO, "--format", "dot", "--matrix-seeds")
    assert code == 0 and out.count(" -- ") == 6
    target = tmp_path / "g.dot"
    assert run(capsys, "graph", DEMO, "--format", "dot", "--output", target)[0] == 0
    assert target.read_text().startswith("graph exchange")
    wild = write(tmp_path, {"B0": [[0, -2], [2, 0]]})
    code, out, err = run(capsys, "graph", wild, "--budget", 8, "--check", "adjacency")
    assert code == 4 and "incomplete" in err and json.loads(out)["complete"] is False
    assert run(capsys, "graph", wild, "--budget", 0)[0] == 2


def test_recover_cli(capsys, tmp_path):
    p = load_pattern(DEMO)
    s = p.seed((0, 1))
    cluster = write(tmp_path, {"X": [str(x) for x in s.X]}, "c.json")
    code, out, _ = run(capsys, "recover", DEMO, "--cluster", cluster, "--what", "both")
    data = json.loads(out)
    assert code == 0 and data["B"] == s.B.tolist() and data["C"] == p.c_matrix(s).tolist()
    junk = write(tmp_path, {"X": ["x1^2", "x2"]}, "j.json")
    assert run(capsys, "recover", DEMO, "--cluster", junk)[0] == 2
    trivial = write(tmp_path, BASE)
    assert run(capsys, "recover", trivial, "--cluster", cluster, "--what", "c")[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "gencluster", "mutate", str(DEMO), "2", "--show", "b"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and "B = [[0, 1], [-1, 0]]" in res.stdout
