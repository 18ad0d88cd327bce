import json
import subprocess
import sys

import pytest

from gauge_trace import corpus
from gauge_trace.cli import main
from gauge_trace.graph import serialize_graph


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)
    return _write


@pytest.fixture
def graph_file(write):
    return lambda key: write(f"{key}.json", serialize_graph(corpus.load(key)))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_g4(capsys, graph_file):
    code, out, _ = run(capsys, "analyze", graph_file("G4"))
    assert code == 0
    rep = json.loads(out)
    assert rep["freeness"]["free"] is False
    assert rep["loops"]["summable"] == [["a"]]
    assert rep["verdict"]["states_gauge_invariant"] is False
    assert rep["polytope"] == [{"point": {"u": "1/2", "v": "1/2"},
                                "classification": {"kind": "CyclicHarmonic", "loop": ["a"]}}]


def test_analyze_g2(capsys, graph_file):
    rep = json.loads(run(capsys, "analyze", graph_file("G2"))[1])
    assert rep["freeness"]["free"] is True and rep["polytope"] == []
    assert rep["verdict"]["weights_gauge_invariant"] and rep["verdict"]["states_gauge_invariant"]


def test_analyze_broken(capsys, write):
    code, out, err = run(capsys, "analyze", write("broken.json", "{oops"))
    assert code == 2 and out == ""
    assert json.loads(err)["error"]["type"] == "ParseError"


def test_analyze_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", str(tmp_path / "nope.json"))
    assert code == 2 and "ParseError" in err


def test_analyze_is_deterministic(capsys, graph_file, tmp_path):
    path = graph_file("G9")
    first = run(capsys, "analyze", path)[1]
    assert run(capsys, "analyze", path)[1] == first
    out = tmp_path / "rep.json"
    assert run(capsys, "analyze", path, "--out", str(out))[0] == 0
    assert out.read_text() == first


def test_analyze_text(capsys, graph_file):
    out = run(capsys, "analyze", graph_file("G3"), "--format", "text")[1]
    assert "extreme point (u:1/2, v:1/2) -> Boundary(v)" in out
    assert "K(l^2(E* v))" in out


def test_analyze_size_limit(capsys, write):
    big = corpus.disjoint_union(*[corpus.load("G6")] * 13)
    code, _, err = run(capsys, "analyze", write("big.json", serialize_graph(big)))
    assert code == 3 and "SizeLimit" in err


def test_riesz(capsys, graph_file, write):
    code, out, _ = run(capsys, "riesz", graph_file("G3"), write("m.json", {"measure": {"v": "1", "u": "1"}}))
    doc = json.loads(out)
    assert code == 0
    assert doc["mu1"] == {"u": "0", "v": "0"} and doc["mu2"] == {"u": "1", "v": "1"}
    assert doc["eta"] == {"u": "0", "v": "1"} and doc["l1_trace"][:3] == ["2", "1", "0"]
    assert len(doc["l1_trace"]) == 33
    doc = json.loads(run(capsys, "riesz", graph_file("G4"), write("m4.json", {"measure": {"v": 1, "u": 1}}))[1])
    assert doc["mu1"] == {"u": "1", "v": "1"} and doc["mu2"] == {"u": "0", "v": "0"}
    code, _, err = run(capsys, "riesz", graph_file("G2"), write("m2.json", {"measure": {"v": "1"}}))
    assert code == 2 and "NotInvariant" in err


def test_check(capsys, graph_file, write):
    g3 = graph_file("G3")
    nu = {"atoms": [{"path": {"vertex": "v"}, "weight": "1"}, {"path": ["e"], "weight": "1"}]}
    assert run(capsys, "check", g3, write("nu.json", nu), "--depth", "4")[0] == 0
    bad = {"atoms": [{"path": {"vertex": "v"}, "weight": "2"}, {"path": ["e"], "weight": "1"}]}
    code, out, _ = run(capsys, "check", g3, write("bad.json", bad), "--depth", "3")
    shifts = [v for v in json.loads(out)["violations"] if v["kind"] == "shift"]
    assert code == 4 and len(shifts) == 1 and shifts[0]["path"] == ["e"]
    g1 = graph_file("G1")
    assert run(capsys, "check", g1, write("a.json", {"atoms": [{"cycle": ["a"]}]}), "--depth", "5")[0] == 0
    assert run(capsys, "check", g1, "--measure", "cyclic:a")[0] == 0
    assert run(capsys, "check", g3, write("mu.json", {"measure": {"v": "1", "u": "1"}}))[0] == 0


def test_check_size_limit(capsys, graph_file, monkeypatch):
    monkeypatch.setenv("GAUGE_TRACE_MAX_PATHS", "10")
    assert run(capsys, "check", graph_file("G2"), "--measure", "cyclic:b1")[0] == 2
    assert run(capsys, "check", graph_file("G4"), "--measure", "cyclic:a")[0] == 3


def test_polytope(capsys, graph_file):
    doc = json.loads(run(capsys, "polytope", graph_file("G7"))[1])
    kinds = sorted(p["classification"]["kind"] for p in doc["points"])
    assert kinds == ["Boundary", "CyclicHarmonic"]


def test_trace_eval(capsys, graph_file, write):
    g1 = graph_file("G1")
    f = write("f.json", {"terms": [{"beta": ["a"], "gamma": {"vertex": "v"}, "coeff": "1"}]})
    code, out, _ = run(capsys, "trace-eval", g1, f, "--measure", "cyclic:a", "--character", "1:-1")
    assert code == 0 and json.loads(out) == {"value": "-1"}
    fv = write("fv.json", {"terms": [{"beta": {"vertex": "v"}, "gamma": {"vertex": "v"}, "coeff": "1"}]})
    for zeta in ("1", "-1", "i"):
        out = run(capsys, "trace-eval", g1, fv, "--measure", "cyclic:a", "--character", f"1:{zeta}",
                  "--format", "text")[1]
        assert out == "1\n"
    code, _, err = run(capsys, "trace-eval", g1, f, "--measure", "cyclic:a", "--character", "0:1")
    assert code == 2 and "MalformedFunctional" in err


def test_pathspace(capsys, graph_file):
    doc = json.loads(run(capsys, "pathspace", graph_file("G3"), "--depth", "2")[1])
    assert doc["paths"] == [{"vertex": "v"}, ["e"]]


def test_console_entry_point(graph_file):
    proc = subprocess.run([sys.executable, "-m", "gauge_trace", "analyze", graph_file("G1"), "--format", "text"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "CyclicHarmonic(a)" in proc.stdout
