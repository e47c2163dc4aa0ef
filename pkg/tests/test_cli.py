"""Command line surface: exit codes, file formats, determinism."""

import json
import subprocess
import sys

import pytest

from quivertilt.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, SessionConfig, UsageError, main, parse_window
from quivertilt.linalg import QQ
from quivertilt.modules import projective
from quivertilt.quiver import Quiver, A_INF, truncate

SLICE = [[v, 0] for v in range(9)]
LIFTED = [[v, 1] for v in range(7)] + [[7, 0], [8, 0]]


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)
    return write


@pytest.fixture
def ainf(files):
    return files("ainf.json", {"family": "AInf", "window": [0, 8]})


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_knit_a2_three_vertices(files, capsys):
    q = files("a2.json", {"vertices": [0, 1], "arrows": [{"id": "a", "src": 0, "tgt": 1}]})
    code, out, _ = run(["knit", q, "--depth", "5"], capsys)
    assert code == EXIT_OK
    nodes = [l for l in out.splitlines() if "label=" in l]
    assert len(nodes) == 3
    assert all("dim=(" in l for l in nodes)


def test_knit_json_and_determinism(files, tmp_path, capsys):
    q = files("a3.json", {"vertices": [0, 1, 2], "arrows": [{"id": "a", "src": 0, "tgt": 1},
                                                             {"id": "b", "src": 2, "tgt": 1}]})
    j1, j2 = str(tmp_path / "c1.json"), str(tmp_path / "c2.json")
    _, out1, _ = run(["knit", q, "--depth", "4", "--json", j1], capsys)
    _, out2, _ = run(["knit", q, "--depth", "4", "--json", j2], capsys)
    assert out1 == out2
    a, b = open(j1).read(), open(j2).read()
    assert a == b
    doc = json.loads(a)
    assert json.loads(json.dumps(doc)) == doc


def test_knit_post_side(ainf, capsys):
    code, out, _ = run(["knit", ainf, "--depth", "2", "--side", "post"], capsys)
    assert code == EXIT_OK and out.startswith("digraph")


def test_malformed_json(files, capsys):
    bad = files("bad.json", '{"vertices": [0, 1], "arrows": [\n')
    code, _, err = run(["knit", bad], capsys)
    assert code == EXIT_USAGE
    assert "bad.json:2:1:" in err


def test_missing_file(tmp_path, capsys):
    code, _, err = run(["knit", str(tmp_path / "nope.json")], capsys)
    assert code == EXIT_USAGE and "nope.json" in err


def test_unknown_family(files, capsys):
    q = files("q.json", {"family": "E8", "window": [0, 4]})
    assert run(["knit", q], capsys)[0] == EXIT_USAGE


def test_tilt_projective_slice(ainf, files, capsys):
    s = files("s.json", {"vertices": SLICE})
    code, out, _ = run(["tilt", ainf, s], capsys)
    rep = json.loads(out)
    assert code == EXIT_OK and rep["verdict"] is True and rep["section"]["ok"] is True


def test_tilt_m_and_tau_m(ainf, files, capsys):
    s = files("s.json", {"vertices": [[1, 0], [1, 1]]})
    code, out, _ = run(["tilt", ainf, s], capsys)
    assert code == EXIT_FAIL and json.loads(out)["verdict"] is False


def test_tilt_unknown_vertex(ainf, files, capsys):
    s = files("s.json", {"vertices": [[99, 0]]})
    code, _, err = run(["tilt", ainf, s], capsys)
    assert code == EXIT_USAGE and "unknown vertex" in err


def test_tilt_module_list(files, capsys):
    q = truncate(A_INF, (0, 3))
    fq = q.finite()
    qf = files("q.json", {"family": "AInf", "window": [0, 3]})
    mods = [projective(fq, v, QQ).to_dict() for v in fq.vertices]
    s = files("m.json", {"modules": mods})
    code, out, _ = run(["tilt", qf, s], capsys)
    assert code == EXIT_OK and json.loads(out)["verdict"] is True


def test_bb_lifted_slice_with_k0(ainf, files, capsys):
    s = files("s.json", {"vertices": LIFTED})
    code, out, _ = run(["bb", ainf, s, "--k0"], capsys)
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["verdict"] is True and rep["failures"] == []
    assert rep["global_dimension"] == 1
    assert rep["k0"]["unimodular"] is True and len(rep["k0"]["matrix"]) == 9


def test_bb_refuses_non_tilting(ainf, files, capsys):
    s = files("s.json", {"vertices": [[1, 0], [1, 1]]})
    code, out, err = run(["bb", ainf, s], capsys)
    assert code == EXIT_FAIL and out == "" and "not a tilting set" in err


def test_catalog_ainf(capsys):
    code, out, _ = run(["catalog", "ainf", "--window", "0..12"], capsys)
    rep = json.loads(out)
    assert code == EXIT_OK and rep["ok"] and rep["failures"] == []


def test_catalog_dinf_orbits(tmp_path, capsys):
    dot = str(tmp_path / "d.dot")
    code, out, _ = run(["catalog", "dinf", "--window", "0..12", "--dot", dot], capsys)
    rep = json.loads(out)
    assert code == EXIT_OK
    assert all(v["agrees"] for v in rep["orbits"].values())
    assert open(dot).read().startswith("digraph DInf")


def test_catalog_small_window_skips(capsys):
    code, out, _ = run(["catalog", "dinf", "--window", "0..4", "--margin", "0"], capsys)
    rep = json.loads(out)
    assert code == EXIT_OK
    assert any("skipped" in it for it in rep["items"])
    assert "skipped" in rep["orbits"]


def test_catalog_deterministic(capsys):
    a = run(["catalog", "ainfinf", "--window", "-5..5"], capsys)
    b = run(["catalog", "ainfinf", "--window", "-5..5"], capsys)
    assert a == b


def test_usage_errors(capsys):
    assert run(["catalog", "e8"], capsys)[0] == EXIT_USAGE
    assert run(["catalog", "ainf", "--window", "5..1"], capsys)[0] == EXIT_USAGE
    assert run(["catalog", "ainf", "--margin", "-1"], capsys)[0] == EXIT_USAGE
    assert run(["frobnicate"], capsys)[0] == EXIT_USAGE
    assert run(["--field", "4", "catalog", "ainf"], capsys)[0] == EXIT_USAGE


def test_parse_window():
    assert parse_window("0..12") == (0, 12)
    assert parse_window("-3,4") == (-3, 4)
    with pytest.raises(UsageError):
        parse_window("zero..one")


def test_session_config():
    with pytest.raises(UsageError):
        SessionConfig(QQ, margin=-1)


def test_field_choice(files, capsys):
    q = files("a2.json", {"vertices": [0, 1], "arrows": [{"id": "a", "src": 0, "tgt": 1}]})
    assert run(["--field", "7", "knit", q, "--depth", "3"], capsys)[0] == EXIT_OK


def test_quiver_json_roundtrip():
    q = truncate(A_INF, (0, 5)).finite()
    d = q.to_dict()
    assert Quiver.from_dict(json.loads(json.dumps(d))).to_dict() == d


def test_module_entry_point(files):
    q = files("a2.json", {"vertices": [0, 1], "arrows": [{"id": "a", "src": 0, "tgt": 1}]})
    r = subprocess.run([sys.executable, "-m", "quivertilt", "knit", q, "--depth", "3"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.count("label=") == 3
