import json

import pytest

from lensspine import acceptance, cli
from lensspine.triangulation import fan, to_text


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


SCHEMA = {"command", "inputs", "outputs", "checks", "timing", "ok"}


def test_euclid(capsys):
    code, rep = run_json(capsys, "euclid", "34", "13")
    assert code == 0 and set(rep) == SCHEMA
    assert rep["outputs"]["E"] == 8 and rep["outputs"]["continued_fraction"] == [2, 1, 1, 1, 1, 2]
    assert rep["outputs"]["inverse"] == 21
    assert all(c["passed"] for c in rep["checks"])
    assert run_json(capsys, "euclid", "5", "1")[1]["outputs"]["E"] == 5
    code, rep = run_json(capsys, "euclid", "6", "4")
    assert code == 0 and rep["outputs"] == {"E": 3, "gcd": 2}


def test_euclid_text_and_errors(capsys):
    code, out, _ = run(capsys, "euclid", "34", "13")
    assert "E(34,13) = 8" in out and "[ok]" in out
    code, _, err = run(capsys, "euclid", "0", "0")
    assert code == 2 and "error" in err
    with pytest.raises(SystemExit):
        cli.main(["euclid", "x", "1"])


def test_farey(capsys):
    code, rep = run_json(capsys, "farey", "34", "13")
    assert code == 0 and rep["outputs"]["tree"] == 8 == rep["outputs"]["geodesic_from_0"]
    assert run(capsys, "farey", "4", "2")[0] == 2


def test_distance(capsys):
    code, rep = run_json(capsys, "distance", "7", "2", "--exhaustive")
    assert code == 0 and rep["outputs"]["min_distance"] == 2 == rep["outputs"]["expected"]
    assert run_json(capsys, "distance", "4", "1", "--exhaustive")[1]["outputs"]["min_distance"] == 1
    code, rep = run_json(capsys, "distance", "12", "5", "--exhaustive")
    assert code == 0 and rep["outputs"]["min_distance"] == 3
    code, _, err = run(capsys, "distance", "14", "3", "--exhaustive")
    assert code == 2 and "LENSSPINE_MAX_P" in err


def test_distance_from_file(capsys, tmp_path):
    f = tmp_path / "t.txt"
    f.write_text(to_text(fan(6)))
    code, rep = run_json(capsys, "distance", "6", "1", "--triangulation", str(f))
    assert code == 0 and rep["outputs"]["distance"] == 3
    assert rep["outputs"]["witness"] == [[0, 2], [0, 3], [0, 4]]
    assert run(capsys, "distance", "7", "1", "--triangulation", str(f))[0] == 2
    assert run(capsys, "distance", "6", "1")[0] == 2


def test_bound(capsys):
    code, rep = run_json(capsys, "bound", "6", "1")
    cert = rep["outputs"]["certificate"]
    assert code == 0 and cert["bound_value"] == 3 and cert["target"] == 3


def test_construct_and_render(capsys, tmp_path):
    svg, out, pts = tmp_path / "fig.svg", tmp_path / "t.txt", tmp_path / "p.csv"
    code, rep = run_json(capsys, "construct", "34", "13", "--svg", str(svg), "--out", str(out), "--points-csv", str(pts))
    assert code == 0 and len(rep["outputs"]["witness"]) == 5
    assert rep["outputs"]["certificate"]["profile"] == [0, 2, 3, 5, 8, 13]
    assert svg.read_text().count("<circle") == 34
    assert out.read_text().startswith("p=34\n")
    assert pts.read_text().startswith("k,x,y\n")
    fig2 = tmp_path / "again.svg"
    code, rep = run_json(capsys, "render", "--triangulation", str(out), "--points", str(pts), "--svg", str(fig2))
    assert code == 0 and rep["outputs"]["diagonals"] == 31 and fig2.exists()


def test_construct_small(capsys):
    assert run_json(capsys, "construct", "4", "1")[1]["outputs"]["witness"] == [[0, 2]]
    assert len(run_json(capsys, "construct", "7", "2")[1]["outputs"]["witness"]) == 2


def test_construct_failure_exits_nonzero(capsys):
    code, rep = run_json(capsys, "construct", "34", "13", "--grid", "0.5")
    assert code == 1 and not rep["ok"] and rep["outputs"]["attempts"]


def test_spine(capsys, tmp_path):
    code, rep = run_json(capsys, "spine", "5", "2")
    assert code == 0 and rep["outputs"]["spine_vertex_count"] == 1
    code, rep = run_json(capsys, "spine", "34", "13")
    assert code == 0 and rep["outputs"]["spine_vertex_count"] == 5
    code, rep = run_json(capsys, "spine", "7", "1")
    assert code == 0 and "flat" in rep["outputs"]["degenerate"]
    facets = tmp_path / "f.json"
    code, rep = run_json(capsys, "spine", "7", "2", "--trials", "3", "--facets-json", str(facets))
    assert code == 0 and rep["outputs"]["basepoint_invariant"]
    assert len(json.loads(facets.read_text())) == 14


def test_deterministic_json(capsys):
    a = run_json(capsys, "construct", "9", "2")[1]
    b = run_json(capsys, "construct", "9", "2")[1]
    a.pop("timing"), b.pop("timing")
    assert a == b


def test_selftest_small_cap(capsys, monkeypatch):
    monkeypatch.setattr(
        acceptance,
        "run_all",
        lambda max_p: [acceptance.exhaustive_rotation_distance(max_p), acceptance.property_suites(max_p)],
    )
    code, rep = run_json(capsys, "selftest", "--max-p", "3")
    assert code == 0 and rep["ok"]

    failing = acceptance.CriterionResult(0, "always fails", False, "")
    monkeypatch.setattr(acceptance, "run_all", lambda max_p: [failing])
    assert run(capsys, "selftest")[0] == 1
