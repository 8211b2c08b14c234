import json
import subprocess
import sys

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ordstat import load_fixture, sf_second
from ordstat.cli import EXIT_INCONSISTENT, EXIT_INPUT, EXIT_OK, main
from ordstat.scenario import fixture_text


@pytest.fixture
def fixture_file(tmp_path):
    def write(name):
        p = tmp_path / f"{name}.json"
        p.write_text(fixture_text(name))
        return p
    return write


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_consistent_fixture(capsys, fixture_file):
    code, out, _ = run(capsys, "verify", fixture_file("pareto_locations"))
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["id"] == "T3.1" and report["consistent"] and report["hypotheses_all_pass"]
    assert report["conclusion_verdict"]["status"] == "holds"


def test_verify_inconsistent_exit_code(capsys, tmp_path):
    d = {"v": 1, "baseline": {"family": "pareto", "params": {"a": 1}},
         "A": {"lambda": 2, "theta": 3, "alpha": 0.8, "n": 3,
               "generator": {"family": "independence"}},
         "B": {"lambda": 2, "theta": 3, "alpha": 0.8, "n": 3,
               "generator": {"family": "gumbel_hougaard", "params": {"a": 2}}}}
    p = tmp_path / "s.json"
    p.write_text(json.dumps(d))
    code, out, _ = run(capsys, "verify", p, "--theorem", "T3.18")
    assert code == EXIT_INCONSISTENT
    assert json.loads(out)["consistent"] is False


def test_verify_csv_and_grid(capsys, fixture_file):
    code, out, _ = run(capsys, "verify", fixture_file("frailty_crossing"), "--csv",
                       "--grid", "8.001:60:128")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "item,passed,detail"
    assert lines[-1].startswith("consistent,true")
    assert "\r" not in out


def test_verify_monte_carlo_uses_seed_env(capsys, fixture_file, monkeypatch):
    path = fixture_file("pareto_locations")
    monkeypatch.setenv("ORDSTAT_SEED", "17")
    _, out1, _ = run(capsys, "verify", path, "--mc", 20000)
    _, out2, _ = run(capsys, "verify", path, "--mc", 20000, "--seed", 3)
    mc1, mc2 = json.loads(out1)["monte_carlo"], json.loads(out2)["monte_carlo"]
    assert mc1["seed"] == mc2["seed"] == 17
    assert mc1 == mc2
    assert mc1["batches"]["A"]["max_z"] < 5
    monkeypatch.setenv("ORDSTAT_SEED", "-1")
    assert run(capsys, "verify", path, "--mc", 20000)[0] == EXIT_INPUT


@pytest.mark.parametrize("argv", [
    ["verify", "missing.json"],
    ["verify", "{fx}", "--theorem", "T0.0"],
    ["verify", "{fx}", "--grid", "1:2"],
    ["verify", "{fx}", "--grid", "10:60:64"],
    ["curves", "{fx}", "--what", "density"],
    ["check-major", "--x", "1,2"],
    ["check-major", "--x", "1,a", "--y", "1,2"],
    ["check-major", "--x", "1,2,3", "--y", "1,2"],
    ["reproduce", "3a"],
    ["bogus"],
])
def test_input_errors_exit_one(argv, capsys, fixture_file):
    fx = fixture_file("pareto_locations")
    code, _, _ = run(capsys, *[a.replace("{fx}", str(fx)) for a in argv])
    assert code == EXIT_INPUT


def test_unknown_theorem_lists_ids(capsys, fixture_file):
    _, _, err = run(capsys, "verify", fixture_file("pareto_locations"), "--theorem", "T0.0")
    assert "T3.14" in err


def test_curves_csv(capsys, fixture_file, tmp_path):
    path = fixture_file("pareto_locations")
    code, out, _ = run(capsys, "curves", path, "--what", "sf", "--grid", "10:20:11")
    assert code == EXIT_OK
    rows = out.splitlines()
    assert rows[0] == "x,value_A,value_B,diff" and len(rows) == 12
    data = np.array([[float(v) for v in r.split(",")] for r in rows[1:]])
    s = load_fixture("pareto_locations")
    assert_allclose(data[:, 1], sf_second(s.A, data[:, 0]), rtol=1e-15)
    assert_allclose(data[:, 3], data[:, 1] - data[:, 2], rtol=1e-15)
    target = tmp_path / "out.csv"
    run(capsys, "curves", path, "--what", "sf", "--grid", "10:20:11", "--out", target)
    assert target.read_bytes() == out.encode()


def test_hazard_curves_are_finite_on_fixture_grid(capsys, fixture_file):
    code, out, _ = run(capsys, "curves", fixture_file("truncweibull_scales"), "--what", "hazard")
    assert code == EXIT_OK
    data = np.array([[float(v) for v in r.split(",")] for r in out.splitlines()[1:]])
    assert np.all(np.isfinite(data[:, 1:3])) or np.any(np.isnan(data[:, 1:3]))
    assert np.all(data[:, 1:3][np.isfinite(data[:, 1:3])] >= 0)


def test_reproduce_all_is_byte_identical(capsys, tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    assert run(capsys, "reproduce", "all", "--out", first)[0] == EXIT_OK
    assert run(capsys, "reproduce", "all", "--out", second)[0] == EXIT_OK
    for fig in ("1a", "1b", "2a", "2b"):
        a = (first / f"figure_{fig}.csv").read_bytes()
        assert a == (second / f"figure_{fig}.csv").read_bytes()
        assert b"\r\n" not in a and a.startswith(b"x,value_A,value_B,diff\n")
        summary = json.loads((first / f"figure_{fig}.json").read_text())
        assert summary["matches"]


@pytest.mark.parametrize("fig,outcome", [("1a", "A_ge_B"), ("1b", "A_ge_B"),
                                         ("2a", "crossing"), ("2b", "crossing")])
def test_reproduce_outcomes(fig, outcome, capsys, tmp_path):
    code, out, _ = run(capsys, "reproduce", fig, "--out", tmp_path)
    summary = json.loads(out)
    assert code == EXIT_OK and summary["observed"] == outcome
    if outcome == "crossing":
        assert summary["crossings"] and summary["verdict"]["witness"]


@pytest.mark.parametrize("x,y,relation,expected", [
    ("2,4,7", "5,7,9", "w_sub", "true"),
    ("2,2,2", "1,2,3", "m", "true"),
    ("3,5,8", "7,9,11", "m", "false index=1"),
    ("1,2,3", "2,2,2", "m", "false index=1"),
])
def test_check_major(x, y, relation, expected, capsys):
    code, out, _ = run(capsys, "check-major", "--x", x, "--y", y, "--relation", relation)
    assert code == EXIT_OK and out.strip() == expected


def test_check_major_file(capsys, tmp_path):
    p = tmp_path / "v.json"
    p.write_text(json.dumps({"x": [2, 2, 2], "y": [3, 2, 1]}))
    assert run(capsys, "check-major", p)[1].strip() == "true"


def test_listings(capsys):
    code, out, _ = run(capsys, "list-theorems", "--json")
    assert code == EXIT_OK and len(json.loads(out)) == 27
    code, out, _ = run(capsys, "list-theorems")
    assert out.splitlines()[0].startswith("T3.1 ")
    code, out, _ = run(capsys, "list-baselines", "--json")
    tags = json.loads(out)
    assert "pareto" in tags["baselines"] and "clayton" in tags["generators"]
    assert run(capsys, "list-baselines")[0] == EXIT_OK


def test_console_script_exit_code(tmp_path):
    done = subprocess.run([sys.executable, "-m", "ordstat.cli", "list-theorems"],
                          capture_output=True, text=True)
    assert done.returncode == 0 and "T3.18" in done.stdout
    done = subprocess.run([sys.executable, "-m", "ordstat.cli", "verify", str(tmp_path / "x")],
                          capture_output=True, text=True)
    assert done.returncode == EXIT_INPUT and done.stderr.startswith("error:")
