import json
import subprocess
import sys

import pytest

from helpers import fixture_path
from paf import cli


def run(capsys, *args):
    code = cli.main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_correlate_factorize_round_trip(capsys, tmp_path):
    g = tmp_path / "g.json"
    code, _, _ = run(capsys, "correlate", fixture_path("coprime_signals.json"), "-o", str(g))
    assert code == 0
    code, out, _ = run(capsys, "factorize", str(g))
    assert code == 0
    doc = json.loads(out)
    assert doc["method"] == "coprime" and doc["residual"] < 1e-8
    f = tmp_path / "f.json"
    f.write_text(out)
    code, out, _ = run(capsys, "verify", str(f))
    assert code == 0 and json.loads(out)["ok"]


def test_enumerate_example(capsys):
    code, out, _ = run(capsys, "enumerate", fixture_path("example_gamma.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 8 and len(doc["solutions"]) == 8
    assert [p["mu"] for p in doc["pairs"]] == [3, 1]
    assert doc["pairs"][0]["delta"] == "inf"
    assert abs(doc["pairs"][1]["delta"][0] + 2) < 1e-6 and abs(doc["pairs"][1]["reflected"][0] + 0.5) < 1e-6
    assert len(doc["circle"]) == 1 and doc["circle"][0]["nu"] == 2
    assert abs(doc["circle"][0]["root"][0] - 1) < 1e-6


def test_enumerate_is_deterministic(capsys):
    a = run(capsys, "enumerate", fixture_path("example_gamma.json"), "--threads", "1")[1]
    b = run(capsys, "enumerate", fixture_path("example_gamma.json"), "--threads", "4")[1]
    assert a == b


def test_factorize_non_coprime(capsys):
    code, out, _ = run(capsys, "factorize", fixture_path("example_gamma.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["method"] == "enumerate" and doc["index"] == [0, 0]


def test_count_and_unique(capsys):
    code, out, _ = run(capsys, "count", fixture_path("coprime_gamma.json"))
    assert code == 0 and json.loads(out) == {"count": 1, "multiplicities": []}
    code, out, _ = run(capsys, "count", fixture_path("example_signals.json"))
    assert json.loads(out) == {"count": 8, "multiplicities": [3, 1]}
    code, out, _ = run(capsys, "check-unique", fixture_path("example_gamma.json"))
    doc = json.loads(out)
    assert code == 0 and doc["unique"] is False
    assert sum(r["on_circle"] for r in doc["roots"]) == 1
    assert sum(r["multiplicity"] for r in doc["roots"]) == 10


def test_roots_and_gcd(capsys):
    code, out, _ = run(capsys, "roots", fixture_path("example_poly.json"))
    doc = json.loads(out)
    assert code == 0 and doc["leading"] == [0.5, 0.0]
    assert {"root": "inf", "multiplicity": 2} in doc["roots"]
    code, out, _ = run(capsys, "gcd", fixture_path("gcd_polys.json"))
    doc = json.loads(out)
    assert code == 0 and doc["gcd"]["degree_bound"] == 1
    assert abs(doc["gcd"]["coeffs"][0][0] - 1) < 1e-12


@pytest.mark.parametrize(
    "name", ["malformed_syntax", "malformed_missing_field", "malformed_length", "malformed_pair"]
)
@pytest.mark.parametrize("command", ["correlate", "enumerate", "verify"])
def test_malformed_exit_2(capsys, name, command):
    code, out, err = run(capsys, command, fixture_path(f"{name}.json"))
    assert code == 2 and out == "" and "parse error" in err


def test_missing_file_exit_2(capsys, tmp_path):
    assert run(capsys, "count", str(tmp_path / "nope.json"))[0] == 2


@pytest.mark.parametrize("command", ["factorize", "enumerate", "count", "check-unique"])
def test_nonpalindromic_exit_3(capsys, command):
    code, out, err = run(capsys, command, fixture_path("nonpalindromic_gamma.json"))
    assert code == 3 and out == "" and "palindromic" in err


def test_verify_failure_exit_3(capsys, tmp_path):
    doc = json.loads(open(fixture_path("coprime_signals.json")).read())
    doc["signals"][0][0][0] += 0.5
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "verify", str(bad), "--gamma", fixture_path("coprime_gamma.json"))
    assert code == 3 and "exceeds" in err


def test_budget_exit_4(capsys):
    code, _, err = run(capsys, "oracle", fixture_path("example_gamma.json"), "--budget", "5")
    assert code == 4 and "budget" in err
    code, out, _ = run(capsys, "oracle", fixture_path("example_gamma.json"))
    assert code == 0 and json.loads(out)["count"] == 8


def test_tolerance_precedence():
    env = {"PAF_TOL_RANK": "1e-6", "PAF_TOL_ROOT": "1e-5"}
    t = cli.resolve_tolerances({"tol_rank": "1e-4"}, env)
    assert t["tol_rank"] == 1e-4
    assert t["tol_root"] == 1e-5
    assert t["tol_circle"] == 1e-6 and t["tol_residual"] == 1e-8


@pytest.mark.parametrize("value", ["-1", "0", "abc", "nan"])
def test_bad_tolerance_exit_2(capsys, value):
    assert run(capsys, "count", fixture_path("coprime_gamma.json"), "--tol-rank", value)[0] == 2


def test_bad_env_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("PAF_TOL_RESIDUAL", "zero")
    assert run(capsys, "count", fixture_path("coprime_gamma.json"))[0] == 2


def test_tolerance_flag_changes_decision(capsys):
    # a huge rank threshold makes the entries look proportional: H = Gamma_jj
    code, out, _ = run(capsys, "count", fixture_path("coprime_gamma.json"), "--tol-rank", "0.5")
    assert code == 0 and json.loads(out)["count"] == 2 ** 7


def test_unknown_command_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["frobnicate"])
    assert e.value.code == 2


def test_module_entry_point(tmp_path):
    p = subprocess.run(
        [sys.executable, "-m", "paf", "count", fixture_path("example_gamma.json")],
        capture_output=True, text=True, check=False,
    )
    assert p.returncode == 0 and json.loads(p.stdout)["count"] == 8
