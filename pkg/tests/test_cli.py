import json
import subprocess
import sys

import pytest

from eqcob import cli
from eqcob.algebra import series_from_json
from eqcob.verify import Check


def run(capsys, *argv):
    code = cli.main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_nseries_text(capsys):
    code, out, _ = run(capsys, "nseries", "--theory", "ktheory", "-n", "3", "--trunc", "3")
    assert code == 0
    assert out == "3t - 3βt² + β²t³\n"


def test_torus_presentation(capsys):
    code, out, _ = run(capsys, "coeff", "torus", "-r", "1", "--trunc", "3", "--theory", "universal")
    assert code == 0
    assert "generators: t (deg 1, series)" in out
    assert "ranks by degree: 0:1, 1:1, 2:1, 3:1" in out


def test_verify_fgl_passes(capsys):
    code, out, _ = run(capsys, "verify", "fgl", "--trunc", "5")
    assert code == 0
    assert "FAIL" not in out
    assert out.rstrip().endswith("checks passed")


@pytest.mark.parametrize("suite", ["whitney", "towers", "ranks", "mu", "restriction"])
def test_other_suites_pass(capsys, suite):
    code, out, _ = run(capsys, "verify", suite, "--trunc", "3")
    assert code == 0, out


@pytest.mark.parametrize("argv,needle", [
    (["fgl", "--theory", "ktheory", "--trunc", "2"], "u + v - βuv"),
    (["inverse", "--theory", "ktheory", "--trunc", "3"], "-t - βt² - β²t³"),
    (["conjugate", "--phi", "exp", "--trunc", "3"], "equals the law built from its logarithm: yes"),
    (["conjugate", "--phi", "1,1", "--theory", "chow", "--trunc", "2"], "F"),
    (["coeff", "gln", "-n", "2", "--trunc", "3"], "ranks by degree: 0:1, 1:1, 2:2, 3:2"),
    (["coeff", "mu", "-n", "2", "--theory", "chow", "--trunc", "3"], "degree 3: Z/2"),
    (["pn-weighted", "0", "1", "--trunc", "3"], "-tξ + ξ²"),
    (["pb", "0", "0", "--theory", "chow", "--trunc", "2"], "ξ² = 0"),
    (["chern", "t", "[-1]t", "--theory", "chow", "--trunc", "3"], "c2 = -t²"),
    (["restrict-gln", "-n", "2"], "η2 ↦ t1t2"),
    (["specialize", "--to", "ktheory", "--trunc", "2"], "u + v - βuv"),
    (["specialize", "--to", "chow", "--weights", "0", "1", "--trunc", "3"], "agrees with the direct chow computation: yes"),
])
def test_subcommands(capsys, argv, needle):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert needle in out


def test_verification_failure_exits_one(capsys, monkeypatch):
    monkeypatch.setitem(cli.SUITES, "fgl", lambda D: [Check("always fails", False, "forced")])
    code, out, _ = run(capsys, "verify", "fgl")
    assert code == 1
    assert "FAIL always fails" in out


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["nseries"],
    ["nseries", "-n", "2", "--trunc", "0"],
    ["nseries", "-n", "2", "--theory", "elliptic"],
    ["coeff", "torus", "-r", "x"],
    ["verify", "nothing"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


@pytest.mark.parametrize("argv", [
    ["coeff", "mu", "-n", "1"],
    ["chern", "-", "t"],
    ["conjugate", "--phi", "a,b"],
])
def test_refused_computations_exit_three(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 3
    assert out == ""
    assert err.startswith("eqcob: error: ") and err.count("\n") == 1


def test_json_shape_and_round_trip(capsys):
    code, out, _ = run(capsys, "nseries", "-n", "2", "--theory", "ktheory", "--trunc", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"request_echo", "result", "diagnostics"}
    assert doc["request_echo"]["n"] == 2
    assert json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2) + "\n" == out
    series = series_from_json(doc["result"]["series"])
    assert str(series) == "2t - βt²"


@pytest.mark.parametrize("argv", [
    ["fgl", "--trunc", "3"],
    ["coeff", "mu", "-n", "3", "--theory", "ktheory", "--trunc", "3"],
    ["verify", "whitney", "--trunc", "3", "--trials", "5"],
    ["pn-weighted", "1", "2", "--theory", "ktheory", "--trunc", "3"],
])
def test_json_is_stable(capsys, argv):
    first = run(capsys, *argv, "--format", "json")[1]
    second = run(capsys, *argv, "--format", "json")[1]
    assert first == second
    doc = json.loads(first)
    assert json.loads(json.dumps(doc)) == doc


def test_output_is_byte_identical_across_processes():
    argv = [sys.executable, "-m", "eqcob", "verify", "whitney", "--trunc", "3", "--trials", "10"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a


def test_out_file(capsys, tmp_path):
    target = tmp_path / "law.txt"
    code, out, _ = run(capsys, "fgl", "--theory", "chow", "--trunc", "2", "--out", str(target))
    assert code == 0 and out == ""
    assert "u + v" in target.read_text(encoding="utf-8")


def test_truncation_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("EQCOB_TRUNC", "2")
    assert run(capsys, "nseries", "-n", "3", "--theory", "ktheory")[1] == "3t - 3βt²\n"
    # an explicit flag wins
    assert run(capsys, "nseries", "-n", "3", "--theory", "ktheory", "--trunc", "3")[1] == "3t - 3βt² + β²t³\n"
    monkeypatch.setenv("EQCOB_TRUNC", "zero")
    assert run(capsys, "nseries", "-n", "3")[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "eqcob", "nseries", "-n", "-1", "--theory", "chow", "--trunc", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout == "-t\n"
