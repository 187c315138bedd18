"""Command-line front end: exit codes, JSON envelopes, seeds, diagnostics."""

import json
import shutil
import subprocess

import pytest

from rlctkit.cli import main
from rlctkit.polynomials import SparsePolynomial
from rlctkit.resolution import ResolutionModel


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def model_file(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "family", "simple-type", "--n", "3", "--d", "2", "--emit", "model")
    assert code == 0
    return write_json(tmp_path / "st32.json", json.loads(out))


@pytest.fixture
def line_poly_file(tmp_path):
    doc = SparsePolynomial.variable(1, 0).to_json_dict()
    return write_json(tmp_path / "x.json", doc)


# -- exact-engine commands ---------------------------------------------------


def test_rlct_command(capsys, model_file):
    code, out, err = run_cli(capsys, "rlct", "--model", model_file)
    assert code == 0
    assert json.loads(out) == {"lct": "3/2", "ordered": True, "rlct": "3/2"}
    assert "minimum over the listed divisors" in err


def test_emitted_model_round_trips_canonically(capsys):
    code, out, _ = run_cli(capsys, "family", "quartic-sextic", "--emit", "model")
    assert code == 0
    doc = json.loads(out)
    reparsed = ResolutionModel.from_json_dict(doc).to_json_dict()
    assert json.dumps(reparsed, sort_keys=True, indent=2) == out.rstrip("\n")


def test_jumps_command(capsys, model_file):
    code, out, _ = run_cli(capsys, "jumps", "--model", model_file, "--bound", "3/1")
    assert code == 0
    doc = json.loads(out)
    assert doc["rlct"] == "3/2"
    assert doc["bound"] == "3/1"
    assert doc["jumps"][0] == {"value": "3/2", "witness": [0, 0, 0]}
    assert [j["value"] for j in doc["jumps"]] == ["3/2", "2/1", "5/2", "3/1"]


def test_jumps_without_real_divisors(capsys, tmp_path):
    path = write_json(
        tmp_path / "complex.json",
        {"n": 2, "divisors": [{"id": "E1", "m": 3, "a": 1, "real": False}]},
    )
    code, out, err = run_cli(capsys, "jumps", "--model", path, "--bound", "4/1")
    assert code == 0
    doc = json.loads(out)
    assert doc["rlct"] == "infinity"
    assert doc["jumps"] == []
    assert "no divisors with real points" in err


def test_jumps_surfaces_missing_weights_verbatim(capsys, tmp_path):
    path = write_json(
        tmp_path / "bare.json",
        {"n": 2, "divisors": [{"id": "E1", "m": 2, "a": 0, "real": True}]},
    )
    code, out, err = run_cli(capsys, "jumps", "--model", path, "--bound", "1/1")
    assert code == 1
    assert out == ""
    assert "divisor 'E1' is real but carries no weights" in err
    assert "monomial membership is undefined" in err


# -- family command ------------------------------------------------------------


def test_family_bundle(capsys):
    code, out, _ = run_cli(
        capsys, "family", "simple-type", "--n", "3", "--d", "2", "--bound", "3/1"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["family"] == "simple-type"
    assert doc["params"] == {"n": 3, "d": 2}
    assert doc["expected"]["rlct"] == "3/2"
    assert doc["expected"]["jumps"] == ["3/2", "2/1", "5/2", "3/1"]
    assert doc["poly"]["n"] == 3
    assert doc["model"]["divisors"][0]["m"] == 2
    assert isinstance(doc["notes"], str) and doc["notes"]


def test_family_bundle_flags_inexact_lct(capsys):
    code, out, _ = run_cli(capsys, "family", "quartic-sextic")
    assert code == 0
    expected = json.loads(out)["expected"]
    assert expected["lct"] == "2/3"
    assert expected["lct_is_exact"] is True
    code, out, _ = run_cli(
        capsys, "family", "deformed-power", "--n", "4", "--d1", "4", "--e", "2", "--c", "2"
    )
    assert json.loads(out)["expected"]["lct_is_exact"] is False


def test_family_poly_emission(capsys):
    code, out, _ = run_cli(capsys, "family", "monomial", "--m", "2,3", "--emit", "poly")
    assert code == 0
    assert json.loads(out) == {"n": 2, "terms": [{"c": "1/1", "e": [2, 3]}]}


def test_family_without_instance_cannot_emit_poly(capsys):
    code, out, err = run_cli(
        capsys,
        "family", "deformed-power", "--n", "3", "--d1", "4", "--e", "2", "--c", "2",
        "--emit", "poly",
    )
    assert code == 1
    assert out == ""
    assert "no polynomial instance" in err


def test_family_rejects_bad_exponent_list(capsys):
    code, _, err = run_cli(capsys, "family", "monomial", "--m", "2,x")
    assert code == 1
    assert "comma-separated integers" in err


# -- sampling commands ------------------------------------------------------------


def test_estimate_reports_seed_and_reproduces(capsys, line_poly_file):
    argv = (
        "estimate", "--poly", line_poly_file, "--region", "box",
        "--samples", "20000", "--depth", "5", "--seed", "11",
    )
    code, out, err = run_cli(capsys, *argv)
    assert code == 0
    assert "seed: 11" in err
    doc = json.loads(out)
    assert 0.9 <= doc["lambda_hat"] <= 1.1
    assert doc["seed"] == 11
    code2, out2, _ = run_cli(capsys, *argv)
    assert code2 == 0 and out2 == out


def test_estimate_seed_resolution_order(capsys, line_poly_file, monkeypatch):
    monkeypatch.setenv("RLCTKIT_SEED", "99")
    argv = ("estimate", "--poly", line_poly_file, "--region", "box",
            "--samples", "5000", "--depth", "3")
    _, out, err = run_cli(capsys, *argv)
    assert "seed: 99" in err and json.loads(out)["seed"] == 99
    _, out, err = run_cli(capsys, *argv, "--seed", "11")
    assert "seed: 11" in err and json.loads(out)["seed"] == 11


def test_estimate_inconclusive_exit_code(capsys, tmp_path):
    x = SparsePolynomial.variable(1, 0)
    nowhere_zero = x**2 + SparsePolynomial.constant(1, 1)
    path = write_json(tmp_path / "nz.json", nowhere_zero.to_json_dict())
    code, out, err = run_cli(
        capsys, "estimate", "--poly", path, "--region", "box",
        "--samples", "5000", "--depth", "4", "--seed", "7",
    )
    assert code == 2
    doc = json.loads(out)
    assert doc["lambda_hat"] is None
    assert doc["stderr"] is None
    assert "vanish" in err


def test_check_command_verdicts(capsys, line_poly_file, tmp_path):
    one = write_json(tmp_path / "one.json", SparsePolynomial.constant(1, 1).to_json_dict())
    base = (
        "check", "--g", one, "--poly", line_poly_file, "--region", "box",
        "--samples", "100000", "--depth", "8", "--seed", "7",
    )
    code, out, err = run_cli(capsys, *base, "--alpha", "1/2")
    assert code == 0
    assert json.loads(out)["status"] == "Integrable"
    assert "seed: 7" in err
    code, out, _ = run_cli(capsys, *base, "--alpha", "3/2")
    assert code == 0
    assert json.loads(out)["status"] == "Divergent"


def test_check_starved_shells_are_inconclusive(capsys, line_poly_file, tmp_path):
    one = write_json(tmp_path / "one.json", SparsePolynomial.constant(1, 1).to_json_dict())
    code, out, _ = run_cli(
        capsys, "check", "--g", one, "--poly", line_poly_file, "--alpha", "1/2",
        "--region", "box", "--samples", "20000", "--depth", "6", "--seed", "7",
    )
    assert code == 2
    doc = json.loads(out)
    assert doc["status"] == "Inconclusive"
    assert doc["decay_ratio"] is None


def test_reduce_command(capsys, tmp_path):
    x = SparsePolynomial.variable(2, 0)
    y = SparsePolynomial.variable(2, 1)
    xp = write_json(tmp_path / "gx.json", x.to_json_dict())
    yp = write_json(tmp_path / "gy.json", y.to_json_dict())
    code, out, _ = run_cli(capsys, "reduce", xp, yp)
    assert code == 0
    doc = json.loads(out)
    assert doc["generators"] == 2
    assert doc["poly"] == (x**2 + y**2).to_json_dict()
    assert "alpha/2" in doc["contract"]


def test_verify_command(capsys):
    code, out, err = run_cli(
        capsys, "verify", "quartic-sextic",
        "--samples", "100000", "--depth", "8", "--seed", "7",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["chain_ok"] is True
    assert doc["rlct"] == "3/4"
    assert doc["lct"] == "2/3"
    assert abs(doc["p_hat"] - 0.75) <= doc["tol"]
    assert doc["estimate"]["seed"] == 7
    assert "seed: 7" in err


def test_verify_needs_a_polynomial_instance(capsys):
    code, _, err = run_cli(
        capsys, "verify", "deformed-power", "--n", "3", "--d1", "4", "--e", "2", "--c", "2"
    )
    assert code == 1
    assert "no polynomial instance" in err


# -- error envelope ----------------------------------------------------------------


def test_missing_file_is_an_error(capsys, tmp_path):
    code, out, err = run_cli(capsys, "rlct", "--model", str(tmp_path / "nope.json"))
    assert code == 1
    assert out == ""
    assert "nope.json" in err


def test_unparseable_json_is_an_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run_cli(capsys, "rlct", "--model", str(path))
    assert code == 1
    assert "not valid JSON" in err


def test_schema_violation_names_the_field(capsys, tmp_path):
    path = write_json(
        tmp_path / "zero_m.json",
        {"n": 1, "divisors": [{"id": "E1", "m": 0, "a": 0, "real": True}]},
    )
    code, _, err = run_cli(capsys, "rlct", "--model", path)
    assert code == 1
    assert "divisors[0].m" in err


def test_usage_errors_exit_one(capsys):
    assert main([]) == 1
    assert main(["rlct", "--no-such-flag"]) == 1
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    out = capsys.readouterr().out
    assert "estimate" in out and "jumps" in out


def test_console_script_is_installed():
    exe = shutil.which("rlctkit")
    assert exe, "console script rlctkit not on PATH"
    proc = subprocess.run(
        [exe, "family", "monomial", "--m", "2,3", "--emit", "model"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert [d["m"] for d in doc["divisors"]] == [2, 3]
