import csv
import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from quartic_sheffer.cli import EXIT_INPUT, EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION, main

SCHEMA = json.loads(resources.files("quartic_sheffer").joinpath("schemas/table.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_gen_p4_row(capsys):
    code, out, _ = run(capsys, "gen", "--a", "1", "--b", "-1", "--n", "4", "--method", "recurrence")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == EXIT_OK
    assert rows[4]["coefficients"].split() == ["-12", "0", "12", "0", "1"]


def test_gen_trivial_parameters(capsys):
    code, doc = run_json(capsys, "gen", "--a", "0", "--b", "0", "--n", "3")
    assert code == EXIT_OK
    for row in doc["rows"]:
        n = row["n"]
        assert row["coefficients"] == ["0"] * n + ["1"]


def test_gen_check_sixty(capsys):
    code, doc = run_json(capsys, "gen", "--a", "1", "--b", "-1", "--n", "60", "--check")
    assert code == EXIT_OK and doc["summary"]["check"] == "pass"


def test_rationals_roundtrip(capsys):
    code, doc = run_json(capsys, "gen", "--a", "-7/3", "--b", "0.25", "--n", "2", "--method", "riordan")
    assert doc["params"]["a"] == "-7/3" and doc["params"]["b"] == "1/4"
    assert doc["rows"][2]["coefficients"] == ["-14/3", "0", "1"]


def test_roots_table(capsys):
    code, out, _ = run(capsys, "roots", "--a", "0", "--b", "-1", "--n", "4")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == EXIT_OK
    assert list(rows[0]) == ["n", "re", "im", "class", "residual"]
    assert sorted(r["class"] for r in rows) == ["IMAGINARY", "IMAGINARY", "REAL", "REAL"]


def test_roots_certify(capsys):
    code, doc = run_json(capsys, "roots", "--a", "1", "--b", "-1", "--certify", "--n-max", "12", "--workers", "2")
    assert code == EXIT_OK and doc["summary"]["verdict"] == "certified"
    assert [r["n"] for r in doc["rows"]] == sorted(r["n"] for r in doc["rows"])


def test_roots_certify_positive_b_not_a_failure(capsys):
    code, doc = run_json(capsys, "roots", "--a", "1", "--b", "1", "--certify", "--n-max", "8")
    assert code == EXIT_OK
    assert doc["summary"]["verdict"] == "hypothesis not met" and doc["summary"]["off_axis"] > 0


def test_roots_numerical_failure_exit(capsys, monkeypatch):
    from quartic_sheffer import zero_locus

    def boom(*args, **kwargs):
        raise zero_locus.RootFindingError("no convergence", [], [])

    monkeypatch.setattr(zero_locus, "find_roots", boom)
    code, _, err = run(capsys, "roots", "--n", "5")
    assert code == EXIT_NUMERICAL and "failed" in err


def test_saddle_columns(capsys):
    code, doc = run_json(capsys, "saddle", "--m", "100", "--s", "1", "0,0.5", "--a", "1")
    assert code == EXIT_OK and len(doc["rows"]) == 2
    for row in doc["rows"]:
        assert row["quadrant_ok"] and row["residual"] < 1e-12 and row["in_J"]
        assert row["zeta_re"] > 0 > row["zeta_im"]


def test_asym_exact(capsys):
    code, doc = run_json(capsys, "asym", "--m", "400", "--s", "1", "--a", "0", "--exact", "--envelope")
    row = doc["rows"][0]
    assert row["exact_component"] == "imag" and row["envelope_error"] < 0.05


def test_saddle_outside_regime_is_numerical(capsys):
    code, _, err = run(capsys, "saddle", "--m", "100", "--s", "3", "--a", "0")
    assert code == EXIT_NUMERICAL


def test_oracle_general_b(capsys):
    code, doc = run_json(capsys, "oracle", "--m", "10", "--s", "1", "--a", "1", "--b", "-3")
    row = doc["rows"][0]
    assert code == EXIT_OK and row["relative_error"] < 1e-10 and row["doubling_change"] < 1e-12


def test_oracle_rejects_positive_b(capsys):
    code, _, _ = run(capsys, "oracle", "--m", "4", "--s", "1", "--b", "2")
    assert code == EXIT_INPUT


def test_tree_verify_and_explicit(capsys):
    code, doc = run_json(capsys, "tree", "--a", "1", "--b", "-1", "--n", "4", "--explicit", "--verify")
    assert code == EXIT_OK and doc["summary"]["verified"]
    r40 = next(r for r in doc["rows"] if r["n"] == 4 and r["k"] == 0)
    assert (r40["signed_count"], r40["unmarked"], r40["marked"]) == ("-12", 12, 24)


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--a", "x", "--n", "2"],
        ["gen", "--n", "-1"],
        ["nosuch"],
        ["saddle", "--m", "10", "--s", "1,2,3"],
        ["roots"],
    ],
)
def test_bad_input_exit_code(capsys, argv):
    with pytest.raises(SystemExit) as info:
        sys.exit(main(argv))
    assert info.value.code == EXIT_INPUT


def test_deterministic_output(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["roots", "--a", "2", "--b", "-3", "--n", "9", "--format", "json", "--out", str(p)]) == EXIT_OK
    assert paths[0].read_bytes() == paths[1].read_bytes()
    jsonschema.validate(json.loads(paths[0].read_text()), SCHEMA)


def test_precision_env(monkeypatch, capsys):
    monkeypatch.setenv("QUARTIC_SHEFFER_PRECISION", "128")
    code, doc = run_json(capsys, "roots", "--n", "3")
    assert code == EXIT_OK


def test_verify_quick(capsys):
    code, doc = run_json(capsys, "verify", "--quick", "--max-n", "10")
    assert code == EXIT_OK
    assert all(r["status"] == "PASS" for r in doc["rows"])


def test_verify_positive_b_marked(capsys):
    code, doc = run_json(capsys, "verify", "--quick", "--max-n", "10", "--a", "1", "--b", "1")
    locus = next(r for r in doc["rows"] if r["criterion"] == 5)
    assert locus["status"] == "HYPOTHESIS_NOT_MET"
    assert code == EXIT_OK


def test_console_script_help():
    out = subprocess.run([sys.executable, "-m", "quartic_sheffer.cli", "--help"], capture_output=True, text=True)
    assert out.returncode == 0 and "P_n(c x)" in " ".join(out.stdout.split())
