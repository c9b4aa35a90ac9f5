import json
import subprocess
import sys

import numpy as np
import pytest

from fockdigits.cli import main
from fockdigits.operator_engine import triplets_to_matrix


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


@pytest.mark.parametrize("argv,expected", [
    (["floor", "--n", "5", "--k", "2", "--method", "residues"], "2"),
    (["floor", "--n", "7", "--k", "1"], "7"),
    (["floor", "--n", "9", "--k", "3", "--method", "series-composition"], "3"),
    (["floor", "--n", "9", "--k", "4", "--method", "division"], "2"),
    (["digits", "--n", "17", "--base", "3"], "[2, 2, 1] agree=true"),
    (["digits", "--n", "0", "--base", "7"], "[0] agree=true"),
    (["digits", "--n", "17", "--base", "3", "--method", "quantum"], "[2, 2, 1]"),
])
def test_plain_output(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert (code, out) == (0, expected)


def test_floor_json(capsys):
    code, out, _ = run(capsys, "floor", "--n", "4999", "--k", "64", "--method", "residues", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["value"] == 78
    assert obj["residual"] < 1e-6 and obj["imag_residual"] < 1e-9


def test_digits_json_schema(capsys):
    code, out, _ = run(capsys, "digits", "--n", "5", "--base", "2", "--method", "all", "--json")
    assert code == 0
    assert json.loads(out) == {"n": 5, "base": 2, "digits": [1, 0, 1],
                               "routes": {"classical": [1, 0, 1], "spectral": [1, 0, 1], "quantum": [1, 0, 1]},
                               "agree": True}


def test_matrix_t(capsys):
    code, out, _ = run(capsys, "matrix", "--op", "t", "--ell", "0", "--base", "2", "--slots", "2")
    assert code == 0
    assert json.loads(out) == {"dim": 4, "entries": [[0, 1, 1.0, 0.0], [2, 3, 1.0, 0.0]]}


def test_matrix_number_operator_csv(capsys):
    code, out, _ = run(capsys, "matrix", "--op", "Nk", "--k", "1", "--base", "2", "--slots", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["row,col,re,im", "1,1,1.0,0.0", "2,2,2.0,0.0", "3,3,3.0,0.0"]


def test_matrix_T_is_shift(capsys):
    code, out, _ = run(capsys, "matrix", "--op", "T", "--m", "0", "--base", "2", "--slots", "3", "--route", "sum")
    assert code == 0
    assert np.array_equal(triplets_to_matrix(json.loads(out)), np.eye(8, k=1))


@pytest.mark.parametrize("op", ["tdag", "Tdag", "Dk", "digit"])
def test_matrix_other_ops(capsys, op):
    code, out, _ = run(capsys, "matrix", "--op", op, "--base", "3", "--slots", "2", "--k", "2", "--ell", "1")
    assert code == 0 and json.loads(out)["dim"] == 9


def test_matrix_too_large(capsys):
    code, _, err = run(capsys, "matrix", "--op", "T", "--base", "10", "--slots", "4")
    assert code == 2 and "cap" in err


def test_coefficients(capsys):
    code, out, _ = run(capsys, "coefficients", "--k", "2")
    assert code == 0
    assert json.loads(out) == {"k": 2, "coefficients": [{"j": 1, "zeta": [-1.0, 0.0], "C": [0.25, 0.0]}]}
    code, out, _ = run(capsys, "coefficients", "--k", "3")
    c1, c2 = (complex(*e["C"]) for e in json.loads(out)["coefficients"])
    assert abs(c1 - c2.conjugate()) < 1e-12
    code, _, _ = run(capsys, "coefficients", "--k", "1")
    assert code == 2


def test_verify_unitarity(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "unitarity", "--bases", "2", "--slots", "3")
    obj = json.loads(out)
    assert code == 0 and obj["ok"]
    (report,) = obj["reports"]
    # 8 states x 3 values of m, plus one empty-range check per m
    assert report["cases"] == 8 * 3 + 3 and report["failures"] == []


def test_verify_floor(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "floor", "--max-n", "5000", "--max-k", "64")
    report = json.loads(out)["reports"][0]
    assert code == 0 and report["failure_count"] == 0 and report["max_residual"] < 1e-6


def test_verify_all_small(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--max-n", "100")
    obj = json.loads(out)
    assert code == 0 and obj["ok"]
    assert [r["suite"] for r in obj["reports"]] == ["floor", "multiboson", "slots", "translation",
                                                    "unitarity", "digits"]


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "floor", "--max-n", "50", "--max-k", "5",
                       "--tolerance", "integer_distance=1e-30")
    obj = json.loads(out)
    assert code == 1 and not obj["ok"] and obj["reports"][0]["failures"]


def test_numerical_drift_exit_code(capsys):
    code, _, err = run(capsys, "floor", "--n", "5", "--k", "3", "--tolerance", "integer_distance=1e-30")
    assert code == 1 and "not an integer" in err


@pytest.mark.parametrize("argv", [
    ["floor", "--n", "5"],
    ["floor", "--n", "5", "--k", "2", "--method", "magic"],
    ["floor", "--n", "5", "--k", "2", "--tolerance", "bogus=1"],
    ["verify", "--bases", "two"],
    ["nosuch"],
])
def test_bad_flags_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


@pytest.mark.parametrize("argv", [
    ["digits", "--n", "5", "--base", "1"],
    ["floor", "--n", "5", "--k", "0"],
    ["floor", "--n", "50", "--k", "2", "--method", "series-composition"],
    ["matrix", "--op", "t", "--ell", "4", "--base", "2", "--slots", "2"],
    ["matrix", "--op", "T", "--base", "2", "--slots", "2", "--route", "residues"],
])
def test_bad_values_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_out_file_and_stable_output(tmp_path, capsys):
    path = tmp_path / "coef.json"
    assert main(["coefficients", "--k", "5", "--out", str(path)]) == 0
    first = path.read_bytes()
    assert main(["coefficients", "--k", "5", "--out", str(path)]) == 0
    assert path.read_bytes() == first
    obj = json.loads(first)
    assert json.loads(json.dumps(obj)) == obj


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fockdigits", "digits", "--n", "5", "--base", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "[1, 0, 1] agree=true"
    proc = subprocess.run([sys.executable, "-m", "fockdigits", "floor"], capture_output=True, text=True)
    assert proc.returncode == 2
