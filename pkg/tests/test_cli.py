import io
import json
import subprocess
import sys

import pytest

from symsum.cli import grid_image, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    doc = json.loads(out)
    assert doc["schema"] == "symsum/1"
    return doc


def test_pgf_infinity():
    doc = call_json("pgf", "--p", "2", "--r", "2", "--k", "5", "--infinity")
    assert doc["coefficients"] == ["11/32", "7/32", "7/32", "7/32"]


def test_pgf_finite():
    doc = call_json("pgf", "--p", "2", "--k", "2", "--n", "4")
    assert doc["provenance"] == "finite_n(4)"


def test_counterexample():
    doc = call_json("counterexample", "--p", "2", "--r", "2", "--k", "3")
    assert doc["verified"] is True
    assert doc["m"] == [3, 5, 4, 4]


def test_counterexample_not_found():
    doc = call_json("counterexample", "--p", "2", "--r", "2", "--k", "9")
    assert doc["found"] is False


def test_smith_table():
    doc = call_json("smith", "--p", "5")
    assert {"t": 2, "p": "26/125"} in doc["probabilities"]
    code, out, _ = call("smith", "--p", "5", "--format", "csv")
    assert code == 0
    assert "2,26/125" in out.splitlines()


def test_sum_and_closed_form_agree():
    a = call_json("sum", "--p", "3", "--n", "6", "--k", "4")
    b = call_json("closed-form", "--p", "3", "--n", "6", "--k", "4")
    assert a["coefficients"] == b["coefficients"]


def test_sum_of_function():
    doc = call_json("sum", "--p", "2", "--r", "2", "--n", "3", "--F", "x1*x2 + x1*x2*x3 + x2*x3 + x1*x3")
    assert doc["coefficients"] == ["17/1", "21/1", "13/1", "13/1"]


def test_perturb():
    doc = call_json("perturb", "--p", "2", "--r", "2", "--k", "5", "--F", "x1*x2 + x1*x2*x3 + x2*x3 + x1*x3")
    assert doc["coefficients"] == ["129/512", "133/512", "125/512", "125/512"]
    finite = call_json("perturb", "--p", "2", "--r", "2", "--k", "5", "--n", "6", "--F", "x1*x2")
    assert finite["provenance"] == "finite_n(6)"


def test_lambda():
    doc = call_json("lambda", "--p", "2", "--r", "2", "--k", "5")
    assert [c["count"] for c in doc["counts"]] == [176, 112, 112, 112]
    one = call_json("lambda", "--p", "3", "--k", "1", "--m", "1,1")
    assert one["value"] == 0  # 1 + 2


def test_field_and_trace_map():
    doc = call_json("field", "--p", "2", "--r", "2")
    assert doc["elements"] == ["0", "1", "a", "a+1"]
    tr = call_json("pgf", "--p", "2", "--r", "2", "--k", "5", "--infinity", "--L", "trace")
    assert tr["L"] == "trace"
    table = call_json("pgf", "--p", "2", "--r", "2", "--k", "5", "--infinity", "--L-table", "0,1,1,0")
    assert table["L"] == [0, 1, 1, 0]


def test_balance_command():
    doc = call_json("balance", "--p", "2", "--r", "2", "--k", "3")
    assert doc["balanced"] is False
    assert doc["nullspace"] == [[-1, 1, 0, 0], [0, 0, -1, 1]]


def test_fine_command():
    doc = call_json("fine", "--p", "5", "--k", "6")
    assert doc["rows"][0]["properties"]["5"] is False


def test_exit_codes():
    code, _, err = call("pgf", "--p", "3", "--r", "2", "--k", "40", "--infinity")
    assert code == 2
    assert json.loads(err)["error"] == "budget_exceeded"
    code, _, err = call("field", "--p", "4")
    assert code == 1
    assert json.loads(err)["error"] == "not_prime"
    code, _, err = call("sum", "--p", "2", "--n", "3")
    assert code == 1
    code, _, err = call("nonsense")
    assert code == 1
    assert json.loads(err)["error"] == "usage"
    code, _, err = call("sum", "--p", "2", "--r", "2", "--n", "2", "--F", "x1 +")
    assert json.loads(err)["error"] == "parse_error"


def test_budget_flag():
    code, _, _ = call("pgf", "--p", "3", "--k", "4", "--infinity", "--budget", "10")
    assert code == 2
    assert call_json("pgf", "--p", "3", "--k", "4", "--infinity", "--budget", "none")["coefficients"]


def test_out_file(tmp_path):
    target = tmp_path / "pgf.json"
    code, out, _ = call("pgf", "--p", "2", "--k", "3", "--infinity", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["schema"] == "symsum/1"


def test_deterministic_output():
    argv = ("counterexample", "--p", "2", "--r", "2", "--k", "3")
    assert call(*argv)[1] == call(*argv)[1]


def test_grid_k1():
    img = grid_image(3, 1)
    assert (img.width, img.height) == (3, 3)
    for b in range(3):
        for a in range(3):
            assert img.pixels[b][a] == (a + 2 * b) % 3


def test_grid_files(tmp_path):
    out = tmp_path / "k3.ppm"
    code, _, _ = call("grid", "--p", "3", "--k", "3", "--out", str(out))
    assert code == 0
    data = out.read_bytes()
    assert data.startswith(b"P6\n9 9\n255\n")
    assert len(data) == len(b"P6\n9 9\n255\n") + 9 * 9 * 3
    side = json.loads(out.with_suffix(".json").read_text())
    assert side["counts"] == {"0": 27, "1": 27, "2": 27}
    first = data
    call("grid", "--p", "3", "--k", "3", "--out", str(out))
    assert out.read_bytes() == first


def test_grid_81(tmp_path):
    out = tmp_path / "k27.ppm"
    assert call("grid", "--p", "3", "--k", "27", "--out", str(out))[0] == 0
    assert out.read_bytes().startswith(b"P6\n81 81\n255\n")


def test_grid_rejects_other_fields(tmp_path):
    code, _, err = call("grid", "--p", "5", "--k", "3", "--out", str(tmp_path / "x.ppm"))
    assert code == 1
    assert json.loads(err)["error"] == "unsupported_field"


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "symsum.cli", "smith", "--p", "7"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["k"] == 8
