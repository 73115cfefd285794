import json
import math

import numpy as np
import pytest

from actionwave.cli import main
from actionwave.output import fmt_float, to_csv, to_json


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_fmt_float():
    assert fmt_float(0.1) == "0.10000000000000001"
    assert float(fmt_float(math.pi)) == math.pi
    assert fmt_float(float("nan")) == ""


def test_to_json_and_csv():
    text = to_json({"a": [1.0, float("nan")], "b": "x"})
    assert json.loads(text) == {"a": [1.0, None], "b": "x"}
    assert to_csv(["a", "b"], [[1.5, "z"]]) == "a,b\n1.5,z\n"


def test_wavefn_json_schema(capsys):
    code, out, _ = run(["wavefn", "--model", "harmonic", "--n", "2", "--grid", "-4:4:81"], capsys)
    assert code == 0
    d = json.loads(out)
    for key in ("model", "lambda", "n", "grid", "psi_nonorthogonal", "psi_orthonormalized", "psi_exact", "metadata"):
        assert key in d
    assert d["metadata"]["units"]["hbar"] == 1
    assert len(d["grid"]) == 81
    np.testing.assert_allclose(d["psi_orthonormalized"], d["psi_exact"], atol=1e-10)
    assert d["metadata"]["contour_check"]["max_rel_diff"] <= 1e-10


def test_wavefn_pt_with_wkb(capsys):
    code, out, _ = run(["wavefn", "--model", "poschl-teller", "--lambda", "10", "--n", "3",
                        "--grid", "-1.5:1.5:61", "--wkb"], capsys)
    assert code == 0
    d = json.loads(out)
    w = d["psi_wkb"]
    assert w[0] is None and w[30] is not None
    assert d["metadata"]["wkb"]["interior_margin"] == 0.05


def test_wavefn_csv_with_sidecar(tmp_path, capsys):
    path = tmp_path / "psi.csv"
    code, _, _ = run(["wavefn", "--model", "morse", "--lambda", "12", "--n", "3", "--grid", "-1:5:31",
                      "--format", "csv", "--output", str(path)], capsys)
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "grid,psi_nonorthogonal,psi_orthonormalized,psi_exact"
    assert len(lines) == 32
    meta = json.loads((tmp_path / "psi.csv.meta.json").read_text())
    assert meta["model"] == "morse"


def test_morse_bound_violation(capsys):
    code, _, err = run(["wavefn", "--model", "morse", "--lambda", "12", "--n", "20", "--grid", "-1:5:11"], capsys)
    assert code == 2
    assert "n=20 exceeds bound-state count" in err


def test_validation_errors_are_aggregated(capsys):
    code, _, err = run(["wavefn", "--model", "poschl-teller", "--lambda", "-1", "--n", "-2", "--grid", "-2:2:1"],
                       capsys)
    assert code == 2
    assert err.count(";") >= 2


def test_pt_grid_outside_domain(capsys):
    code, _, err = run(["wavefn", "--model", "poschl-teller", "--lambda", "5", "--n", "0", "--grid", "-2:2:11"], capsys)
    assert code == 2


def test_unknown_subcommand_is_usage_error(capsys):
    assert run(["frobnicate"], capsys)[0] == 2


def test_bad_thread_env(monkeypatch, capsys):
    monkeypatch.setenv("ACTIONWAVE_THREADS", "0")
    code, _, err = run(["verify"], capsys)
    assert code == 2
    assert "ACTIONWAVE_THREADS" in err


def test_report_rows(tmp_path, capsys):
    path = tmp_path / "trend.csv"
    code, _, _ = run(["report", "--model", "poschl-teller", "--lambda", "5,10,20,40", "--nmax", "4",
                      "--output", str(path)], capsys)
    assert code == 0
    lines = path.read_text().splitlines()
    assert len(lines) == 21
    assert lines[0].startswith("model,coupling,n,")


def test_report_is_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert run(["report", "--model", "poschl-teller", "--lambda", "5,10", "--nmax", "3",
                    "--output", str(p), "--wkb-comparison", str(p) + ".wkb"], capsys)[0] == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert (tmp_path / "a.csv.wkb").read_bytes() == (tmp_path / "b.csv.wkb").read_bytes()


def test_report_requires_lambda(capsys):
    code, _, err = run(["report", "--model", "morse", "--nmax", "2"], capsys)
    assert code == 2
    assert "--lambda" in err


def test_verify_passes(tmp_path, capsys):
    code, out, _ = run(["verify", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert "FAIL" not in out
    assert (tmp_path / "poschl-teller_trend.csv").exists()


def test_verify_fault_names_morse_identity(tmp_path, capsys):
    code, out, _ = run(["verify", "--out", str(tmp_path), "--inject-fault", "morse-branch"], capsys)
    assert code == 1
    fails = [line for line in out.splitlines() if line.startswith("FAIL")]
    assert len(fails) == 1
    assert "Morse reformulation identity" in fails[0]
