"""End-to-end command line tests, run in process through main(argv)."""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from fermient.cli import main
from fermient.config import load_config
from fermient.records import append_partial_row, config_hash


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


LATTICE_ARGS = [
    "gamma.k_fermi=1.5707963267948966",
    "omega.shape=interval", "omega.intervals=0:1",
    "mode=lattice",
]


# ---------------------------------------------------------------------------
# entropy
# ---------------------------------------------------------------------------

def test_entropy_record_schema(capsys):
    record = run_json(capsys, "entropy", *LATTICE_ARGS,
                      "entropy.L=50", "alpha=1,2")
    assert record["command"] == "entropy"
    assert record["schema_version"] == 1
    assert [row["alpha"] for row in record["rows"]] == [1.0, 2.0]
    for row in record["rows"]:
        assert row["n"] == 50
        assert row["L"] == 50.0
        assert row["S"] > 0.0
        assert row["mode"] == "lattice"
        assert row["wall_time_s"] >= 0.0
    # Renyi order 2 is below von Neumann on every spectrum.
    assert record["rows"][1]["S"] < record["rows"][0]["S"]


def test_entropy_deterministic_modulo_timing(capsys):
    argv = ("entropy", *LATTICE_ARGS, "entropy.L=30", "alpha=0.5,1,inf")
    first = run_json(capsys, *argv)
    second = run_json(capsys, *argv)
    for record in (first, second):
        for row in record["rows"]:
            row.pop("wall_time_s")
    assert first == second


def test_entropy_csv_output(capsys, tmp_path):
    csv_path = tmp_path / "rows.csv"
    record = run_json(capsys, "entropy", *LATTICE_ARGS, "entropy.L=20",
                      "alpha=1,2", "--csv", str(csv_path))
    lines = csv_path.read_text().strip().splitlines()
    assert len(lines) == 1 + len(record["rows"])
    header = lines[0].split(",")
    for column in ("alpha", "L", "n", "S"):
        assert column in header
    # Float cells round-trip exactly through repr.
    cell = dict(zip(header, lines[1].split(",")))
    assert float(cell["S"]) == record["rows"][0]["S"]


def test_config_file_and_override_precedence(capsys, tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(
        "gamma.k_fermi = 1.5707963267948966\n"
        "omega.shape = interval\n"
        "omega.intervals = 0:1\n"
        "mode = lattice\n"
        "entropy.L = 20\n"
        "alpha = 1\n")
    record = run_json(capsys, "entropy", "--config", str(path), "alpha=2")
    assert [row["alpha"] for row in record["rows"]] == [2.0]
    assert record["config"]["alpha"] == "2"


def test_entropy_writes_file_not_stdout(capsys, tmp_path):
    out = tmp_path / "record.json"
    code, stdout, _ = run_cli(capsys, "entropy", *LATTICE_ARGS,
                              "entropy.L=20", "--out", str(out))
    assert code == 0
    assert stdout == ""
    assert json.loads(out.read_text())["command"] == "entropy"


# ---------------------------------------------------------------------------
# error paths and exit codes
# ---------------------------------------------------------------------------

def test_bad_alpha_exits_2(capsys):
    code, out, err = run_cli(capsys, "entropy", *LATTICE_ARGS, "alpha=-1")
    assert code == 2
    assert out == ""
    error = json.loads(err)["error"]
    assert error["kind"] == "config"
    assert "alpha" in error["message"]


def test_dimension_mismatch_exits_2(capsys):
    code, _, err = run_cli(
        capsys, "entropy",
        "gamma.k_fermi=1.0",
        "omega.shape=box", "omega.bounds=0:1,0:1")
    assert code == 2
    assert "d=1" in json.loads(err)["error"]["message"]


def test_malformed_override_exits_2(capsys):
    code, _, err = run_cli(capsys, "entropy", "gamma.k_fermi")
    assert code == 2
    assert json.loads(err)["error"]["kind"] == "config"


def test_compute_failure_exits_3(capsys):
    code, _, err = run_cli(capsys, "entropy", *LATTICE_ARGS,
                           "entropy.L=5000")
    assert code == 3
    error = json.loads(err)["error"]
    assert error["kind"] == "computation"
    assert "budget" in error["message"]


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert "fermient" in capsys.readouterr().out


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["transmogrify"])
    assert excinfo.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fermient", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "fermient" in proc.stdout


# ---------------------------------------------------------------------------
# jcoeff
# ---------------------------------------------------------------------------

def test_jcoeff_interval_pair(capsys):
    record = run_json(capsys, "jcoeff",
                      "gamma.shape=interval", "gamma.intervals=-1:1",
                      "omega.shape=interval", "omega.intervals=0:1")
    assert record["j"]["value"] == 4.0
    assert record["j"]["agreement"] == 0.0


def test_jcoeff_square_pair_all_methods(capsys):
    record = run_json(capsys, "jcoeff", "--seed", "7",
                      "gamma.shape=box", "gamma.bounds=-1:1,-1:1",
                      "omega.shape=box", "omega.bounds=0:1,0:1")
    block = record["j"]
    assert block["value"] == pytest.approx(8.0 / math.pi, abs=1e-12)
    methods = {entry["method"] for entry in block["methods"]}
    assert {"face_pair_exact", "quadrature", "monte_carlo"} <= methods
    assert block["agreement"] < 0.05


# ---------------------------------------------------------------------------
# functional
# ---------------------------------------------------------------------------

def test_functional_default_grid(capsys):
    record = run_json(capsys, "functional")
    rows = record["functional_rows"]
    assert [row["alpha"] for row in rows] == [0.25, 0.5, 1.0, 1.5, 2.0,
                                              4.0, 10.0]
    for row in rows:
        alpha = row["alpha"]
        expected = (1.0 + alpha) / (24.0 * alpha)
        assert row["closed_form"] == pytest.approx(expected, abs=1e-15)
        assert row["abs_dev"] < 1e-8
        assert row["dilog_abs_dev"] < 1e-10
        assert row["converged"]
    checks = record["checks"]
    assert abs(checks["linear_function_value"]) < 1e-12
    assert checks["dilog_limit"]["abs_dev"] < 2e-5


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def test_sweep_self_test_recovers_theory(capsys):
    record = run_json(capsys, "sweep", "--self-test",
                      "gamma.shape=interval", "gamma.intervals=-1:1",
                      "omega.shape=interval", "omega.intervals=0:1",
                      "alpha=1", "sweep.L=20:200:8")
    assert record["self_test"] is True
    fit = record["fit"]
    assert fit["rel_dev"] < 1e-10
    assert fit["theory"] == pytest.approx(1.0 / 3.0)
    assert len(record["rows"]) == 8
    assert record["j"]["value"] == 4.0


def test_sweep_lattice_writes_fit_and_cleans_partial(capsys, tmp_path):
    out = tmp_path / "sweep.json"
    code, _, err = run_cli(capsys, "sweep", *LATTICE_ARGS,
                           "alpha=1", "sweep.L=40:160:4",
                           "--out", str(out))
    assert code == 0, err
    assert not (tmp_path / "sweep.json.partial").exists()
    record = json.loads(out.read_text())
    assert len(record["rows"]) == 4
    assert [row["L"] for row in record["rows"]] == [40.0, 63.0, 101.0, 160.0]
    fit = record["fit"]
    assert fit["theory"] == pytest.approx(1.0 / 3.0)
    # Small blocks, so only loose agreement is expected here.
    assert abs(fit["rel_dev"]) < 0.10
    assert record["j"]["value"] == 4.0


def test_sweep_resumes_from_partial_rows(capsys, tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(
        "gamma.k_fermi = 1.5707963267948966\n"
        "omega.shape = interval\n"
        "omega.intervals = 0:1\n"
        "mode = lattice\n"
        "alpha = 1\n"
        "sweep.L = 40:160:4\n")
    out = tmp_path / "sweep.json"
    digest = config_hash(load_config(cfg))
    seeded = {"alpha": 1.0, "L": 63.0, "n": 63, "S": 99.0,
              "clamp_count": 0, "max_violation": 0.0, "mode": "lattice"}
    append_partial_row(str(out) + ".partial", seeded, digest)

    code, _, err = run_cli(capsys, "sweep", "--config", str(cfg),
                           "--out", str(out))
    assert code == 0, err
    record = json.loads(out.read_text())
    by_L = {row["L"]: row for row in record["rows"]}
    assert by_L[63.0]["S"] == 99.0          # reused, not recomputed
    assert 0.0 < by_L[40.0]["S"] < 5.0      # freshly computed
    assert not (tmp_path / "sweep.json.partial").exists()


def test_sweep_persists_partial_rows_on_failure(capsys, tmp_path):
    out = tmp_path / "sweep.json"
    code, _, err = run_cli(capsys, "sweep", *LATTICE_ARGS,
                           "alpha=1", "sweep.L=100,200,8000",
                           "--out", str(out))
    assert code == 3
    assert "budget" in json.loads(err)["error"]["message"]
    assert not out.exists()
    partial = (tmp_path / "sweep.json.partial").read_text().splitlines()
    saved = [json.loads(line)["L"] for line in partial]
    assert saved == [100.0, 200.0]


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

def test_validate_passes_and_writes_report(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, stdout, _ = run_cli(capsys, "validate", "--out", str(out))
    assert code == 0
    assert "checks passed" in stdout
    report = json.loads(out.read_text())
    assert report["passed"] is True
    assert len(report["checks"]) == 10
    assert all(check["passed"] for check in report["checks"])
