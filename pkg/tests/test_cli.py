import csv
import hashlib
import json
import os
import subprocess
import sys

import pytest

COMMON_FAST = ["--b", "10", "--n-points", "2001"]


def run_cli(args, env_extra=None):
    env = os.environ.copy()
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "oscquant", *args],
                          capture_output=True, text=True, env=env)


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def tree_bytes(root):
    return {p.name: p.read_bytes() for p in sorted(root.iterdir()) if p.is_file()}


def test_eec_passes_at_default_tolerance(tmp_path):
    out = tmp_path / "run"
    proc = run_cli(["eec", *COMMON_FAST, "--out-dir", str(out)])
    assert proc.returncode == 0, proc.stderr
    rows = read_rows(out / "eec_report.csv")
    assert len(rows) == 5 * 6  # five states, six residuals each
    assert all(r["passed"] == "1" for r in rows)
    states = {r["state"] for r in rows}
    assert states == {"mode0", "mode1", "mode2", "mode3", "mixture_c0.5"}


def test_eec_unreachable_tolerance_fails(tmp_path):
    proc = run_cli(["eec", *COMMON_FAST, "--tolerance", "1e-20",
                    "--out-dir", str(tmp_path / "run")])
    assert proc.returncode == 1


def test_even_n_points_is_config_error(tmp_path):
    proc = run_cli(["eec", "--n-points", "4", "--out-dir", str(tmp_path / "run")])
    assert proc.returncode == 2
    assert "configuration error" in proc.stderr


def test_eigen_analytic_column_and_exit(tmp_path):
    out = tmp_path / "run"
    proc = run_cli(["eigen", "--b", "12", "--n-points", "2001", "--beta1", "2",
                    "--omega", "3", "--k", "3", "--out-dir", str(out)])
    assert proc.returncode == 0, proc.stderr
    rows = read_rows(out / "eigenvalues.csv")
    assert [float(r["gamma_analytic"]) for r in rows] == [3.0, 9.0, 15.0]
    assert all(float(r["rel_error"]) <= 1e-5 for r in rows)


def test_eigen_zero_modes_writes_header_only(tmp_path):
    out = tmp_path / "run"
    proc = run_cli(["eigen", "--k", "0", "--n-points", "1001",
                    "--out-dir", str(out)])
    assert proc.returncode == 0
    text = (out / "eigenvalues.csv").read_text()
    assert text == "n,gamma_numeric,gamma_analytic,rel_error\n"


def test_fig1_outputs_and_contrast(tmp_path):
    out = tmp_path / "run"
    proc = run_cli(["fig1", *COMMON_FAST, "--c-list", "0,0.5,1",
                    "--trials", "20", "--modes", "50", "--out-dir", str(out)])
    assert proc.returncode == 0, proc.stderr
    assert (out / "plot_fig1.py").exists()
    trials = read_rows(out / "fig1_trials.csv")
    assert len(trials) == 3 * 20
    summary = {r["c"]: r for r in read_rows(out / "fig1_summary.csv")}
    assert float(summary["0.5"]["std"]) >= 100 * float(summary["1"]["std"])


def test_fig1_single_trial(tmp_path):
    out = tmp_path / "run"
    proc = run_cli(["fig1", *COMMON_FAST, "--c-list", "0.5", "--trials", "1",
                    "--modes", "50", "--out-dir", str(out)])
    assert proc.returncode == 0
    assert len(read_rows(out / "fig1_trials.csv")) == 1


def test_ladder_default_survivors(tmp_path):
    out = tmp_path / "run"
    proc = run_cli(["ladder", "--out-dir", str(out)])
    assert proc.returncode == 0
    rows = read_rows(out / "spectrum.csv")
    assert len(rows) == 16
    kept = [(r["n"], r["m"]) for r in rows if r["survives"] == "1"]
    assert kept == [("0", "0"), ("1", "1"), ("2", "2"), ("3", "3")]


def test_ensemble_identity_columns(tmp_path):
    out = tmp_path / "run"
    proc = run_cli(["ensemble", "--num-samples", "100000",
                    "--a-dist", "point:1.0", "--out-dir", str(out)])
    assert proc.returncode == 0, proc.stderr
    row, = read_rows(out / "ensemble_check.csv")
    assert float(row["dev_E_rel"]) <= 1e-12


def test_ensemble_bad_dist_spec_is_config_error(tmp_path):
    proc = run_cli(["ensemble", "--a-dist", "bogus:1",
                    "--out-dir", str(tmp_path / "run")])
    assert proc.returncode == 2


def test_fit_roundtrip_against_manifest_truth(tmp_path):
    out = tmp_path / "run"
    proc = run_cli(["fit", "--rows", "50", "--out-dir", str(out)])
    assert proc.returncode == 0, proc.stderr
    manifest = json.loads((out / "manifest.json").read_text())
    truth = manifest["config"]["beta_true"]
    row, = read_rows(out / "fit.csv")
    assert abs(float(row["beta_hat"]) - truth) <= 1e-10 * truth
    assert abs(float(row["intercept"]) - manifest["config"]["work_function"]) \
        <= 1e-9 * manifest["config"]["work_function"]


def test_fit_reads_external_csv(tmp_path):
    data = tmp_path / "data.csv"
    data.write_text("omega,energy\n1,2\n2,4\n3,6\n")
    out = tmp_path / "run"
    proc = run_cli(["fit", "--data", str(data), "--model", "origin",
                    "--out-dir", str(out)])
    assert proc.returncode == 0
    row, = read_rows(out / "fit.csv")
    assert float(row["beta_hat"]) == 2.0
    assert float(row["intercept"]) == 0.0


def test_manifest_lists_output_hashes(tmp_path):
    out = tmp_path / "run"
    run_cli(["ladder", "--out-dir", str(out)])
    manifest = json.loads((out / "manifest.json").read_text())
    for name, digest in manifest["outputs"].items():
        assert hashlib.sha256((out / name).read_bytes()).hexdigest() == digest
    assert "spectrum.csv" in manifest["outputs"]


@pytest.mark.parametrize("args", [
    ["eigen", "--b", "12", "--n-points", "1201", "--k", "5"],
    ["fig1", "--b", "10", "--n-points", "1001", "--c-list", "0,0.5,1",
     "--trials", "10", "--modes", "50"],
    ["ladder", "--n-max", "4", "--m-max", "4"],
    ["ensemble", "--num-samples", "50000", "--a-dist", "uniform:0.5,1.5"],
    ["fit", "--rows", "40", "--noise", "0.01"],
])
def test_reruns_are_byte_identical_across_thread_counts(tmp_path, args):
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    p1 = run_cli([*args, "--seed", "3", "--out-dir", str(out1)],
                 env_extra={"OMP_NUM_THREADS": "1"})
    p2 = run_cli([*args, "--seed", "3", "--out-dir", str(out2)],
                 env_extra={"OMP_NUM_THREADS": "4"})
    assert p1.returncode == p2.returncode == 0, p1.stderr + p2.stderr
    assert tree_bytes(out1) == tree_bytes(out2)
