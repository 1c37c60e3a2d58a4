import pytest
import qudio as Q
import numpy as np
import csv
import json
import os
from qudio.cli import main, EXIT_SUCCESS, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL, RunManifest
from utils import *
from data import *

def read_csv(path):
    with open(path, newline="") as f:
        return list(csv.reader(f))

def without_clock(rows):
    header = rows[0]
    keep = [i for i,h in enumerate(header) if h != "wall_clock_s"]
    return [[r[i] for i in keep] for r in rows]

@pytest.fixture(scope="module")
def mnist_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp("mnist")
    write_synthetic_mnist(directory, 200, 100)
    return str(directory)

@pytest.fixture(scope="module")
def hamiltonian_dir(tmp_path_factory):
    directory = str(tmp_path_factory.mktemp("hamiltonians"))
    assert main(["make-hamiltonians", "--hamiltonian-dir", directory, "--bond-distances", "0.7,1.1", "--quiet"]) == EXIT_SUCCESS
    return directory

QNN_FLAGS = ["--train-count", "16", "--test-count", "8", "-Q", "2", "-W", "1", "-T", "2", "--executor", "serial", "--quiet"]

########## Usage errors ##########

def test_no_command():
    assert main([]) == EXIT_USAGE

def test_unknown_command():
    assert main(["train-everything"]) == EXIT_USAGE

def test_help():
    assert main(["--help"]) == EXIT_SUCCESS

def test_unknown_flag(hamiltonian_dir):
    assert main(["vqe", "--hamiltonian-dir", hamiltonian_dir, "--warp-speed"]) == EXIT_USAGE

def test_bad_list(hamiltonian_dir):
    assert main(["vqe", "--hamiltonian-dir", hamiltonian_dir, "--bond-distances", "0.7,far"]) == EXIT_USAGE

def test_ideal_conflicts_with_shots(mnist_dir):
    assert main(["qnn-train", "--dataset-dir", mnist_dir, "--ideal", "--shots", "10"] + QNN_FLAGS) == EXIT_USAGE

def test_invalid_ranges(mnist_dir, tmp_path):
    assert main(["qnn-train", "--dataset-dir", mnist_dir, "--shots", "0"] + QNN_FLAGS) == EXIT_USAGE
    assert main(["qnn-train", "--dataset-dir", mnist_dir, "-p", "1.5"] + QNN_FLAGS) == EXIT_USAGE
    assert main(["qnn-train", "--dataset-dir", mnist_dir, "--momentum", "1"] + QNN_FLAGS) == EXIT_USAGE
    assert main(["qnn-train", "--dataset-dir", mnist_dir, "--out", str(tmp_path), "-Q", "0", "--ideal", "--quiet"]) == EXIT_USAGE

def test_lambda_with_vqe(hamiltonian_dir):
    assert main(["vqe", "--hamiltonian-dir", hamiltonian_dir, "--lambda", "0.1", "--quiet"]) == EXIT_USAGE

def test_bias_check_trials():
    assert main(["bias-check", "--trials", "0", "--quiet"]) == EXIT_USAGE
    assert main(["bias-check", "--trials", "1", "--quiet"]) == EXIT_USAGE
    assert main(["bias-check", "--trials", "10", "--configs", "0", "--quiet"]) == EXIT_USAGE

def test_missing_dataset_dir(monkeypatch):
    monkeypatch.delenv(Q.config.DATA_ENV_VAR, raising=False)
    assert main(["qnn-train", "--ideal", "--quiet"]) == EXIT_USAGE

def test_vqe_shipped_hamiltonians(tmp_path):
    out = str(tmp_path / "vqe")
    assert main(["vqe", "--bond-distances", "0.3", "-T", "2", "--ideal", "--executor", "serial", "--out", out, "--quiet"]) == EXIT_SUCCESS
    rows = read_csv(os.path.join(out, "energies.csv"))
    shipped = Q.hamiltonian.load_hamiltonian(Q.hamiltonian.hamiltonian_path(Q.config.H2_DATA_DIR, 0.3))
    assert abs(float(rows[1][2]) - Q.hamiltonian.exact_ground_energy(shipped)) < 1e-9
    manifest = RunManifest.load(os.path.join(out, "manifest.json"))
    assert len(manifest.inputs) == 1

########## Data errors ##########

def test_missing_hamiltonian(hamiltonian_dir, tmp_path):
    assert main(["vqe", "--hamiltonian-dir", hamiltonian_dir, "--bond-distances", "0.9", "--out", str(tmp_path), "--quiet"]) == EXIT_DATA

def test_malformed_hamiltonian(tmp_path):
    directory = tmp_path / "bad"
    directory.mkdir()
    (directory / Q.hamiltonian.hamiltonian_filename(0.7)).write_text("0.5 ZZ\nhello IIII\n")
    assert main(["vqe", "--hamiltonian-dir", str(directory), "--bond-distances", "0.7", "--out", str(tmp_path / "out"), "--quiet"]) == EXIT_DATA

def test_truncated_mnist(tmp_path):
    write_synthetic_mnist(tmp_path, 50, 20, compress=False)
    path = tmp_path / "train-labels-idx1-ubyte"
    path.write_bytes(path.read_bytes()[:-5])
    assert main(["qnn-train", "--dataset-dir", str(tmp_path), "--out", str(tmp_path / "out")] + QNN_FLAGS) == EXIT_DATA

def test_insufficient_mnist(mnist_dir, tmp_path):
    flags = ["--train-count", "5000", "--ideal", "-T", "1", "--executor", "serial", "--quiet"]
    assert main(["qnn-train", "--dataset-dir", mnist_dir, "--out", str(tmp_path)] + flags) == EXIT_DATA

########## Runs ##########

def test_make_hamiltonians(hamiltonian_dir):
    for d in (0.7, 1.1):
        h = Q.hamiltonian.load_hamiltonian(Q.hamiltonian.hamiltonian_path(hamiltonian_dir, d))
        assert len(h) == 15
        assert h.n_qubits == 4

def test_vqe_run(hamiltonian_dir, tmp_path):
    out = str(tmp_path / "vqe")
    argv = ["vqe", "--hamiltonian-dir", hamiltonian_dir, "--bond-distances", "0.7,1.1", "-Q", "3", "-T", "3", "--shots", "20", "-p", "0.001", "--executor", "serial", "--out", out, "--quiet"]
    assert main(argv) == EXIT_SUCCESS
    rows = read_csv(os.path.join(out, "energies.csv"))
    assert rows[0] == ["distance", "final_energy", "exact_energy", "error"]
    assert len(rows) == 3
    for r in rows[1:]:
        assert float(r[1]) >= float(r[2]) - 1e-9
    trace = Q.TrainingTrace.load_csv(os.path.join(out, "trace_0.70A.csv"))
    assert len(trace) == 4
    manifest = RunManifest.load(os.path.join(out, "manifest.json"))
    assert manifest.subcommand == "vqe"
    assert manifest.argv == argv[1:] or manifest.argv == argv
    assert len(manifest.inputs) == 2
    assert manifest.changed_inputs() == []
    with open(os.path.join(out, "summary.json")) as f:
        summary = json.load(f)
    assert summary["run_id"] == manifest.run_id
    assert summary["config"]["noise"] == {"p" : 0.001, "shots" : 20}

def test_qnn_train_reproducible(mnist_dir, tmp_path):
    outs = [str(tmp_path / f"run{i}") for i in range(2)]
    for out in outs:
        assert main(["qnn-train", "--dataset-dir", mnist_dir, "--shots", "10", "-p", "0.01", "--out", out] + QNN_FLAGS) == EXIT_SUCCESS
    a, b = (read_csv(os.path.join(out, "trace.csv")) for out in outs)
    assert a[0] == ["round", "wall_clock_s", "train_loss", "grad_norm_sq", "metric"]
    assert len(a) == 4
    assert without_clock(a) == without_clock(b)
    manifests = [RunManifest.load(os.path.join(out, "manifest.json")) for out in outs]
    assert manifests[0].run_id == manifests[1].run_id
    assert len(manifests[0].inputs) == 4
    with open(os.path.join(outs[0], "summary.json")) as f:
        summary = json.load(f)
    assert summary["utility_R1"] >= 0.
    assert summary["config"]["Q"] == 2
    assert len(summary["final_params"]) == 72

def test_qnn_train_seed_changes_run(mnist_dir, tmp_path):
    for seed in ("0", "1"):
        assert main(["qnn-train", "--dataset-dir", mnist_dir, "--ideal", "--seed", seed, "--out", str(tmp_path / seed)] + QNN_FLAGS) == EXIT_SUCCESS
    a, b = (read_csv(str(tmp_path / s / "trace.csv")) for s in ("0", "1"))
    assert without_clock(a) != without_clock(b)

def test_qnn_train_dataset_env(mnist_dir, tmp_path, monkeypatch):
    monkeypatch.setenv(Q.config.DATA_ENV_VAR, mnist_dir)
    assert main(["qnn-train", "--ideal", "--no-grad-norm", "--out", str(tmp_path)] + QNN_FLAGS) == EXIT_SUCCESS
    with open(tmp_path / "summary.json") as f:
        assert json.load(f)["utility_R1"] is None

def test_replay(mnist_dir, tmp_path):
    out = str(tmp_path / "run")
    assert main(["qnn-train", "--dataset-dir", mnist_dir, "--ideal", "--out", out] + QNN_FLAGS) == EXIT_SUCCESS
    before = read_csv(os.path.join(out, "trace.csv"))
    assert main(["replay", os.path.join(out, "manifest.json"), "--quiet"]) == EXIT_SUCCESS
    assert without_clock(read_csv(os.path.join(out, "trace.csv"))) == without_clock(before)

def test_replay_missing_manifest(tmp_path):
    assert main(["replay", str(tmp_path / "manifest.json")]) == EXIT_DATA

def test_bias_check_run(tmp_path):
    out = str(tmp_path / "bias")
    argv = ["bias-check", "-p", "0.01", "--shots", "10", "--trials", "200", "--configs", "2", "--n-qubits", "3", "--n-blocks", "1", "--out", out, "--quiet"]
    assert main(argv) == EXIT_SUCCESS
    with open(os.path.join(out, "bias_report.json")) as f:
        report = json.load(f)
    assert len(report["reports"]) == 2
    assert 0. <= report["pass_rate"] <= 1.
    assert 0. <= report["published_pass_rate"] <= 1.
    assert report["reports"][0]["shots"] == 10

def test_bench_not_reached(mnist_dir, tmp_path):
    out = str(tmp_path / "bench")
    argv = ["bench", "--dataset-dir", mnist_dir, "--sweep", "1,2", "--threshold", "1.1", "--ideal", "--out", out] + QNN_FLAGS
    assert main(argv) == EXIT_SUCCESS
    rows = read_csv(os.path.join(out, "bench.csv"))
    assert rows[0] == ["Q", "time_to_threshold_s", "speedup_to_accuracy", "fixed_T_time_s", "fixed_T_speedup"]
    assert [r[0] for r in rows[1:]] == ["1", "2"]
    for r in rows[1:]:
        assert r[1] == "not reached"
        assert r[2] == "not reached"
    assert os.path.isfile(os.path.join(out, "trace_Q1.csv"))
    assert os.path.isfile(os.path.join(out, "trace_Q2.csv"))

def test_bench_vqe(hamiltonian_dir, tmp_path):
    out = str(tmp_path / "bench")
    argv = ["bench", "--workload", "vqe", "--hamiltonian-dir", hamiltonian_dir, "--bond-distances", "0.7", "--sweep", "1,3", "-T", "2", "--ideal", "--executor", "serial", "--out", out, "--quiet"]
    assert main(argv) == EXIT_SUCCESS
    with open(os.path.join(out, "bench.json")) as f:
        bench = json.load(f)
    assert bench["metric"] == "energy"
    assert set(bench["results"]) == {"1", "3"}

def test_manifest_roundtrip(tmp_path):
    data = tmp_path / "input.txt"
    data.write_text("1.0 Z\n")
    manifest = RunManifest("vqe", ["vqe", "-T", "3"], {"T" : 3})
    manifest.add_input(str(data))
    path = manifest.save(str(tmp_path))
    loaded = RunManifest.load(path)
    assert loaded.run_id == manifest.run_id
    assert loaded.changed_inputs() == []
    data.write_text("2.0 Z\n")
    assert loaded.changed_inputs() == [os.path.abspath(str(data))]
    assert RunManifest("vqe", [], {"T" : 4}).run_id != manifest.run_id
