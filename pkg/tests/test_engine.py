import pytest
import qudio as Q
import numpy as np
import json
import time
from utils import *
from data import *

def qnn_problem(Qn : int = 2, regularization : float = 0.):
    spec = Q.gradients.QnnLossSpec(circuit_small_qnn(), regularization)
    train = random_examples(3, 12, seed=0)
    test = random_examples(3, 6, seed=1)
    return Q.engine.QnnProblem.build(spec, train, test, Qn, seed=0)

def vqe_problem(Qn : int = 2):
    spec = Q.gradients.VqeSpec(Q.hamiltonian.parse_hamiltonian(H2_EQUILIBRIUM_TEXT))
    return Q.engine.VqeProblem.build(spec, Qn)

def small_config(**kwargs):
    defaults = dict(Q=2, W=2, T=3, learning_rate=0.1, momentum=0.5, decay_period=2)
    defaults.update(kwargs)
    return Q.GlobalConfig(**defaults)

########## Synchronization and local updates ##########

def test_synchronize():
    out = Q.engine.synchronize([np.array([0., 0.]), np.array([2., 4.])])
    assert np.allclose(out, [1., 2.])
    assert np.allclose(Q.engine.synchronize([np.array([1., 2., 3.])]), [1., 2., 3.])

def test_synchronize_errors():
    with pytest.raises(Q.utils.InvalidDimensionError):
        Q.engine.synchronize([])
    with pytest.raises(Q.utils.InvalidDimensionError):
        Q.engine.synchronize([np.zeros(2), np.zeros(3)])

def test_synchronize_permutation_invariant():
    rng = np.random.default_rng(0)
    params = [rng.normal(size=7) for _ in range(5)]
    ref = Q.engine.synchronize(params)
    for _ in range(10):
        order = rng.permutation(len(params))
        assert np.allclose(Q.engine.synchronize([params[i] for i in order]), ref, rtol=0., atol=1e-14)

def test_conservation():
    rng = np.random.default_rng(1)
    params = [rng.uniform(0., 2*np.pi, size=12) for _ in range(8)]
    Q.engine.check_conservation(params, Q.engine.synchronize(params))
    Q.engine.check_conservation([np.zeros(3)], np.zeros(3))

def test_conservation_violated():
    params = [np.array([0., 1.]), np.array([2., 3.])]
    with pytest.raises(Q.engine.InvariantViolationError) as e:
        Q.engine.check_conservation(params, np.array([1., 2.5]), round_index=4)
    assert "round 4" in str(e.value)

def test_initial_parameters():
    a = Q.engine.initial_parameters(18, 4)
    assert np.array_equal(a, Q.engine.initial_parameters(18, 4))
    assert not np.array_equal(a, Q.engine.initial_parameters(18, 5))
    assert np.all((a >= 0.) & (a < 2*np.pi))

def test_initial_parameters_range():
    a = Q.engine.initial_parameters(12, 4, init_range=0.2)
    assert np.all((a >= 0.) & (a < 0.2))
    assert np.allclose(a, Q.engine.initial_parameters(12, 4) * 0.2 / (2*np.pi))

def test_init_range_config():
    assert Q.GlobalConfig().init_range == 2*np.pi
    assert Q.GlobalConfig.for_workload("vqe").init_range == Q.config.VQE_INIT_RANGE
    with pytest.raises(Q.utils.InvalidRangeArgumentError):
        Q.GlobalConfig(init_range=0.).validate()

def test_local_loop_no_step():
    problem = qnn_problem()
    node = Q.engine.LocalNode(0, problem, small_config())
    theta = np.ones(problem.n_params)
    out, v = Q.engine.local_update_loop(node, theta, 0, W=0)
    assert np.array_equal(out, theta)
    assert np.all(v == 0.)

def test_local_loop_single_step():
    problem = qnn_problem()
    cfg = small_config(W=1, momentum=0.)
    node = Q.engine.LocalNode(1, problem, cfg)
    theta = np.ones(problem.n_params)
    out, _ = Q.engine.local_update_loop(node, theta, 0)
    g = problem.local_gradient(theta, 1, node.rng(0), cfg)
    assert np.allclose(out, theta - cfg.learning_rate * g.values)

def test_local_loop_uses_schedule():
    problem = qnn_problem()
    cfg = small_config(W=1, momentum=0., decay_factor=0.5, decay_period=1)
    node = Q.engine.LocalNode(0, problem, cfg)
    theta = np.ones(problem.n_params)
    out, _ = Q.engine.local_update_loop(node, theta, 3)
    g = problem.local_gradient(theta, 0, node.rng(3), cfg)
    assert np.allclose(out, theta - 0.1 * 0.5**3 * g.values)

########## Configuration ##########

def test_config_defaults():
    cfg = Q.GlobalConfig()
    assert cfg.workload == Q.engine.Workload.QNN
    assert cfg.executor == Q.engine.Executor.SERIAL
    assert cfg.T == 120
    assert cfg.validate() is cfg

def test_config_vqe_defaults():
    cfg = Q.GlobalConfig.for_workload("vqe", Q=4)
    assert cfg.Q == 4
    assert cfg.learning_rate == Q.config.VQE_LEARNING_RATE
    assert cfg.T == Q.config.VQE_GLOBAL_STEPS
    assert Q.GlobalConfig.for_workload("vqe", T=7).T == 7

@pytest.mark.parametrize("kwargs", [
    {"Q" : 0}, {"W" : 0}, {"T" : 0}, {"regularization" : -1.}, {"batch_size" : 0}, {"workers" : 0}, {"momentum" : 1.},
])
def test_config_invalid(kwargs):
    with pytest.raises(Q.utils.InvalidRangeArgumentError):
        Q.GlobalConfig(**kwargs).validate()

def test_config_invalid_gradient():
    with pytest.raises(Q.utils.InvalidArgumentValueError):
        Q.GlobalConfig(ideal_gradient="backprop").validate()

def test_config_invalid_enum():
    with pytest.raises(ValueError):
        Q.GlobalConfig(executor="gpu")

def test_config_dict():
    cfg = small_config(noise=Q.NoiseModel(0.01, 100), executor="thread", workload="vqe")
    d = cfg.to_dict()
    assert d["noise"] == {"p" : 0.01, "shots" : 100}
    assert d["executor"] == "thread"
    json.dumps(d)
    assert Q.GlobalConfig.from_dict(d).to_dict() == d

########## Problems ##########

def test_qnn_problem_shards():
    problem = qnn_problem(3)
    assert problem.n_nodes == 3
    assert problem.shards.sizes() == [4, 4, 4]
    assert problem.metric_name == "test_accuracy"

def test_qnn_problem_mismatch():
    spec = Q.gradients.QnnLossSpec(circuit_small_qnn())
    with pytest.raises(Q.utils.InvalidDimensionError):
        Q.engine.QnnProblem(spec, random_examples(3, 5), [], Q.datasets.shard(6, 2))

def test_qnn_problem_no_test_set():
    spec = Q.gradients.QnnLossSpec(circuit_small_qnn())
    problem = Q.engine.QnnProblem.build(spec, random_examples(3, 4), [], 2)
    assert np.isnan(problem.metric(np.zeros(spec.n_params)))

def test_qnn_full_gradient_norm():
    problem = qnn_problem()
    theta = np.ones(problem.n_params)
    g = problem.full_gradient(theta)
    assert abs(problem.grad_norm_sq(theta) - np.dot(g, g)) < 1e-14

def test_vqe_problem():
    problem = vqe_problem(4)
    assert problem.n_nodes == 4
    assert problem.partition.n_terms == 15
    theta = np.zeros(12)
    assert problem.train_loss(theta) == problem.metric(theta)
    total = sum(problem.local_gradient(theta, i, None, Q.GlobalConfig()).values for i in range(4))
    assert np.allclose(total, problem.full_gradient(theta), atol=1e-12)

def test_evaluation():
    assert Q.engine.predict_label(0.5) == 0
    assert Q.engine.predict_label(0.51) == 1
    assert np.array_equal(Q.engine.predict_label(np.array([0.2, 0.5, 0.9])), [0, 0, 1])
    spec = Q.gradients.QnnLossSpec(Q.quantum.build_qnn_ansatz(6, 1))
    theta = np.zeros(spec.n_params)
    assert Q.engine.evaluate_accuracy(theta, [example_zero(label=1)], spec) == 1.
    assert Q.engine.evaluate_accuracy(theta, [example_zero(label=0), example_zero(label=1)], spec) == 0.5

########## Training loop ##########

def test_run_length():
    cfg = small_config()
    trace = Q.run_qudio(cfg, qnn_problem())
    assert len(trace) == cfg.T + 1
    assert trace.n_rounds == cfg.T
    assert trace.config == cfg.to_dict()
    assert trace.metric_name == "test_accuracy"
    assert all(b >= a for a,b in zip(trace.wall_clock, trace.wall_clock[1:]))
    assert trace.wall_clock[0] == 0.

def test_trainer_is_worker(capsys):
    trainer = Q.engine.Qudio(qnn_problem(), small_config(T=1), verbose=True)
    assert isinstance(trainer, Q.Worker)
    assert trainer() is trainer
    assert len(trainer.trace) == 2
    assert "[QUDIO]" in capsys.readouterr().out

def test_run_shard_mismatch():
    with pytest.raises(Q.utils.InvalidDimensionError):
        Q.run_qudio(small_config(Q=3), qnn_problem(2))

def test_run_initial_params():
    problem = qnn_problem()
    theta0 = np.zeros(problem.n_params)
    trace = Q.run_qudio(small_config(T=1), problem, initial_params=theta0)
    assert np.array_equal(trace.params[0], theta0)
    with pytest.raises(Q.utils.InvalidDimensionError):
        Q.run_qudio(small_config(T=1), problem, initial_params=np.zeros(3))

def test_first_round_is_average():
    problem = qnn_problem()
    cfg = small_config(T=1)
    trace = Q.run_qudio(cfg, problem)
    theta0 = trace.params[0]
    local = [Q.engine.local_update_loop(Q.engine.LocalNode(i, problem, cfg), theta0, 0)[0] for i in range(cfg.Q)]
    assert np.allclose(trace.params[1], Q.engine.synchronize(local))

def test_single_node_is_sgd():
    problem = qnn_problem(1)
    cfg = small_config(Q=1, W=1, T=4, momentum=0.)
    trace = Q.run_qudio(cfg, problem)
    theta = trace.params[0]
    for t in range(cfg.T):
        g = problem.local_gradient(theta, 0, Q.utils.node_rng(cfg.seed, 0, t), cfg)
        theta = theta - cfg.sgd.learning_rate_at(t) * g.values
        assert np.allclose(trace.params[t+1], theta)

def test_single_node_long_run_is_sgd():
    problem = qnn_problem(1)
    cfg = small_config(Q=1, W=1, T=200, momentum=0., decay_factor=1.)
    trace = Q.run_qudio(cfg, problem)
    theta = trace.params[0]
    deviation = 0.
    for t in range(cfg.T):
        g = problem.local_gradient(theta, 0, Q.utils.node_rng(cfg.seed, 0, t), cfg)
        theta = theta - cfg.sgd.learning_rate_at(t) * g.values
        deviation = max(deviation, float(np.max(np.abs(trace.params[t+1] - theta))))
    assert deviation <= 1e-12

def test_train_loss_recorded():
    problem = qnn_problem()
    trace = Q.run_qudio(small_config(), problem)
    for t in range(len(trace)):
        assert abs(trace.train_loss[t] - problem.train_loss(trace.params[t])) < 1e-12

def test_no_grad_norm():
    trace = Q.run_qudio(small_config(record_grad_norm=False), qnn_problem())
    assert all(np.isnan(trace.grad_norm_sq))

def test_carry_momentum():
    problem = qnn_problem()
    reset = Q.run_qudio(small_config(T=2), problem)
    carry = Q.run_qudio(small_config(T=2, carry_momentum=True), problem)
    assert np.array_equal(reset.params[1], carry.params[1])
    assert not np.allclose(reset.params[2], carry.params[2])

@pytest.mark.parametrize("noise", [Q.NoiseModel(), Q.NoiseModel(0.01, 20)])
def test_seeded_runs_are_identical(noise):
    a = Q.run_qudio(small_config(noise=noise), qnn_problem())
    b = Q.run_qudio(small_config(noise=noise), qnn_problem())
    assert compare_traces(a, b)
    c = Q.run_qudio(small_config(noise=noise, seed=1), qnn_problem())
    assert not compare_traces(a, c)

@pytest.mark.parametrize("executor", ["thread", "process"])
def test_executors_agree(executor):
    noise = Q.NoiseModel(0.01, 20)
    serial = Q.run_qudio(small_config(noise=noise, Q=3), qnn_problem(3))
    parallel = Q.run_qudio(small_config(noise=noise, Q=3, executor=executor, workers=2), qnn_problem(3))
    assert compare_traces(serial, parallel)
    assert all(np.array_equal(x, y) for x,y in zip(serial.params, parallel.params))

class FailingProblem(Q.engine.QnnProblem):
    def local_gradient(self, params, node_id, rng, config):
        if node_id == 1:
            raise RuntimeError("quantum processor unavailable")
        return super().local_gradient(params, node_id, rng, config)

@pytest.mark.parametrize("executor", ["serial", "thread"])
def test_node_failure(executor):
    spec = Q.gradients.QnnLossSpec(circuit_small_qnn())
    train = random_examples(3, 8)
    problem = FailingProblem.build(spec, train, [], 2)
    with pytest.raises(Q.engine.NodeFailureError) as e:
        Q.run_qudio(small_config(executor=executor), problem)
    assert e.value.node_id == 1
    assert e.value.round_index == 0

def test_vqe_run_noisy():
    cfg = Q.GlobalConfig.for_workload("vqe", Q=3, W=2, T=3, noise=Q.NoiseModel(0.001, 50))
    trace = Q.run_qudio(cfg, vqe_problem(3))
    assert trace.metric_name == "energy"
    assert len(trace) == 4
    # the recorded energy is the ideal energy of the synchronized parameters
    assert trace.metric == trace.train_loss

@pytest.mark.slow
@pytest.mark.parametrize("Qn", [1, 3])
def test_vqe_energy_decreases(Qn):
    problem = vqe_problem(Qn)
    exact = Q.hamiltonian.exact_ground_energy(problem.spec.hamiltonian)
    trace = Q.run_qudio(Q.GlobalConfig.for_workload("vqe", Q=Qn, T=100), problem)
    assert trace.metric[-1] < trace.metric[0]
    assert min(trace.metric) >= exact - 1e-9

def shipped_vqe_problem(distance : float, Qn : int):
    path = Q.hamiltonian.hamiltonian_path(Q.config.H2_DATA_DIR, distance)
    return Q.engine.VqeProblem.build(Q.gradients.VqeSpec(Q.hamiltonian.load_hamiltonian(path)), Qn)

@pytest.mark.slow
@pytest.mark.parametrize("Qn", [1, 2, 4, 8])
def test_vqe_shot_accuracy_on_bond_grid(Qn):
    for distance in Q.config.VQE_BOND_DISTANCES:
        problem = shipped_vqe_problem(distance, Qn)
        exact = Q.hamiltonian.exact_ground_energy(problem.spec.hamiltonian)
        passed = 0
        for seed in range(5):
            cfg = Q.GlobalConfig.for_workload("vqe", Q=Qn, W=1, seed=seed, noise=Q.NoiseModel(shots=100))
            trace = Q.run_qudio(cfg, problem)
            passed += abs(trace.metric[-1] - exact) < 0.1
        assert passed >= 4, f"d={distance}"

@pytest.mark.slow
def test_vqe_local_steps_degrade():
    problem = shipped_vqe_problem(0.3, 2)
    exact = Q.hamiltonian.exact_ground_energy(problem.spec.hamiltonian)
    error, r1 = {}, {}
    for W in (1, 8):
        traces = [Q.run_qudio(Q.GlobalConfig.for_workload("vqe", Q=2, W=W, seed=seed, noise=Q.NoiseModel(shots=100)), problem) for seed in range(5)]
        error[W] = np.mean([abs(trace.metric[-1] - exact) for trace in traces])
        r1[W] = np.mean([Q.diagnostics.utility_R1(trace) for trace in traces])
    assert error[8] > error[1]
    assert r1[8] >= r1[1]

class SlowProcessorProblem(Q.engine.VqeProblem):
    """every measured term costs a fixed latency on the local processor"""
    def local_gradient(self, params, node_id, rng, config):
        time.sleep(0.01 * len(self.partition[node_id]))
        return super().local_gradient(params, node_id, rng, config)

def test_wall_clock_decreases_with_nodes():
    spec = Q.gradients.VqeSpec(Q.hamiltonian.parse_hamiltonian(H2_EQUILIBRIUM_TEXT))
    clock = []
    for Qn in (1, 2, 4):
        cfg = Q.GlobalConfig.for_workload("vqe", Q=Qn, T=3, executor="thread", workers=Qn, noise=Q.NoiseModel(shots=100))
        clock.append(Q.run_qudio(cfg, SlowProcessorProblem.build(spec, Qn)).wall_clock[-1])
    assert clock[1] <= 1.1 * clock[0]
    assert clock[2] <= 1.1 * clock[1]

########## Trace files ##########

def make_trace():
    trace = Q.TrainingTrace(metric_name="energy")
    trace.record(np.zeros(2), 0., 1.5, 0.25, -0.5)
    trace.record(np.ones(2), 0.125, 1.25, float("nan"), -0.75)
    return trace

def test_trace_csv(tmp_path):
    trace = make_trace()
    path = str(tmp_path / "trace.csv")
    trace.save_csv(path)
    with open(path) as f:
        assert f.readline().strip() == "round,wall_clock_s,train_loss,grad_norm_sq,metric"
    loaded = Q.TrainingTrace.load_csv(path, "energy")
    assert compare_traces(trace, loaded, ("wall_clock", "train_loss", "grad_norm_sq", "metric"))
    assert loaded.params == [None, None]

def test_trace_csv_bad_header(tmp_path):
    path = tmp_path / "trace.csv"
    path.write_text("round,time,loss\n0,0.,1.\n")
    with pytest.raises(Q.utils.InvalidDimensionError):
        Q.TrainingTrace.load_csv(str(path))

def test_trace_clock():
    trace = make_trace()
    with pytest.raises(Q.TrainingTrace.NonMonotonicClockError):
        trace.record(np.zeros(2), 0.1, 1., 1., 1.)

def test_trace_summary_json(tmp_path):
    trace = make_trace()
    summary = trace.summary()
    assert summary["rounds"] == 1
    assert summary["final_energy"] == -0.75
    assert summary["best_energy"] == -0.75
    path = str(tmp_path / "summary.json")
    trace.save_json(path, {"run_id" : "abc"})
    with open(path) as f:
        content = json.load(f)
    assert content["final_params"] == [1., 1.]
    assert content["initial_params"] == [0., 0.]
    assert content["run_id"] == "abc"
    assert Q.TrainingTrace().summary() == {}
