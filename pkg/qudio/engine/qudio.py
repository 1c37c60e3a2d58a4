from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
import os
import time
import numpy as np
from tqdm import trange

from .parameters import GlobalConfig, Executor
from .problems import Problem
from .node import LocalNode, local_update_loop
from .trace import TrainingTrace
from ..worker import Worker
from ..utils.argument_check import InvalidDimensionError
from ..utils.rng import init_rng, eval_rng

class NodeFailureError(Exception):
    def __init__(self, node_id : int, round_index : int, cause : Exception):
        self.node_id = node_id
        self.round_index = round_index
        super().__init__(f"Local node {node_id} failed at global round {round_index}: {type(cause).__name__}: {cause}")

class InvariantViolationError(Exception):
    def __init__(self, reason : str):
        super().__init__(f"Internal invariant violated: {reason}")

def synchronize(params_list : list) -> np.ndarray:
    """
    Synchronization of the local parameters: unweighted componentwise mean θ^(t+1) = 1/Q Σ_i θ_i^(t,W)

    Args:
        params_list (list): Q >= 1 parameter vectors of equal length

    Raises:
        InvalidDimensionError: if the list is empty or the lengths differ

    Returns:
        np.ndarray
    """
    if len(params_list) == 0:
        raise InvalidDimensionError("parameter list", 0, ">= 1 vector")
    d = np.asarray(params_list[0]).shape
    for p in params_list:
        if np.asarray(p).shape != d:
            raise InvalidDimensionError("parameter vector", np.asarray(p).shape, d)
    return np.mean(np.stack([np.asarray(p, dtype=float) for p in params_list]), axis=0)

def check_conservation(params_list : list, theta : np.ndarray, round_index : int = None, rtol : float = 1e-12) -> None:
    """
    Barrier check: the offsets θ_i - θ of the local nodes to the synchronized parameters sum to zero.

    Raises:
        InvariantViolationError: if |Σ_i (θ_i - θ)| exceeds rtol * Q * max(1, max_i |θ_i|) on some component
    """
    stacked = np.stack([np.asarray(p, dtype=float) for p in params_list])
    drift = np.max(np.abs(np.sum(stacked - theta, axis=0))) if stacked.size > 0 else 0.
    scale = len(params_list) * max(1., float(np.max(np.abs(stacked))) if stacked.size > 0 else 1.)
    if not drift <= rtol * scale:
        where = "" if round_index is None else f" at round {round_index}"
        raise InvariantViolationError(f"synchronized parameters are not the mean of the local parameters{where} (drift {drift:.3e})")

class _RoundContext:
    """What a worker needs to run a node: installed once per worker process"""
    def __init__(self, problem : Problem, config : GlobalConfig):
        self.problem = problem
        self.config = config

_INSTALLED_CONTEXT = None

def _install_context(context : _RoundContext):
    global _INSTALLED_CONTEXT
    _INSTALLED_CONTEXT = context

def _node_task(node_id : int, params : np.ndarray, velocity : np.ndarray, round_index : int, context : _RoundContext = None):
    context = _INSTALLED_CONTEXT if context is None else context
    node = LocalNode(node_id, context.problem, context.config)
    return local_update_loop(node, params, round_index, velocity)

def initial_parameters(n_params : int, seed : int, init_range : float = 2*np.pi) -> np.ndarray:
    """θ^(0) drawn uniformly in [0, init_range)^d under the master seed"""
    return init_rng(seed).uniform(0., init_range, n_params)

class Qudio(Worker):
    """
    Bulk-synchronous distributed optimization of a variational quantum algorithm.
    At every global round the coordinator broadcasts θ^(t), the Q local nodes run W SGD steps each on their own shard,
    and the coordinator averages the results into θ^(t+1).

    Usage:
    ```
    trainer = Qudio(problem, config, verbose=True)
    trainer.run()
    trace = trainer.trace
    ```
    or `trace = run_qudio(config, problem)`
    """

    def __init__(self, problem : Problem, config : GlobalConfig, verbose : bool = False, initial_params : np.ndarray = None):
        super().__init__("QUDIO", verbose)
        self.problem = problem
        self.config = config.validate()
        if problem.n_nodes != config.Q:
            raise InvalidDimensionError("number of shards", problem.n_nodes, config.Q)
        self.params = initial_parameters(problem.n_params, config.seed, config.init_range) if initial_params is None else np.array(initial_params, dtype=float)
        if self.params.shape != (problem.n_params,):
            raise InvalidDimensionError("initial parameters", self.params.shape, (problem.n_params,))
        self.trace : TrainingTrace = None

    def _evaluate(self, round_index : int, wall_clock : float):
        cfg = self.config
        rng = eval_rng(cfg.seed, round_index) if cfg.noise.is_sampled else None
        grad_norm = self.problem.grad_norm_sq(self.params) if cfg.record_grad_norm else float("nan")
        self.trace.record(
            self.params, wall_clock,
            self.problem.train_loss(self.params),
            grad_norm,
            self.problem.metric(self.params, cfg.noise, rng))

    def _make_pool(self):
        cfg = self.config
        workers = cfg.workers if cfg.workers is not None else min(cfg.Q, os.cpu_count() or 1)
        if cfg.executor == Executor.PROCESS:
            return ProcessPoolExecutor(max_workers=workers, initializer=_install_context, initargs=(_RoundContext(self.problem, cfg),))
        if cfg.executor == Executor.THREAD:
            return ThreadPoolExecutor(max_workers=workers)
        return None

    def _run_round(self, pool, round_index : int, velocities : list) -> list:
        cfg = self.config
        context = _RoundContext(self.problem, cfg)
        if pool is None:
            results = []
            for i in range(cfg.Q):
                try:
                    results.append(_node_task(i, self.params, velocities[i], round_index, context))
                except Exception as e:
                    raise NodeFailureError(i, round_index, e) from e
            return results
        if cfg.executor == Executor.PROCESS:
            futures = [pool.submit(_node_task, i, self.params, velocities[i], round_index) for i in range(cfg.Q)]
        else:
            futures = [pool.submit(_node_task, i, self.params, velocities[i], round_index, context) for i in range(cfg.Q)]
        results = []
        for i,f in enumerate(futures): # barrier: results are gathered in node order
            try:
                results.append(f.result())
            except Exception as e:
                for other in futures: other.cancel()
                raise NodeFailureError(i, round_index, e) from e
        return results

    def run(self) -> TrainingTrace:
        cfg = self.config
        self.trace = TrainingTrace(metric_name=self.problem.metric_name, config=cfg.to_dict())
        self.log(f"Q={cfg.Q} W={cfg.W} T={cfg.T} noise: {cfg.noise.describe()} executor: {cfg.executor.value}")
        wall_clock = 0.
        self._evaluate(0, wall_clock)
        velocities = [None] * cfg.Q
        pool = self._make_pool()
        iterobj = trange(cfg.T, ncols=100, unit="round", leave=False) if self.verbose else range(cfg.T)
        try:
            for t in iterobj:
                start = time.perf_counter()
                results = self._run_round(pool, t, velocities)
                wall_clock += time.perf_counter() - start
                local_params = [r[0] for r in results]
                if len(local_params) != cfg.Q:
                    raise InvariantViolationError(f"{len(local_params)} results received for {cfg.Q} nodes")
                self.params = synchronize(local_params)
                if not np.all(np.isfinite(self.params)):
                    raise InvariantViolationError(f"non finite parameters after synchronization at round {t}")
                check_conservation(local_params, self.params, t)
                if cfg.carry_momentum:
                    velocities = [r[1] for r in results]
                self._evaluate(t+1, wall_clock)
                if hasattr(iterobj, "set_postfix"):
                    iterobj.set_postfix(loss=f"{self.trace.train_loss[-1]:.4f}", metric=f"{self.trace.metric[-1]:.4f}")
        finally:
            if pool is not None:
                pool.shutdown(cancel_futures=True)
        self.log(f"Done in {wall_clock:.2f}s. Final train loss {self.trace.train_loss[-1]:.5f}, {self.problem.metric_name} {self.trace.metric[-1]:.5f}")
        return self.trace

def run_qudio(config : GlobalConfig, problem : Problem, verbose : bool = False, initial_params : np.ndarray = None) -> TrainingTrace:
    """
    Runs T global rounds of distributed training

    Args:
        config (GlobalConfig): hyper parameters
        problem (Problem): QnnProblem or VqeProblem with config.Q shards
        verbose (bool, optional): progress bar and logs. Defaults to False.
        initial_params (np.ndarray, optional): overrides θ^(0). Defaults to a uniform draw in [0, config.init_range)^d under the master seed.

    Returns:
        TrainingTrace: T+1 entries
    """
    return Qudio(problem, config, verbose, initial_params)().trace
