"""
bias.py

Monte Carlo check of the relation between the noisy gradient estimate of the classifier and its analytic gradient:
    E[g_j] = (1-p̃)^2 ∇_j L + C_1
Two tabulations of the constants are available:
    "published": the table exactly as published
    "exact": the closed form mean and variances of the estimator (ȳ - y)(ȳ_{+j} - ȳ_{-j})/2 + λθ_j with independent binomial sample means.
The published C_1 differs from the exact one by a factor 2 on the data term and by the sign of the regularizer term.
"""

from dataclasses import dataclass, field
import numpy as np
from tqdm import tqdm

from .. import config
from ..gradients import QnnLossSpec, qnn_grad_samples, as_batch
from ..quantum import NoiseModel, build_qnn_ansatz
from ..datasets import encode
from ..worker import Worker
from ..utils.argument_check import check_range, InvalidArgumentValueError
from ..utils.maths import standard_error
from ..utils.rng import derive_rng, STREAM_BIAS

CONVENTIONS = ("exact", "published")

def lemma3_constants(y_hat, y_plus, y_minus, y, theta, p_tilde : float, regularization : float, K : int, convention : str = "exact") -> tuple:
    """
    The five constants (C_1, ..., C_5) of the bias decomposition. Inputs may be scalars or arrays over the components j.

    Args:
        y_hat: ideal prediction ŷ
        y_plus, y_minus: ideal predictions at θ ± π/2 e_j
        y: label
        theta: θ_j
        p_tilde (float): effective depolarization rate
        regularization (float): λ
        K (int): shots per expectation (>= 1)
        convention (str, optional): "exact" or "published". Defaults to "exact".

    Returns:
        tuple: C_1 (mean offset), C_2, C_3 (coefficients of the fluctuations), C_4, C_5 (variances of the fluctuations)
    """
    check_range("K", K, low=1)
    p = p_tilde
    diff = np.asarray(y_plus) - np.asarray(y_minus)
    C2 = (1-p) * diff
    C3 = (1-p) * np.asarray(y_hat) + p/2 - y
    if convention == "published":
        C1 = (1-p) * p * (0.5 - y) * diff - (2*p - p**2) * regularization * np.asarray(theta)
        C4 = (-(1-p) * np.asarray(y_hat)**2 + (1-p)**2 * np.asarray(y_hat) + p/2 - p**2/4) / K
        C5 = (-(1-p) * (np.asarray(y_plus)**2 + np.asarray(y_minus)**2) + (1-p)**2 * (np.asarray(y_plus) + np.asarray(y_minus)) + p - p**2/2) / K
    elif convention == "exact":
        q = lambda v : (1-p) * np.asarray(v) + p/2 # depolarized expectation
        C1 = (1-p) * p * (0.5 - y) * diff / 2 + (2*p - p**2) * regularization * np.asarray(theta)
        C4 = q(y_hat) * (1 - q(y_hat)) / K
        C5 = (q(y_plus) * (1 - q(y_plus)) + q(y_minus) * (1 - q(y_minus))) / K
    else:
        raise InvalidArgumentValueError("convention", convention, list(CONVENTIONS))
    return C1, C2, C3, C4, C5

def predicted_mean(analytic : np.ndarray, p_tilde : float, C1 : np.ndarray) -> np.ndarray:
    return (1-p_tilde)**2 * analytic + C1

def predicted_variance(C2, C3, C4, C5):
    """Variance of one estimate: the product (C_3 + ξ)(C_2 + ξ')/2 of independent fluctuations of variances C_4 and C_5"""
    return (C2**2 * C4 + C3**2 * C5 + C4 * C5) / 4

@dataclass
class BiasCheckReport:
    """
    Outcome of a bias check at fixed (θ, example)

    Attributes:
        analytic (np.ndarray): ∇_j L
        predicted (np.ndarray): (1-p̃)^2 ∇_j L + C_1 under the gating convention
        empirical (np.ndarray): mean of the estimates over the trials
        stderr (np.ndarray): standard error of the empirical mean
        passed (np.ndarray): |empirical - predicted| <= 4 stderr, componentwise
        constants (dict): C_1..C_5 per convention
        published_predicted (np.ndarray): prediction of the published table
        published_passed (np.ndarray): verdict of the published table
    """
    analytic : np.ndarray
    predicted : np.ndarray
    empirical : np.ndarray
    stderr : np.ndarray
    passed : np.ndarray
    constants : dict
    published_predicted : np.ndarray
    published_passed : np.ndarray
    p : float
    p_tilde : float
    shots : int
    trials : int
    regularization : float
    convention : str = "exact"
    inputs : dict = field(default_factory=dict)
    variance : np.ndarray = None
    predicted_variance : np.ndarray = None

    @property
    def pass_rate(self) -> float:
        return float(np.mean(self.passed))

    @property
    def published_pass_rate(self) -> float:
        return float(np.mean(self.published_passed))

    def to_dict(self) -> dict:
        as_list = lambda a : np.asarray(a).tolist()
        return {
            "p" : self.p, "p_tilde" : self.p_tilde, "shots" : self.shots, "trials" : self.trials,
            "regularization" : self.regularization, "convention" : self.convention,
            "pass_rate" : self.pass_rate, "published_pass_rate" : self.published_pass_rate,
            "analytic" : as_list(self.analytic), "predicted" : as_list(self.predicted),
            "empirical" : as_list(self.empirical), "stderr" : as_list(self.stderr),
            "passed" : as_list(self.passed), "published_predicted" : as_list(self.published_predicted),
            "published_passed" : as_list(self.published_passed),
            "variance" : None if self.variance is None else as_list(self.variance),
            "predicted_variance" : None if self.predicted_variance is None else as_list(self.predicted_variance),
            "constants" : {conv : {f"C{a+1}" : as_list(c) for a,c in enumerate(cs)} for conv,cs in self.constants.items()},
            "inputs" : self.inputs,
        }

def _gate(empirical, predicted, stderr):
    return np.abs(empirical - predicted) <= np.maximum(config.STDERR_GATE * stderr, 1e-12)

class BiasChecker(Worker):
    """
    Draws `trials` independent noisy gradient estimates at a fixed (θ, example) and compares their mean to the predicted mean.
    Trials are drawn in chunks to bound memory.

    Usage:
    ```
    report = BiasChecker(params, example, spec, p=0.01, shots=100, trials=10000, rng=rng).run()
    ```
    """

    def __init__(self, params : np.ndarray, example, spec : QnnLossSpec, p : float, shots : int, trials : int, rng : np.random.Generator, chunk_size : int = 2000, verbose : bool = False):
        super().__init__("BiasCheck", verbose)
        check_range("trials", trials, low=2)
        self.params = spec.circuit.check_params(params)
        self.example = example
        self.spec = spec
        self.noise = NoiseModel(p, shots)
        self.trials = trials
        self.rng = rng
        self.chunk_size = chunk_size
        self.report : BiasCheckReport = None

    def run(self) -> BiasCheckReport:
        spec, noise = self.spec, self.noise
        d = self.params.size
        p_tilde = noise.p_tilde(spec.circuit.depth)
        chunks, done = [], 0
        progress = tqdm(total=self.trials, ncols=100, leave=False) if self.verbose else None
        while done < self.trials:
            size = min(self.chunk_size, self.trials - done)
            samples, y_exact = qnn_grad_samples(self.params, self.example, spec, noise, self.rng, size)
            chunks.append(samples)
            done += size
            if progress is not None: progress.update(size)
        if progress is not None: progress.close()
        samples = np.concatenate(chunks)

        y_hat, y_plus, y_minus = y_exact[0], y_exact[1:d+1], y_exact[d+1:]
        label = float(as_batch(self.example)[1][0])
        analytic = (y_hat - label) * (y_plus - y_minus) / 2 + spec.regularization * self.params
        constants = {conv : lemma3_constants(y_hat, y_plus, y_minus, label, self.params, p_tilde, spec.regularization, noise.shots, conv) for conv in CONVENTIONS}
        empirical = samples.mean(axis=0)
        stderr = standard_error(samples, axis=0)
        predicted = predicted_mean(analytic, p_tilde, constants["exact"][0])
        published_predicted = predicted_mean(analytic, p_tilde, constants["published"][0])
        self.report = BiasCheckReport(
            analytic, predicted, empirical, stderr,
            _gate(empirical, predicted, stderr),
            constants, published_predicted,
            _gate(empirical, published_predicted, stderr),
            noise.p, p_tilde, noise.shots, self.trials, spec.regularization,
            inputs={"params" : self.params.tolist(), "label" : label, "depth" : spec.circuit.depth},
            variance=samples.var(axis=0, ddof=1),
            predicted_variance=predicted_variance(*constants["exact"][1:]),
        )
        self.log(f"p={noise.p} K={noise.shots} M={self.trials}: pass rate {self.report.pass_rate:.3f} (published table: {self.report.published_pass_rate:.3f})")
        return self.report

def bias_check(params : np.ndarray, example, spec : QnnLossSpec, p : float, shots : int, trials : int, rng : np.random.Generator, verbose : bool = False) -> BiasCheckReport:
    """
    Compares the empirical mean of `trials` noisy gradient estimates to (1-p̃)^2 ∇L + C_1, componentwise with 4 standard error gates

    Args:
        params (np.ndarray): θ
        example (EncodedExample): the example
        spec (QnnLossSpec): the model
        p (float): depolarization rate per layer
        shots (int): K
        trials (int): number M of estimates
        rng (np.random.Generator): random stream
        verbose (bool, optional): Defaults to False.

    Returns:
        BiasCheckReport
    """
    return BiasChecker(params, example, spec, p, shots, trials, rng, verbose=verbose).run()

def random_configuration(rng : np.random.Generator, spec : QnnLossSpec) -> tuple:
    """A random parameter vector in [0,2π)^d and a random encoded example with a random binary label"""
    params = rng.uniform(0., 2*np.pi, spec.n_params)
    example = encode(rng.uniform(0., 1., 2**spec.n_qubits), int(rng.integers(2)))
    return params, example

def bias_sweep(n_configs : int = 20, ps = (0., 1e-4, 1e-2), shots = (5, 100), trials : int = 10000, seed : int = 0,
    n_qubits : int = config.QNN_N_QUBITS, n_blocks : int = config.QNN_N_BLOCKS, regularization : float = 0., verbose : bool = False) -> list:
    """
    Bias checks at random configurations, cycling through the grid of depolarization rates and shot counts

    Returns:
        list: BiasCheckReport objects
    """
    spec = QnnLossSpec(build_qnn_ansatz(n_qubits, n_blocks), regularization)
    grid = [(p,K) for p in ps for K in shots]
    reports = []
    for c in range(n_configs):
        rng = derive_rng(seed, STREAM_BIAS, 0, c)
        params, example = random_configuration(rng, spec)
        p, K = grid[c % len(grid)]
        reports.append(bias_check(params, example, spec, p, K, trials, rng, verbose))
    return reports

def sweep_pass_rate(reports : list, published : bool = False) -> float:
    """Fraction of passing components over all reports, under the exact constants or under the published table"""
    return float(np.mean(np.concatenate([r.published_passed if published else r.passed for r in reports])))
