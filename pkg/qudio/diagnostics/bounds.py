from dataclasses import dataclass
import numpy as np

from ..engine import GlobalConfig, Problem
from ..utils.argument_check import check_range
from ..utils.rng import derive_rng, STREAM_BIAS

def bound_constants(d : int, regularization : float) -> tuple:
    """
    Smoothness and Lipschitz constants of the regularized square loss of a d-parameter classifier

    Args:
        d (int): number of parameters d_Q >= 1
        regularization (float): λ >= 0

    Returns:
        (float, float): S = (3/2 + λ) d^2 and G_1 = d (1 + 3πλ)
    """
    check_range("d", d, low=1)
    check_range("regularization", regularization, low=0.)
    return (1.5 + regularization) * d**2, d * (1. + 3.*np.pi*regularization)

@dataclass
class BoundConstants:
    """
    Every quantity entering the convergence bound of a run
    """
    S : float
    G1 : float
    sigma_sq : float
    p_tilde : float
    K : int # None stands for infinitely many shots
    W : int
    Q : int
    T : int
    regularization : float
    d : int

    @classmethod
    def from_config(cls, config : GlobalConfig, d : int, depth : int, sigma_sq : float = 0.) -> "BoundConstants":
        S, G1 = bound_constants(d, config.regularization)
        return cls(S, G1, sigma_sq, config.noise.p_tilde(depth), config.noise.shots, config.W, config.Q, config.T, config.regularization, d)

    def noise_term(self) -> float:
        """
        Per-step squared gradient error due to depolarization and finite shots, bounded with ||∇L||^2 <= G_1^2.
        The shot contribution carries a factor p̃: the term vanishes when p̃ = 0, K finite or not.
        """
        p, d, G1 = self.p_tilde, self.d, self.G1
        shots = 0. if self.K is None else p * (7*(1 - p/2)**2 + 1/8) * d / self.K
        return (2-p)**2 * p**2 * G1**2 + (1-p)**2 * p**2 * d / 4 + (2-p)**2 * p**2 * G1 * d + shots

    def noise_residual(self, T : float = None) -> float:
        """
        The term C_1 = (4 W² √(S/T) + 2 W²) × noise_term of the bound, quadratic in W.
        Zero when p̃ = 0.

        Args:
            T (float, optional): number of global rounds. Defaults to self.T. T = inf keeps the 2W² part only.
        """
        T = self.T if T is None else T
        root = np.sqrt(self.S / T) if np.isfinite(T) else 0.
        W = self.W
        return (4 * W**2 * root + 2 * W**2) * self.noise_term()

def theorem1_bound(constants : BoundConstants, sigma : float = None, G2 : float = None, T : int = None, residual : float = None) -> float:
    """
    Right-hand side λ d √(S/T) + √(S/T) (4W²σ² + 2W²G_2²) + C_1 of the convergence bound, with the hidden constant set to 1.
    For reporting next to the measured utility only.

    Args:
        constants (BoundConstants): the run constants
        sigma (float, optional): gradient variance bound σ. Defaults to sqrt(constants.sigma_sq).
        G2 (float, optional): Defaults to G_1.
        T (int, optional): number of global rounds. Defaults to constants.T.
        residual (float, optional): the noise term C_1. Defaults to constants.noise_residual(T).

    Returns:
        float
    """
    sigma = np.sqrt(constants.sigma_sq) if sigma is None else sigma
    G2 = constants.G1 if G2 is None else G2
    T = constants.T if T is None else T
    residual = constants.noise_residual(T) if residual is None else residual
    W = constants.W
    root = np.sqrt(constants.S / T) if np.isfinite(T) else 0.
    return constants.regularization * constants.d * root + root * (4 * W**2 * sigma**2 + 2 * W**2 * G2**2) + residual

def estimate_sigma_sq(problem : Problem, params : np.ndarray, config : GlobalConfig, n_samples : int = 32, seed : int = None) -> float:
    """
    Empirical bound on the variance of the local gradients: max over nodes of the mean of ||g_i(θ) - ∇L(θ)||^2 over sampled local gradients

    Args:
        problem (Problem): the distributed problem
        params (np.ndarray): θ
        config (GlobalConfig): provides the noise model and batch size of the local steps
        n_samples (int, optional): samples per node. Defaults to 32.
        seed (int, optional): Defaults to config.seed.

    Returns:
        float
    """
    check_range("n_samples", n_samples, low=1)
    seed = config.seed if seed is None else seed
    full = problem.full_gradient(params)
    worst = 0.
    for node in range(problem.n_nodes):
        rng = derive_rng(seed, STREAM_BIAS, 1, node)
        dev = [problem.local_gradient(params, node, rng, config).values - full for _ in range(n_samples)]
        worst = max(worst, float(np.mean([np.dot(v,v) for v in dev])))
    return worst
