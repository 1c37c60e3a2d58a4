from dataclasses import dataclass
import numpy as np

from ..utils.argument_check import check_range, InvalidRangeArgumentError
from ..utils.maths import clamp_probability

def effective_depolarization(p : float, depth : int) -> float:
    """
    Effective rate of the global depolarizing channel obtained by composing one channel of rate p per circuit layer.

    Args:
        p (float): per-layer depolarization rate in [0,1]
        depth (int): circuit depth L_Q >= 0

    Returns:
        float: p̃ = 1 - (1-p)^L_Q
    """
    check_range("p", p, 0., 1.)
    check_range("depth", depth, low=0)
    return 1. - (1. - p)**depth

def noisy_expectation(ideal : float, trace_O : float, n_qubits : int, p_tilde : float) -> float:
    """
    Expectation of an observable O on the state (1-p̃) UρU† + p̃ I/2^N

    Args:
        ideal (float): Tr(O UρU†)
        trace_O (float): trace of the observable
        n_qubits (int): number of qubits N
        p_tilde (float): effective depolarization rate

    Returns:
        float: (1-p̃) * ideal + p̃ * Tr(O) / 2^N
    """
    return (1. - p_tilde) * ideal + p_tilde * trace_O / 2**n_qubits

def sample_two_outcome(prob, shots : int, rng : np.random.Generator):
    """
    Sample mean of `shots` independent Bernoulli(prob) outcomes of a two-outcome measurement {O, I-O}.

    Args:
        prob (float | np.ndarray): probability of the outcome O. Clamped to [0,1]. Arrays are sampled componentwise.
        shots (int): number of measurements K >= 1
        rng (np.random.Generator): random stream

    Raises:
        InvalidRangeArgumentError: if shots < 1

    Returns:
        float | np.ndarray: the sample mean(s)
    """
    if shots is None or shots < 1:
        raise InvalidRangeArgumentError("shots", shots, ">= 1")
    return rng.binomial(shots, clamp_probability(prob)) / shots

@dataclass(frozen=True)
class NoiseModel:
    """
    Depolarization rate p per circuit layer and number K of measurements per expectation estimate.
    `shots=None` stands for K = ∞ (exact expectations). p=0 with shots=None is the ideal mode.
    """
    p : float = 0.
    shots : int = None

    def __post_init__(self):
        check_range("p", self.p, 0., 1.)
        if self.shots is not None and self.shots < 1:
            raise InvalidRangeArgumentError("shots", self.shots, ">= 1 (or None for infinitely many)")

    @property
    def is_ideal(self) -> bool:
        return self.p == 0. and self.shots is None

    @property
    def is_sampled(self) -> bool:
        return self.shots is not None

    def p_tilde(self, depth : int) -> float:
        """Effective rate for a circuit of depth L_Q. Always recomputed from p."""
        return effective_depolarization(self.p, depth)

    def describe(self) -> str:
        if self.is_ideal:
            return "ideal"
        return f"p={self.p}, K={'inf' if self.shots is None else self.shots}"
