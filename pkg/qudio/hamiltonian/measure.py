import numpy as np

from .pauli import eig_structure, PauliString
from .hamiltonian import Hamiltonian
from ..quantum import StateVector, kernels
from ..utils.argument_check import InvalidDimensionError, InvalidRangeArgumentError
from ..utils.maths import clamp_probability

def pauli_expectations(amplitudes : np.ndarray, ps : PauliString) -> np.ndarray:
    """
    Exact expectations <ψ|H_j|ψ> over a batch of amplitude vectors of shape (B, 2^N)
    """
    eig = eig_structure(ps)
    probs = kernels.probabilities(eig.rotate(amplitudes))
    return probs @ eig.eigenvalues

def expectation_pauli_sum(state : StateVector, h : Hamiltonian, subset=None) -> float:
    """
    Exact value of Σ_{j in subset} α_j <ψ|H_j|ψ>. Each term is measured by rotating a copy of the state in
    the eigenbasis of H_j and weighting the probabilities by the eigenvalues.

    Args:
        state (StateVector): the state |ψ>
        h (Hamiltonian): the Hamiltonian
        subset (iterable of int, optional): indices of the terms. Defaults to every term.

    Raises:
        InvalidDimensionError: if the state and the Hamiltonian have different number of qubits

    Returns:
        float
    """
    if state.n_qubits != h.n_qubits:
        raise InvalidDimensionError("state qubits", state.n_qubits, h.n_qubits)
    total = 0.
    amps = state.amplitudes[None, :]
    for j in h.resolve_subset(subset):
        a,p = h.terms[j]
        total += a * float(pauli_expectations(amps, p)[0])
    return total

def sample_pauli_expectation(state : StateVector, term : tuple, shots : int, rng : np.random.Generator, p_tilde : float = 0.) -> float:
    """
    Estimates α <ψ|H_j|ψ> from `shots` computational basis measurements of R_j|ψ>.
    Outcomes V_k follow the categorical distribution over the 2^N basis states, and the estimate is α/K Σ_k h[V_k].

    Args:
        state (StateVector): the state |ψ>
        term (tuple): (α, PauliString)
        shots (int): number of measurements K >= 1
        rng (np.random.Generator): random stream
        p_tilde (float, optional): effective depolarization rate. The measured distribution becomes (1-p̃)p + p̃/2^N. Defaults to 0.

    Raises:
        InvalidRangeArgumentError: if shots < 1

    Returns:
        float
    """
    if shots is None or shots < 1:
        raise InvalidRangeArgumentError("shots", shots, ">= 1")
    alpha, ps = term
    if not isinstance(ps, PauliString):
        ps = PauliString.from_string(ps)
    if ps.n_qubits != state.n_qubits:
        raise InvalidDimensionError("state qubits", state.n_qubits, ps.n_qubits)
    if ps.is_identity:
        return float(alpha)
    eig = eig_structure(ps)
    probs = kernels.probabilities(eig.rotate(state.amplitudes))
    return float(alpha) * sample_eigenvalue_mean(probs, eig.eigenvalues, shots, rng, p_tilde)

def sample_eigenvalue_mean(probs : np.ndarray, eigenvalues : np.ndarray, shots : int, rng : np.random.Generator, p_tilde : float = 0.) -> float:
    """Mean of `shots` eigenvalues drawn from the categorical distribution `probs` (optionally depolarized)"""
    if p_tilde > 0.:
        probs = (1. - p_tilde) * probs + p_tilde / probs.size
    probs = clamp_probability(probs)
    probs = probs / probs.sum()
    counts = rng.multinomial(shots, probs)
    return float(counts @ eigenvalues) / shots
