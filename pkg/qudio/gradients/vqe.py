from dataclasses import dataclass, field
import numpy as np

from .base import GradEstimate, GradientMode, shifted_parameters
from .. import config
from ..hamiltonian import Hamiltonian, pauli_expectations, eig_structure
from ..hamiltonian.measure import sample_eigenvalue_mean
from ..quantum import Circuit, NoiseModel, StateVector, init_basis_state, build_vqe_ansatz, kernels
from ..utils.argument_check import InvalidDimensionError, InvalidArgumentValueError

@dataclass(frozen=True)
class VqeSpec:
    """
    Variational ground state problem: minimize Tr(H U(θ) ρ_0 U(θ)†)

    Attributes:
        hamiltonian (Hamiltonian): H = Σ α_i H_i
        circuit (Circuit): the ansatz. Defaults to the 4-qubit ansatz of `build_vqe_ansatz`.
        reference_state (str): bitstring of ρ_0. Defaults to config.VQE_REFERENCE_STATE.
    """
    hamiltonian : Hamiltonian
    circuit : Circuit = field(default_factory=build_vqe_ansatz)
    reference_state : str = config.VQE_REFERENCE_STATE

    def __post_init__(self):
        if self.hamiltonian.n_qubits != self.circuit.n_qubits:
            raise InvalidDimensionError("Hamiltonian qubits", self.hamiltonian.n_qubits, self.circuit.n_qubits)
        if len(self.reference_state) != self.circuit.n_qubits:
            raise InvalidDimensionError("reference state", len(self.reference_state), self.circuit.n_qubits)

    @property
    def n_params(self) -> int:
        return self.circuit.n_params

    @property
    def initial_state(self) -> StateVector:
        return init_basis_state(self.reference_state)

    def prepare(self, params : np.ndarray) -> StateVector:
        """The trial state U(θ)|ρ_0>"""
        return self.circuit.run(self.initial_state, params)

def _energies(amplitudes : np.ndarray, spec : VqeSpec, subset, noise : NoiseModel, rng : np.random.Generator) -> np.ndarray:
    """Σ_{j in subset} α_j <H_j> for every row of a batch of prepared states, exact or sampled"""
    h = spec.hamiltonian
    p_tilde = noise.p_tilde(spec.circuit.depth) if noise.p > 0. else 0.
    energies = np.zeros(amplitudes.shape[0])
    for j in h.resolve_subset(subset):
        alpha, ps = h.terms[j]
        if ps.is_identity:
            energies += alpha # Tr(H_j)/2^N = 1: unaffected by depolarization and measured exactly
            continue
        if not noise.is_sampled:
            energies += alpha * (1. - p_tilde) * pauli_expectations(amplitudes, ps)
            continue
        eig = eig_structure(ps)
        probs = kernels.probabilities(eig.rotate(amplitudes))
        for b in range(amplitudes.shape[0]):
            energies[b] += alpha * sample_eigenvalue_mean(probs[b], eig.eigenvalues, noise.shots, rng, p_tilde)
    return energies

def _measured_terms(spec : VqeSpec, subset) -> int:
    h = spec.hamiltonian
    return sum(1 for j in h.resolve_subset(subset) if not h.terms[j][1].is_identity)

def _check_noise(noise : NoiseModel, rng) -> NoiseModel:
    noise = NoiseModel() if noise is None else noise
    if noise.is_sampled and rng is None:
        raise InvalidArgumentValueError("rng", rng)
    return noise

def vqe_energy(params : np.ndarray, spec : VqeSpec, subset = None, noise : NoiseModel = None, rng : np.random.Generator = None) -> float:
    """
    Energy Σ_{j in subset} α_j Tr(H_j U(θ) ρ_0 U(θ)†) of the trial state

    Args:
        params (np.ndarray): θ of length d_Q
        spec (VqeSpec): the problem
        subset (iterable of int, optional): term indices S_i. Defaults to every term. An empty subset gives 0.
        noise (NoiseModel, optional): execution mode. With finite K each term is the mean of K categorical samples. Defaults to None (ideal).
        rng (np.random.Generator, optional): random stream, required when K is finite

    Returns:
        float
    """
    params = spec.circuit.check_params(params)
    noise = _check_noise(noise, rng)
    amps = spec.circuit.evolve(spec.initial_state.amplitudes, params)
    return float(_energies(amps[None,:], spec, subset, noise, rng)[0])

def vqe_grad(params : np.ndarray, spec : VqeSpec, subset = None, noise : NoiseModel = None, rng : np.random.Generator = None) -> GradEstimate:
    """
    Parameter shift gradient of the energy over a subset of terms: component j is (E(θ + π/2 e_j) - E(θ - π/2 e_j)) / 2.
    In shot mode every shifted energy is estimated independently with K shots per term.

    Args:
        params (np.ndarray): θ of length d_Q
        spec (VqeSpec): the problem
        subset (iterable of int, optional): term indices S_i. Defaults to every term.
        noise (NoiseModel, optional): execution mode. Defaults to None (ideal).
        rng (np.random.Generator, optional): random stream, required when K is finite

    Returns:
        GradEstimate
    """
    params = spec.circuit.check_params(params)
    noise = _check_noise(noise, rng)
    d = params.size
    shifted = shifted_parameters(params, include_center=False)
    amps = spec.circuit.evolve_parameter_batch(spec.initial_state.amplitudes, shifted)
    e = _energies(amps, spec, subset, noise, rng)
    shots = 2 * d * _measured_terms(spec, subset) * noise.shots if noise.is_sampled else 0
    return GradEstimate((e[:d] - e[d:]) / 2, GradientMode.from_noise(noise), shots)
