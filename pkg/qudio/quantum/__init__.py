from .gates import Gate, GateKind, rz_matrix, ry_matrix, rotation_matrix, rotation_matrices
from .circuit import Circuit, circuit_depth
from .statevector import StateVector, init_basis_state, apply_gate, expectation_projector, projector_expectations
from .noise import NoiseModel, effective_depolarization, noisy_expectation, sample_two_outcome
from .ansatz import Entangler, build_qnn_ansatz, build_vqe_ansatz
from . import kernels
