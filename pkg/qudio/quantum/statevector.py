from dataclasses import dataclass
import numpy as np

from .gates import Gate
from . import kernels
from .. import config
from ..utils.argument_check import InvalidDimensionError, InvalidRangeArgumentError

@dataclass(frozen=True, eq=False)
class StateVector:
    """
    Pure state of `n_qubits` qubits given by its 2^n complex amplitudes. Qubit 0 is the most significant bit of the basis index.
    The amplitude array is read-only: operations return new states.
    """
    n_qubits : int
    amplitudes : np.ndarray

    class NotNormalizedError(Exception):
        def __init__(self, norm):
            super().__init__(f"State is not normalized: squared norm is {norm}")

    def __post_init__(self):
        if self.n_qubits < 1:
            raise InvalidDimensionError("number of qubits", self.n_qubits, ">= 1")
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2**self.n_qubits:
            raise InvalidDimensionError("amplitudes", amps.size, 2**self.n_qubits)
        norm = np.vdot(amps, amps).real
        if abs(norm - 1.) > config.NORM_TOLERANCE:
            raise StateVector.NotNormalizedError(norm)
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def probabilities(self) -> np.ndarray:
        """Born probabilities of the computational basis states"""
        return kernels.probabilities(self.amplitudes)

    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def __getstate__(self):
        return {"n_qubits" : self.n_qubits, "amplitudes" : np.array(self.amplitudes)}

    def __setstate__(self, state):
        amps = state["amplitudes"]
        amps.flags.writeable = False
        object.__setattr__(self, "n_qubits", state["n_qubits"])
        object.__setattr__(self, "amplitudes", amps)

def init_basis_state(bitstring) -> StateVector:
    """
    Computational basis state given by a bitstring, first bit being qubit 0.

    Args:
        bitstring (str | list): e.g. "1100" or [1,1,0,0]

    Raises:
        InvalidDimensionError: if the bitstring is empty

    Returns:
        StateVector: "1100" has amplitude 1 at index 12
    """
    bits = [int(b) for b in bitstring]
    if len(bits) == 0:
        raise InvalidDimensionError("bitstring", 0, ">= 1 bits")
    if any(b not in (0,1) for b in bits):
        raise InvalidRangeArgumentError("bitstring", bitstring, "over {0,1}")
    index = 0
    for b in bits:
        index = 2*index + b
    amps = np.zeros(2**len(bits), dtype=complex)
    amps[index] = 1.
    return StateVector(len(bits), amps)

def apply_gate(state : StateVector, gate : Gate, params : np.ndarray) -> StateVector:
    """
    Applies a single gate to a state

    Args:
        state (StateVector): input state
        gate (Gate): the gate. Rotation angles are read in `params` at `gate.param_slot`
        params (np.ndarray): the parameter vector

    Raises:
        InvalidRangeArgumentError: if a qubit index or the parameter slot is out of range

    Returns:
        StateVector: the new state
    """
    for q in gate.qubits:
        if q >= state.n_qubits:
            raise InvalidRangeArgumentError("qubit index", q, f"< {state.n_qubits}")
    params = np.asarray(params, dtype=float)
    if gate.param_slot is not None and gate.param_slot >= params.size:
        raise InvalidRangeArgumentError("param_slot", gate.param_slot, f"< {params.size}")
    psi = kernels.as_tensor(state.amplitudes[None, :], state.n_qubits)
    psi = kernels.apply(psi, gate, params)
    return StateVector(state.n_qubits, psi.reshape(-1))

def expectation_projector(state : StateVector, measured_qubit : int) -> float:
    """
    Expectation of the projector |0><0| acting on `measured_qubit` (identity elsewhere)

    Args:
        state (StateVector): the state
        measured_qubit (int): the measured qubit

    Returns:
        float: probability that `measured_qubit` is found in |0>, in [0,1]
    """
    return float(projector_expectations(state.amplitudes[None,:], state.n_qubits, measured_qubit)[0])

def projector_expectations(amplitudes : np.ndarray, n_qubits : int, measured_qubit : int) -> np.ndarray:
    """Batched version of `expectation_projector` over an array of shape (B, 2^n)"""
    if not 0 <= measured_qubit < n_qubits:
        raise InvalidRangeArgumentError("measured_qubit", measured_qubit, f"in [0, {n_qubits-1}]")
    mask = kernels.zero_mask(n_qubits, measured_qubit)
    return np.clip(np.sum(kernels.probabilities(amplitudes)[:, mask], axis=1), 0., 1.)
