from dataclasses import dataclass
import numpy as np

from .gates import Gate, GateKind
from . import kernels
from ..utils.argument_check import InvalidDimensionError, InvalidRangeArgumentError
from .. import config

def circuit_depth(gates, n_qubits : int) -> int:
    """
    Number of layers obtained by greedy left-to-right layering: each gate is placed in the first layer after
    the last layer occupied by one of its qubits. Gates acting on disjoint qubits share a layer.

    Args:
        gates (iterable of Gate): the gate list
        n_qubits (int): number of qubits

    Returns:
        int: the depth (0 for an empty gate list)
    """
    level = [0]*n_qubits
    for gate in gates:
        layer = max(level[q] for q in gate.qubits) + 1
        for q in gate.qubits:
            level[q] = layer
    return max(level, default=0)

@dataclass(frozen=True)
class Circuit:
    """
    An immutable gate program on `n_qubits` qubits with trainable parameter slots.

    Attributes:
        n_qubits (int): number of qubits
        gates (tuple): gates in order of application
        depth_override (int, optional): if set, replaces the greedy layer count as circuit depth L_Q
    """
    n_qubits : int
    gates : tuple
    depth_override : int = None

    class InvalidCircuitError(Exception):
        def __init__(self, reason:str):
            super().__init__(f"Invalid circuit: {reason}")

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n_qubits < 1:
            raise Circuit.InvalidCircuitError("a circuit has at least one qubit")
        for gate in self.gates:
            for q in gate.qubits:
                if q >= self.n_qubits:
                    raise InvalidRangeArgumentError("qubit index", q, f"< {self.n_qubits}")
        slots = {g.param_slot for g in self.gates if g.kind.is_rotation}
        if slots != set(range(len(slots))):
            raise Circuit.InvalidCircuitError(f"parameter slots should be exactly 0..d-1, got {sorted(slots)}")
        object.__setattr__(self, "_n_params", len(slots))
        object.__setattr__(self, "_depth", circuit_depth(self.gates, self.n_qubits))

    @property
    def n_params(self) -> int:
        """Number d_Q of distinct trainable parameters"""
        return self._n_params

    @property
    def depth(self) -> int:
        """Circuit depth L_Q"""
        if self.depth_override is not None:
            return self.depth_override
        return self._depth

    @property
    def n_cnots(self) -> int:
        return sum(1 for g in self.gates if g.kind == GateKind.CNOT)

    def with_depth(self, depth : int) -> "Circuit":
        return Circuit(self.n_qubits, self.gates, depth)

    def check_params(self, params : np.ndarray) -> np.ndarray:
        params = np.asarray(params, dtype=float)
        if params.shape != (self.n_params,):
            raise InvalidDimensionError("parameter vector", params.shape, (self.n_params,))
        return params

    def evolve(self, amplitudes : np.ndarray, params : np.ndarray) -> np.ndarray:
        """
        Applies the circuit to a batch of amplitude vectors

        Args:
            amplitudes (np.ndarray): array of shape (2^n,) or (B, 2^n)
            params (np.ndarray): the parameter vector θ

        Returns:
            np.ndarray: evolved amplitudes, with the same shape as the input
        """
        params = self.check_params(params)
        amplitudes = np.asarray(amplitudes)
        single = amplitudes.ndim == 1
        batch = amplitudes[None, :] if single else amplitudes
        if batch.shape[1] != 2**self.n_qubits:
            raise InvalidDimensionError("amplitudes", batch.shape[1], 2**self.n_qubits)
        out = kernels.evolve(batch, self.gates, params, self.n_qubits)
        return out[0] if single else out

    def evolve_parameter_batch(self, amplitudes : np.ndarray, params_batch : np.ndarray) -> np.ndarray:
        """
        Runs the circuit once per row of `params_batch`

        Args:
            amplitudes (np.ndarray): initial state(s), of shape (2^n,) shared by all runs or (B, 2^n)
            params_batch (np.ndarray): array of shape (B, d_Q)

        Returns:
            np.ndarray: amplitudes of shape (B, 2^n)
        """
        params_batch = np.atleast_2d(np.asarray(params_batch, dtype=float))
        if params_batch.shape[1] != self.n_params:
            raise InvalidDimensionError("parameter vectors", params_batch.shape[1], self.n_params)
        amplitudes = np.atleast_2d(np.asarray(amplitudes))
        if amplitudes.shape[1] != 2**self.n_qubits:
            raise InvalidDimensionError("amplitudes", amplitudes.shape[1], 2**self.n_qubits)
        return kernels.evolve_parameter_batch(amplitudes, self.gates, params_batch, self.n_qubits)

    def run(self, state, params : np.ndarray):
        """Returns U(θ)|state> as a new StateVector"""
        from .statevector import StateVector
        if state.n_qubits != self.n_qubits:
            raise InvalidDimensionError("state qubits", state.n_qubits, self.n_qubits)
        return StateVector(self.n_qubits, self.evolve(state.amplitudes, params))

    def inverse(self) -> "Circuit":
        """
        The inverse program, to be run with the negated parameter vector -θ. CNOT is self-inverse.
        """
        return Circuit(self.n_qubits, tuple(reversed(self.gates)), self.depth_override)

    def unitary(self, params : np.ndarray) -> np.ndarray:
        """Dense matrix of the circuit. Only for small circuits"""
        if self.n_qubits > config.MAX_DENSE_QUBITS:
            raise InvalidRangeArgumentError("n_qubits", self.n_qubits, f"<= {config.MAX_DENSE_QUBITS}")
        dim = 2**self.n_qubits
        # columns of the unitary are the images of the basis states
        return self.evolve(np.eye(dim, dtype=complex), params).T

    def __len__(self):
        return len(self.gates)
