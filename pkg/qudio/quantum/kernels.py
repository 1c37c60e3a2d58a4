"""
kernels.py

Low level statevector routines. Amplitudes are handled as arrays of shape (B, 2^n) where B is a batch of independent
states evolved through the same gates. Inside the routines, the array is viewed with shape (B, 2, ..., 2) where axis 1+q
is qubit q (qubit 0 is the most significant bit of the index).
"""

import numpy as np
from .gates import GateKind, rotation_matrix, rotation_matrices

def as_tensor(amplitudes : np.ndarray, n_qubits : int) -> np.ndarray:
    return amplitudes.reshape((amplitudes.shape[0],) + (2,)*n_qubits)

def apply_single(psi : np.ndarray, matrix : np.ndarray, qubit : int) -> np.ndarray:
    out = np.tensordot(psi, matrix, axes=([qubit+1], [1]))
    return np.moveaxis(out, -1, qubit+1)

def apply_cnot(psi : np.ndarray, control : int, target : int) -> np.ndarray:
    out = psi.copy()
    sel = [slice(None)] * psi.ndim
    sel[control+1] = 1
    sel = tuple(sel)
    axis = target if target > control else target + 1 # control axis is removed by the selection
    out[sel] = np.flip(psi[sel], axis=axis)
    return out

def apply(psi : np.ndarray, gate, params : np.ndarray, inverse : bool = False) -> np.ndarray:
    if gate.kind == GateKind.CNOT:
        return apply_cnot(psi, gate.control, gate.target)
    phi = params[gate.param_slot]
    return apply_single(psi, rotation_matrix(gate.kind, -phi if inverse else phi), gate.target)

def evolve(amplitudes : np.ndarray, gates, params : np.ndarray, n_qubits : int) -> np.ndarray:
    """
    Applies a sequence of gates to a batch of states

    Args:
        amplitudes (np.ndarray): array of shape (B, 2^n)
        gates (iterable of Gate): gates in order of application
        params (np.ndarray): parameter vector
        n_qubits (int): number of qubits

    Returns:
        np.ndarray: evolved amplitudes of shape (B, 2^n)
    """
    psi = as_tensor(np.asarray(amplitudes, dtype=complex), n_qubits)
    for gate in gates:
        psi = apply(psi, gate, params)
    return psi.reshape(psi.shape[0], -1)

def probabilities(amplitudes : np.ndarray) -> np.ndarray:
    return np.abs(amplitudes)**2

def zero_mask(n_qubits : int, qubit : int) -> np.ndarray:
    """Boolean mask over basis indices where `qubit` is in state |0>"""
    idx = np.arange(2**n_qubits)
    return ((idx >> (n_qubits - 1 - qubit)) & 1) == 0

def apply_single_batched(psi : np.ndarray, matrices : np.ndarray, qubit : int) -> np.ndarray:
    """Applies matrices[b] to qubit `qubit` of state b"""
    moved = np.moveaxis(psi, qubit+1, -1)
    out = np.einsum("b...j,bij->b...i", moved, matrices)
    return np.moveaxis(out, -1, qubit+1)

def evolve_parameter_batch(amplitudes : np.ndarray, gates, params_batch : np.ndarray, n_qubits : int) -> np.ndarray:
    """
    Evolves state b with the parameter vector params_batch[b]. Used to run all parameter-shifted circuits in one pass.

    Args:
        amplitudes (np.ndarray): array of shape (B, 2^n), or (1, 2^n) to start every circuit from the same state
        gates (iterable of Gate): gates in order of application
        params_batch (np.ndarray): array of shape (B, d)
        n_qubits (int): number of qubits

    Returns:
        np.ndarray: evolved amplitudes of shape (B, 2^n)
    """
    B = params_batch.shape[0]
    amplitudes = np.asarray(amplitudes, dtype=complex)
    if amplitudes.shape[0] != B:
        amplitudes = np.broadcast_to(amplitudes, (B, amplitudes.shape[1]))
    psi = as_tensor(amplitudes, n_qubits)
    for gate in gates:
        if gate.kind == GateKind.CNOT:
            psi = apply_cnot(psi, gate.control, gate.target)
        else:
            psi = apply_single_batched(psi, rotation_matrices(gate.kind, params_batch[:, gate.param_slot]), gate.target)
    return psi.reshape(B, -1)
