from dataclasses import dataclass
from functools import lru_cache
from aenum import MultiValueEnum
import numpy as np
import scipy.sparse as sp

from ..quantum import Circuit, Gate

class Pauli(MultiValueEnum):
    I = "I", "i"
    X = "X", "x"
    Y = "Y", "y"
    Z = "Z", "z"

    @property
    def matrix(self) -> np.ndarray:
        return {
            "I" : np.array([[1., 0.], [0., 1.]], dtype=complex),
            "X" : np.array([[0., 1.], [1., 0.]], dtype=complex),
            "Y" : np.array([[0., -1.j], [1.j, 0.]], dtype=complex),
            "Z" : np.array([[1., 0.], [0., -1.]], dtype=complex),
        }[self.value]

    @property
    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in the order of the computational basis after the basis change"""
        if self == Pauli.I:
            return np.array([1., 1.])
        return np.array([1., -1.])

@dataclass(frozen=True)
class PauliString:
    """
    Tensor product of single-qubit Pauli operators, ops[q] acting on qubit q
    """
    ops : tuple

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(Pauli(o) for o in self.ops))

    @classmethod
    def from_string(cls, word : str):
        return cls(tuple(word))

    @property
    def n_qubits(self) -> int:
        return len(self.ops)

    @property
    def is_identity(self) -> bool:
        return all(o == Pauli.I for o in self.ops)

    @property
    def trace(self) -> float:
        """Trace of the 2^N x 2^N operator: 2^N for the identity, 0 otherwise"""
        return float(2**self.n_qubits) if self.is_identity else 0.

    def to_sparse(self) -> sp.csr_matrix:
        mat = sp.identity(1, dtype=complex, format="csr")
        for o in self.ops:
            mat = sp.kron(mat, sp.csr_matrix(o.matrix), format="csr")
        return mat

    def to_dense(self) -> np.ndarray:
        return self.to_sparse().toarray()

    def __str__(self):
        return "".join(o.value for o in self.ops)

    def __len__(self):
        return len(self.ops)

@dataclass(frozen=True, eq=False)
class EigStructure:
    """
    Measurement recipe of a Pauli string H_j.

    Attributes:
        rotation (Circuit): single-qubit basis change R_j. R_j H_j R_j† is diagonal
        angles (np.ndarray): the fixed angles of the rotation circuit
        eigenvalues (np.ndarray): diagonal of R_j H_j R_j†, entries ±1, length 2^N
    """
    rotation : Circuit
    angles : np.ndarray
    eigenvalues : np.ndarray

    def rotate(self, amplitudes : np.ndarray) -> np.ndarray:
        """Applies R_j to an array of amplitudes of shape (2^N,) or (B, 2^N)"""
        if len(self.rotation) == 0:
            return np.asarray(amplitudes, dtype=complex)
        return self.rotation.evolve(amplitudes, self.angles)

@lru_cache(maxsize=None)
def eig_structure(ps : PauliString) -> EigStructure:
    """
    Basis change and eigenvalues of a Pauli string.
    X is measured after RY(-π/2), Y after RZ(-π/2) then RY(-π/2), Z and I need no rotation.

    Args:
        ps (PauliString): the Pauli string H_j

    Returns:
        EigStructure
    """
    gates, angles = [], []
    for q,o in enumerate(ps.ops):
        if o == Pauli.X:
            gates.append(Gate.ry(q, len(angles)))
            angles.append(-np.pi/2)
        elif o == Pauli.Y:
            gates.append(Gate.rz(q, len(angles)))
            angles.append(-np.pi/2)
            gates.append(Gate.ry(q, len(angles)))
            angles.append(-np.pi/2)
    eigenvalues = np.ones(1)
    for o in ps.ops:
        eigenvalues = np.kron(eigenvalues, o.eigenvalues)
    eigenvalues.flags.writeable = False
    angles = np.array(angles, dtype=float)
    angles.flags.writeable = False
    return EigStructure(Circuit(ps.n_qubits, gates), angles, eigenvalues)
