from dataclasses import dataclass
from aenum import MultiValueEnum
import numpy as np

class GateKind(MultiValueEnum):
    RZ = "RZ", "rz"
    RY = "RY", "ry"
    CNOT = "CNOT", "cnot", "CX", "cx"

    @property
    def is_rotation(self) -> bool:
        return self != GateKind.CNOT

    @property
    def generator(self) -> np.ndarray:
        """Pauli matrix G such that the gate is exp(-i φ G / 2)"""
        if self == GateKind.RZ:
            return PAULI_Z
        if self == GateKind.RY:
            return PAULI_Y
        raise ValueError("CNOT has no generator")

PAULI_Y = np.array([[0., -1.j], [1.j, 0.]], dtype=complex)
PAULI_Z = np.array([[1., 0.], [0., -1.]], dtype=complex)

def rz_matrix(phi : float) -> np.ndarray:
    return np.array([[np.exp(-0.5j*phi), 0.], [0., np.exp(0.5j*phi)]], dtype=complex)

def ry_matrix(phi : float) -> np.ndarray:
    c,s = np.cos(phi/2), np.sin(phi/2)
    return np.array([[c, -s], [s, c]], dtype=complex)

def rotation_matrix(kind : GateKind, phi : float) -> np.ndarray:
    kind = GateKind(kind)
    if kind == GateKind.RZ:
        return rz_matrix(phi)
    if kind == GateKind.RY:
        return ry_matrix(phi)
    raise ValueError(f"{kind} is not a rotation gate")

@dataclass(frozen=True)
class Gate:
    """
    A gate of the circuit. Rotation gates (RZ, RY) read their angle in the parameter vector at index `param_slot`.
    CNOT gates have a control qubit and no parameter.
    """
    kind : GateKind
    target : int
    control : int = None
    param_slot : int = None

    class InvalidGateError(Exception):
        def __init__(self, gate, reason:str):
            super().__init__(f"Invalid gate {gate}: {reason}")

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        if self.target < 0:
            raise Gate.InvalidGateError(self, "negative target")
        if self.kind.is_rotation:
            if self.param_slot is None or self.param_slot < 0:
                raise Gate.InvalidGateError(self, "rotation gates carry exactly one parameter slot")
            if self.control is not None:
                raise Gate.InvalidGateError(self, "rotation gates have no control qubit")
        else:
            if self.param_slot is not None:
                raise Gate.InvalidGateError(self, "CNOT carries no parameter")
            if self.control is None or self.control < 0:
                raise Gate.InvalidGateError(self, "CNOT needs a control qubit")
            if self.control == self.target:
                raise Gate.InvalidGateError(self, "control and target should differ")

    @property
    def qubits(self) -> tuple:
        if self.control is None:
            return (self.target,)
        return (self.control, self.target)

    @classmethod
    def rz(cls, target : int, slot : int):
        return cls(GateKind.RZ, target, param_slot=slot)

    @classmethod
    def ry(cls, target : int, slot : int):
        return cls(GateKind.RY, target, param_slot=slot)

    @classmethod
    def cnot(cls, control : int, target : int):
        return cls(GateKind.CNOT, target, control=control)

    def __str__(self):
        if self.kind == GateKind.CNOT:
            return f"CNOT({self.control},{self.target})"
        return f"{self.kind.value}(q{self.target}, θ[{self.param_slot}])"

def rotation_matrices(kind : GateKind, phis : np.ndarray) -> np.ndarray:
    """Stack of rotation matrices of shape (B, 2, 2), one per angle"""
    kind = GateKind(kind)
    phis = np.asarray(phis, dtype=float)
    out = np.zeros((phis.size, 2, 2), dtype=complex)
    if kind == GateKind.RZ:
        out[:,0,0] = np.exp(-0.5j*phis)
        out[:,1,1] = np.exp(0.5j*phis)
    elif kind == GateKind.RY:
        c,s = np.cos(phis/2), np.sin(phis/2)
        out[:,0,0], out[:,0,1], out[:,1,0], out[:,1,1] = c, -s, s, c
    else:
        raise ValueError(f"{kind} is not a rotation gate")
    return out
