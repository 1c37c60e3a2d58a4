from aenum import MultiValueEnum

from .gates import Gate
from .circuit import Circuit
from ..utils.argument_check import check_range

class Entangler(MultiValueEnum):
    """
    Pattern of the CNOT layer of one block.
    CHAIN: CNOT(i, i+1) for i = 0..n-2
    RING: the chain closed by CNOT(n-1, 0)
    STAR: CNOT(n-1, i) for i = 0..n-2, the last qubit controls every other one
    """
    CHAIN = "chain", "linear"
    RING = "ring", "circular"
    STAR = "star", "fanout"

def entangling_pairs(n_qubits : int, entangler = Entangler.CHAIN) -> list:
    entangler = Entangler(entangler)
    if entangler == Entangler.STAR:
        return [(n_qubits-1, i) for i in range(n_qubits-1)]
    pairs = [(i, i+1) for i in range(n_qubits-1)]
    if entangler == Entangler.RING and n_qubits > 2:
        pairs.append((n_qubits-1, 0))
    return pairs

def rot_layer(n_qubits : int, first_slot : int) -> list:
    """Rot = RZ·RY·RZ on every qubit, three consecutive parameter slots per qubit"""
    gates = []
    slot = first_slot
    for q in range(n_qubits):
        gates += [Gate.rz(q, slot), Gate.ry(q, slot+1), Gate.rz(q, slot+2)]
        slot += 3
    return gates

def build_qnn_ansatz(n_qubits : int, n_blocks : int, entangler = Entangler.CHAIN) -> Circuit:
    """
    Hardware-efficient ansatz: `n_blocks` repetitions of a layer of Rot gates followed by a CNOT layer.

    Args:
        n_qubits (int): number of qubits. Should be >= 2
        n_blocks (int): number of blocks. Should be >= 1
        entangler (Entangler | str, optional): pattern of the CNOT layer. Defaults to "chain".

    Returns:
        Circuit: a circuit with 3 * n_qubits * n_blocks parameters
    """
    check_range("n_qubits", n_qubits, low=2)
    check_range("n_blocks", n_blocks, low=1)
    gates = []
    for b in range(n_blocks):
        gates += rot_layer(n_qubits, 3*n_qubits*b)
        gates += [Gate.cnot(c,t) for (c,t) in entangling_pairs(n_qubits, entangler)]
    return Circuit(n_qubits, gates)

def build_vqe_ansatz(single_axis : bool = False, entangler = Entangler.STAR) -> Circuit:
    """
    Four trainable single-qubit gates followed by three CNOT gates on 4 qubits.

    With the default star layout the CNOTs are controlled by qubit 3, which is |0> in the reference state |1100>.
    At θ = 0 the circuit is the identity on |1100>, and a single RY on qubit 3 spans a|1100> + b|0011>,
    the subspace holding the ground state of the H2 Hamiltonian files.

    Args:
        single_axis (bool, optional): if True, the single-qubit gates are RY rotations (4 parameters) instead of Rot gates (12 parameters). Defaults to False.
        entangler (Entangler | str, optional): pattern of the CNOT layer. Defaults to "star".

    Returns:
        Circuit
    """
    n = 4
    if single_axis:
        gates = [Gate.ry(q, q) for q in range(n)]
    else:
        gates = rot_layer(n, 0)
    gates += [Gate.cnot(c,t) for (c,t) in entangling_pairs(n, entangler)]
    return Circuit(n, gates)
