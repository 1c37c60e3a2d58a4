import qudio as Q
import numpy as np

### Circuits ###

def circuit_single_ry():
    """RY(θ) on one qubit: h(θ) = cos²(θ/2) for the projector on |0>"""
    return Q.Circuit(1, [Q.Gate.ry(0, 0)])

def circuit_two_qubits():
    return Q.Circuit(2, [
        Q.Gate.ry(0, 0), Q.Gate.rz(1, 1),
        Q.Gate.cnot(0, 1),
        Q.Gate.ry(1, 2), Q.Gate.rz(0, 3),
    ])

def circuit_small_qnn():
    return Q.quantum.build_qnn_ansatz(3, 2)

circuits = [circuit_single_ry(), circuit_two_qubits(), circuit_small_qnn(), Q.quantum.build_vqe_ansatz()]

### Examples ###

def example_zero(n_qubits : int = 6, label : int = 1):
    vec = np.zeros(2**n_qubits)
    vec[0] = 1.
    return Q.datasets.encode(vec, label)

def random_examples(n_qubits : int, count : int, seed : int = 0) -> list:
    rng = np.random.default_rng(seed)
    return [Q.datasets.encode(rng.uniform(0., 1., 2**n_qubits), int(rng.integers(2))) for _ in range(count)]
