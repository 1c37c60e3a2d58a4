import pytest
import qudio as Q
import numpy as np
from utils import *
from data import *

########## basis states ##########

def test_basis_state_zero():
    s = Q.quantum.init_basis_state("0000")
    assert s.n_qubits == 4
    assert s.amplitudes[0] == 1.
    assert np.sum(np.abs(s.amplitudes)) == 1.

def test_basis_state_big_endian():
    s = Q.quantum.init_basis_state("1100")
    assert np.argmax(np.abs(s.amplitudes)) == 12
    assert Q.quantum.init_basis_state([1,1,0,0]).amplitudes[12] == 1.

def test_basis_state_single_qubit():
    s = Q.quantum.init_basis_state("1")
    assert np.allclose(s.amplitudes, [0., 1.])

def test_basis_state_empty():
    with pytest.raises(Q.utils.InvalidDimensionError):
        Q.quantum.init_basis_state("")

def test_state_not_normalized():
    with pytest.raises(Q.StateVector.NotNormalizedError):
        Q.StateVector(1, np.array([1., 1.]))

def test_state_read_only():
    s = Q.quantum.init_basis_state("01")
    with pytest.raises(ValueError):
        s.amplitudes[0] = 1.

########## gates ##########

def test_ry_pi_flips():
    s = Q.quantum.init_basis_state("0")
    out = Q.quantum.apply_gate(s, Q.Gate.ry(0, 0), [np.pi])
    assert abs(abs(out.amplitudes[1]) - 1.) < 1e-12

@pytest.mark.parametrize("phi", [0., 0.3, 1., np.pi, 5.])
def test_rz_keeps_populations(phi):
    s = Q.quantum.init_basis_state("0")
    out = Q.quantum.apply_gate(s, Q.Gate.rz(0, 0), [phi])
    assert abs(out.probabilities()[0] - 1.) < 1e-12

def test_cnot():
    s = Q.quantum.init_basis_state("10")
    out = Q.quantum.apply_gate(s, Q.Gate.cnot(0, 1), [])
    assert np.allclose(out.amplitudes, Q.quantum.init_basis_state("11").amplitudes)
    s = Q.quantum.init_basis_state("01")
    out = Q.quantum.apply_gate(s, Q.Gate.cnot(0, 1), [])
    assert np.allclose(out.amplitudes, s.amplitudes)

def test_cnot_reversed_control():
    s = Q.quantum.init_basis_state("001")
    out = Q.quantum.apply_gate(s, Q.Gate.cnot(2, 0), [])
    assert np.allclose(out.amplitudes, Q.quantum.init_basis_state("101").amplitudes)

def test_gate_out_of_range():
    s = Q.quantum.init_basis_state("00")
    with pytest.raises(Q.utils.InvalidRangeArgumentError):
        Q.quantum.apply_gate(s, Q.Gate.ry(2, 0), [0.])
    with pytest.raises(Q.utils.InvalidRangeArgumentError):
        Q.quantum.apply_gate(s, Q.Gate.ry(0, 3), [0.])

def test_invalid_gates():
    with pytest.raises(Q.Gate.InvalidGateError):
        Q.Gate(Q.quantum.GateKind.CNOT, 0, control=0)
    with pytest.raises(Q.Gate.InvalidGateError):
        Q.Gate(Q.quantum.GateKind.RY, 0)
    with pytest.raises(Q.Gate.InvalidGateError):
        Q.Gate("cx", 1, control=0, param_slot=0)

def test_gate_kind_aliases():
    assert Q.quantum.GateKind("cx") == Q.quantum.GateKind.CNOT
    assert Q.quantum.GateKind("ry") == Q.quantum.GateKind.RY

def test_norm_preserved():
    rng = np.random.default_rng(3)
    c = circuit_small_qnn()
    s = random_state(3, rng)
    out = c.run(s, rng.uniform(0, 2*np.pi, c.n_params))
    assert abs(out.norm_sq() - 1.) < 1e-10

def test_rotation_matrices_batched():
    phis = np.array([0., 0.5, 2.])
    mats = Q.quantum.rotation_matrices(Q.quantum.GateKind.RY, phis)
    for k,phi in enumerate(phis):
        assert np.allclose(mats[k], Q.quantum.ry_matrix(phi))
    mats = Q.quantum.rotation_matrices("RZ", phis)
    for k,phi in enumerate(phis):
        assert np.allclose(mats[k], Q.quantum.rz_matrix(phi))

def test_rotation_kind_from_string():
    assert np.allclose(Q.quantum.rotation_matrix("ry", 0.3), Q.quantum.ry_matrix(0.3))
    assert np.allclose(Q.quantum.rotation_matrix("RZ", 0.3), Q.quantum.rz_matrix(0.3))
    with pytest.raises(ValueError):
        Q.quantum.rotation_matrix("cx", 0.3)
    with pytest.raises(ValueError):
        Q.quantum.rotation_matrices("CNOT", [0.1])

########## measurement ##########

def test_projector_on_zero_state():
    s = Q.quantum.init_basis_state("000000")
    assert Q.quantum.expectation_projector(s, 5) == 1.

def test_projector_equal_superposition():
    s = Q.quantum.apply_gate(Q.quantum.init_basis_state("0"), Q.Gate.ry(0, 0), [np.pi/2])
    assert abs(Q.quantum.expectation_projector(s, 0) - 0.5) < 1e-12

def test_projector_closed_form():
    s = Q.quantum.apply_gate(Q.quantum.init_basis_state("0"), Q.Gate.ry(0, 0), [1.])
    assert abs(Q.quantum.expectation_projector(s, 0) - np.cos(0.5)**2) < 1e-12
    assert abs(Q.quantum.expectation_projector(s, 0) - 0.77015) < 1e-5

def test_projector_bad_qubit():
    with pytest.raises(Q.utils.InvalidRangeArgumentError):
        Q.quantum.expectation_projector(Q.quantum.init_basis_state("00"), 2)

def test_projector_range():
    rng = np.random.default_rng(0)
    amps = random_amplitudes(4, rng, batch=20)
    e = Q.quantum.projector_expectations(amps, 4, 1)
    assert np.all((0. <= e) & (e <= 1.))
