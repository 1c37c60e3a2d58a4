"""
adjoint.py

Reverse-mode differentiation of expectation values through a statevector simulation.
The state is run forward once, then swept backward gate by gate along with the co-state λ = O|φ>.
Every rotation exp(-iθG/2) contributes Im<λ|G|φ> to the derivative of <φ|O|φ> with respect to its slot.
Memory is that of two statevectors, independent of the circuit length.
"""

import numpy as np

from ..quantum import Circuit, kernels

def adjoint_gradient(circuit : Circuit, params : np.ndarray, amplitudes : np.ndarray, observable, weights : np.ndarray) -> tuple:
    """
    Weighted gradient Σ_b w_b ∇_θ <ψ_b|U(θ)† O U(θ)|ψ_b> over a batch of input states

    Args:
        circuit (Circuit): the parameterized circuit U(θ)
        params (np.ndarray): θ
        amplitudes (np.ndarray): input states, array of shape (B, 2^n)
        observable (callable): applies the Hermitian observable O to an array of amplitudes of shape (B, 2^n)
        weights (np.ndarray): weights w_b of shape (B,)

    Returns:
        (np.ndarray, np.ndarray): the weighted gradient (length d_Q) and the expectations <O>_b (length B)
    """
    params = circuit.check_params(params)
    n = circuit.n_qubits
    final = circuit.evolve(np.atleast_2d(amplitudes), params)
    o_final = observable(final)
    expectations = np.real(np.sum(np.conj(final) * o_final, axis=1))

    phi = kernels.as_tensor(final, n)
    lam = kernels.as_tensor(np.asarray(weights, dtype=float)[:,None] * o_final, n)
    grad = np.zeros(circuit.n_params)
    for gate in reversed(circuit.gates):
        if gate.kind.is_rotation:
            g_phi = kernels.apply_single(phi, gate.kind.generator, gate.target)
            grad[gate.param_slot] += np.imag(np.vdot(lam, g_phi))
        phi = kernels.apply(phi, gate, params, inverse=True)
        lam = kernels.apply(lam, gate, params, inverse=True)
    return grad, expectations
