from dataclasses import dataclass
import numpy as np

from .base import GradEstimate, GradientMode, shifted_parameters
from .adjoint import adjoint_gradient
from ..quantum import Circuit, NoiseModel, kernels, projector_expectations, noisy_expectation, sample_two_outcome
from ..utils.argument_check import check_range, InvalidArgumentValueError, InvalidDimensionError

@dataclass(frozen=True)
class QnnLossSpec:
    """
    Binary classifier h(θ, O, ρ) = Tr(O U(θ) ρ U(θ)†) trained on the regularized square loss.

    Attributes:
        circuit (Circuit): the ansatz U(θ)
        regularization (float): λ >= 0
        measured_qubit (int): O is the projector |0><0| on this qubit. Defaults to the last qubit.
    """
    circuit : Circuit
    regularization : float = 0.
    measured_qubit : int = None

    def __post_init__(self):
        check_range("regularization", self.regularization, low=0.)
        if self.measured_qubit is None:
            object.__setattr__(self, "measured_qubit", self.circuit.n_qubits - 1)
        check_range("measured_qubit", self.measured_qubit, 0, self.circuit.n_qubits - 1)

    @property
    def n_qubits(self) -> int:
        return self.circuit.n_qubits

    @property
    def n_params(self) -> int:
        return self.circuit.n_params

    @property
    def trace_O(self) -> float:
        """The projector has rank 2^(N-1)"""
        return float(2**(self.n_qubits - 1))

    def observable(self, amplitudes : np.ndarray) -> np.ndarray:
        return amplitudes * kernels.zero_mask(self.n_qubits, self.measured_qubit)[None,:]

def as_batch(data) -> tuple:
    """
    Accepts an EncodedExample, a list of them, or a pair (amplitudes (M, 2^n), labels (M,)) and returns the pair of arrays
    """
    if isinstance(data, tuple) and len(data) == 2 and isinstance(data[0], np.ndarray):
        amps, labels = data
        return np.atleast_2d(amps).astype(complex), np.atleast_1d(np.asarray(labels, dtype=float))
    if hasattr(data, "features"):
        data = [data]
    if len(data) == 0:
        raise InvalidDimensionError("dataset", 0, ">= 1 example")
    amps = np.stack([ex.features for ex in data]).astype(complex)
    labels = np.array([ex.label for ex in data], dtype=float)
    return amps, labels

def ideal_predictions(params : np.ndarray, amplitudes : np.ndarray, spec : QnnLossSpec) -> np.ndarray:
    """Exact h(θ, O, ρ_b) for a batch of encoded inputs"""
    out = spec.circuit.evolve(np.atleast_2d(amplitudes), params)
    return projector_expectations(out, spec.n_qubits, spec.measured_qubit)

def apply_noise(ideal : np.ndarray, spec : QnnLossSpec, noise : NoiseModel, rng : np.random.Generator = None) -> np.ndarray:
    """Turns exact expectations into depolarized expectations, then into K-shot sample means if the noise model is sampled"""
    if noise is None or noise.is_ideal:
        return ideal
    p_tilde = noise.p_tilde(spec.circuit.depth)
    y = noisy_expectation(ideal, spec.trace_O, spec.n_qubits, p_tilde)
    if noise.is_sampled:
        if rng is None:
            raise InvalidArgumentValueError("rng", rng)
        y = sample_two_outcome(y, noise.shots, rng)
    return y

def qnn_forward(params : np.ndarray, example, spec : QnnLossSpec, noise : NoiseModel = None, rng : np.random.Generator = None) -> float:
    """
    Prediction of the classifier on one example

    Args:
        params (np.ndarray): θ of length d_Q
        example (EncodedExample): encoded input ρ_i
        spec (QnnLossSpec): the model
        noise (NoiseModel, optional): execution mode. Defaults to None (ideal).
        rng (np.random.Generator, optional): random stream, required when the noise model is sampled

    Returns:
        float: ŷ in ideal mode, the depolarized expectation for p > 0 and K = ∞, the sample mean ȳ otherwise
    """
    params = spec.circuit.check_params(params)
    amps, _ = as_batch(example)
    return float(apply_noise(ideal_predictions(params, amps, spec), spec, noise, rng)[0])

def qnn_loss(params : np.ndarray, data, spec : QnnLossSpec, noise : NoiseModel = None, rng : np.random.Generator = None) -> float:
    """
    Regularized mean square error 1/2M Σ_i (h_i - y_i)^2 + λ ||θ||^2

    Args:
        params (np.ndarray): θ
        data: an EncodedExample, a non-empty list of them, or a pair of arrays (amplitudes, labels)
        spec (QnnLossSpec): the model
        noise (NoiseModel, optional): execution mode of the predictions. Defaults to None (ideal).
        rng (np.random.Generator, optional): random stream, required when the noise model is sampled

    Returns:
        float
    """
    params = spec.circuit.check_params(params)
    amps, labels = as_batch(data)
    y = apply_noise(ideal_predictions(params, amps, spec), spec, noise, rng)
    return float(0.5 * np.mean((y - labels)**2) + spec.regularization * np.dot(params, params))

def qnn_grad_analytic(params : np.ndarray, example, spec : QnnLossSpec) -> GradEstimate:
    """
    Gradient of the single-example loss by the parameter shift rule. Component j is
        (ŷ - y) (ŷ_{+j} - ŷ_{-j}) / 2 + λ θ_j
    where ŷ_{±j} is evaluated at θ ± π/2 e_j. The 2d_Q + 1 circuits are run in one batched pass.

    Args:
        params (np.ndarray): θ
        example (EncodedExample): the example (x_i, y_i)
        spec (QnnLossSpec): the model

    Returns:
        GradEstimate: in mode analytic-ideal
    """
    params = spec.circuit.check_params(params)
    amps, labels = as_batch(example)
    y_all = _shifted_expectations(params, amps[0], spec)
    return GradEstimate(_shift_rule(y_all, labels[0], params, spec), GradientMode.ANALYTIC_IDEAL)

def qnn_grad_adjoint(params : np.ndarray, example, spec : QnnLossSpec) -> GradEstimate:
    """
    Same quantity as `qnn_grad_analytic` by reverse-mode differentiation of the statevector simulation
    """
    return qnn_full_gradient(params, example, spec)

def qnn_full_gradient(params : np.ndarray, data, spec : QnnLossSpec) -> GradEstimate:
    """
    Ideal gradient of the loss over a whole dataset: 1/M Σ_i (ŷ_i - y_i) ∇ŷ_i + λθ, by reverse-mode differentiation

    Args:
        params (np.ndarray): θ
        data: an EncodedExample, a list of them, or a pair of arrays (amplitudes, labels)
        spec (QnnLossSpec): the model

    Returns:
        GradEstimate: in mode analytic-ideal
    """
    params = spec.circuit.check_params(params)
    amps, labels = as_batch(data)
    # the weights depend on ŷ, so predictions are computed first
    y = ideal_predictions(params, amps, spec)
    grad, _ = adjoint_gradient(spec.circuit, params, amps, spec.observable, (y - labels) / labels.size)
    return GradEstimate(grad + spec.regularization * params, GradientMode.ANALYTIC_IDEAL)

def qnn_grad_estimated(params : np.ndarray, example, spec : QnnLossSpec, noise : NoiseModel, rng : np.random.Generator = None) -> GradEstimate:
    """
    Gradient estimate under depolarization and finite shots. Component j is
        (ȳ - y) (ȳ_{+j} - ȳ_{-j}) / 2 + λ θ_j
    where each of the 2d_Q + 1 values ȳ is an independent K-shot sample mean of the depolarized expectation.
    With K = ∞ the exact depolarized expectations are used.

    Args:
        params (np.ndarray): θ
        example (EncodedExample): the example (x_i, y_i)
        spec (QnnLossSpec): the model
        noise (NoiseModel): depolarization rate p and shots K
        rng (np.random.Generator, optional): random stream, required when K is finite

    Returns:
        GradEstimate: in mode shot-noisy (K finite), analytic-noisy or analytic-ideal (K = ∞)
    """
    params = spec.circuit.check_params(params)
    amps, labels = as_batch(example)
    y_all = apply_noise(_shifted_expectations(params, amps[0], spec), spec, noise, rng)
    mode = GradientMode.from_noise(noise)
    shots = y_all.size * noise.shots if noise.is_sampled else 0
    return GradEstimate(_shift_rule(y_all, labels[0], params, spec), mode, shots)

def qnn_gradient(params : np.ndarray, data, spec : QnnLossSpec, noise : NoiseModel = None, rng : np.random.Generator = None, ideal_gradient : str = "adjoint") -> GradEstimate:
    """
    Gradient of the loss over a mini-batch, dispatched on the execution mode.
    In the ideal mode the reverse-mode (`ideal_gradient="adjoint"`) or shift-rule (`"shift"`) gradient is returned.
    Otherwise per-example estimates with independent shots are averaged.
    """
    noise = NoiseModel() if noise is None else noise
    amps, labels = as_batch(data)
    if noise.is_ideal:
        if ideal_gradient == "adjoint":
            return qnn_full_gradient(params, (amps, labels), spec)
        if ideal_gradient != "shift":
            raise InvalidArgumentValueError("ideal_gradient", ideal_gradient, ["adjoint", "shift"])
        estimates = [qnn_grad_analytic(params, (amps[i:i+1], labels[i:i+1]), spec) for i in range(labels.size)]
    else:
        estimates = [qnn_grad_estimated(params, (amps[i:i+1], labels[i:i+1]), spec, noise, rng) for i in range(labels.size)]
    values = np.mean([g.values for g in estimates], axis=0)
    return GradEstimate(values, estimates[0].mode, sum(g.shots_used for g in estimates))

def _shifted_expectations(params : np.ndarray, amplitudes : np.ndarray, spec : QnnLossSpec) -> np.ndarray:
    out = spec.circuit.evolve_parameter_batch(amplitudes, shifted_parameters(params))
    return projector_expectations(out, spec.n_qubits, spec.measured_qubit)

def _shift_rule(y_all : np.ndarray, label : float, params : np.ndarray, spec : QnnLossSpec) -> np.ndarray:
    d = params.size
    y, y_plus, y_minus = y_all[0], y_all[1:d+1], y_all[d+1:]
    return (y - label) * (y_plus - y_minus) / 2 + spec.regularization * params

def qnn_grad_samples(params : np.ndarray, example, spec : QnnLossSpec, noise : NoiseModel, rng : np.random.Generator, trials : int) -> tuple:
    """
    `trials` independent draws of `qnn_grad_estimated` at a fixed (θ, example). The circuits are simulated once;
    only the K-shot sample means are redrawn.

    Returns:
        (np.ndarray, np.ndarray): samples of shape (trials, d_Q), and the exact expectations [ŷ, ŷ_{+j}, ŷ_{-j}] of length 2d_Q + 1
    """
    params = spec.circuit.check_params(params)
    amps, labels = as_batch(example)
    y_exact = _shifted_expectations(params, amps[0], spec)
    y_all = apply_noise(np.tile(y_exact, (trials, 1)), spec, noise, rng)
    d = params.size
    samples = (y_all[:, :1] - labels[0]) * (y_all[:, 1:d+1] - y_all[:, d+1:]) / 2 + spec.regularization * params[None,:]
    return samples, y_exact
