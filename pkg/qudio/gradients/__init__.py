from .base import GradientMode, GradEstimate, finite_difference, shifted_parameters, PARAMETER_SHIFT
from .adjoint import adjoint_gradient
from .qnn import QnnLossSpec, qnn_forward, qnn_loss, qnn_grad_analytic, qnn_grad_adjoint, qnn_full_gradient, qnn_grad_estimated, qnn_gradient, qnn_grad_samples, ideal_predictions, as_batch
from .vqe import VqeSpec, vqe_energy, vqe_grad
