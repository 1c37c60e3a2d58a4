from dataclasses import dataclass
from aenum import MultiValueEnum
import numpy as np

from .. import config
from ..quantum import NoiseModel
from ..utils.argument_check import InvalidArgumentValueError, check_range

PARAMETER_SHIFT = np.pi/2

class GradientMode(MultiValueEnum):
    """
    ANALYTIC_IDEAL: exact gradient of the noiseless loss
    ANALYTIC_NOISY: exact expectations under depolarization (infinitely many shots)
    SHOT_NOISY: every expectation is a finite-shot sample mean
    """
    ANALYTIC_IDEAL = "analytic-ideal", "ideal"
    ANALYTIC_NOISY = "analytic-noisy"
    SHOT_NOISY = "shot-noisy", "shots"

    @classmethod
    def from_noise(cls, noise : NoiseModel) -> "GradientMode":
        if noise.is_sampled:
            return cls.SHOT_NOISY
        if noise.p > 0.:
            return cls.ANALYTIC_NOISY
        return cls.ANALYTIC_IDEAL

    @property
    def is_analytic(self) -> bool:
        return self != GradientMode.SHOT_NOISY

@dataclass(frozen=True, eq=False)
class GradEstimate:
    """
    A gradient (or gradient estimate) g_i(θ) together with how it was obtained.

    Attributes:
        values (np.ndarray): vector of length d_Q
        mode (GradientMode): how the expectations were evaluated
        shots_used (int): total number of circuit measurements. 0 in analytic modes.
    """
    values : np.ndarray
    mode : GradientMode
    shots_used : int = 0

    def __post_init__(self):
        object.__setattr__(self, "mode", GradientMode(self.mode))
        values = np.asarray(self.values, dtype=float)
        if not np.all(np.isfinite(values)):
            raise InvalidArgumentValueError("gradient values", values)
        if self.mode.is_analytic and self.shots_used != 0:
            raise InvalidArgumentValueError("shots_used", self.shots_used, [0])
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.values.size

    def norm_sq(self) -> float:
        return float(np.dot(self.values, self.values))

def shifted_parameters(params : np.ndarray, shift : float = PARAMETER_SHIFT, include_center : bool = True) -> np.ndarray:
    """
    Parameter vectors of the shift rule, stacked as rows: [θ,] θ + s e_0, ..., θ + s e_{d-1}, θ - s e_0, ..., θ - s e_{d-1}

    Returns:
        np.ndarray: array of shape (2d+1, d), or (2d, d) without the center
    """
    params = np.asarray(params, dtype=float)
    d = params.size
    shifts = np.concatenate([shift*np.eye(d), -shift*np.eye(d)])
    rows = params[None,:] + shifts
    if include_center:
        rows = np.concatenate([params[None,:], rows])
    return rows

def finite_difference(loss_fn, params : np.ndarray, eps : float = config.FINITE_DIFFERENCE_EPS) -> np.ndarray:
    """
    Central finite differences (f(θ + ε e_j) - f(θ - ε e_j)) / 2ε of a scalar function

    Args:
        loss_fn (callable): θ -> float
        params (np.ndarray): point θ
        eps (float, optional): step ε > 0. Defaults to config.FINITE_DIFFERENCE_EPS.

    Returns:
        np.ndarray: the gradient approximation
    """
    check_range("eps", eps, low=0., low_open=True)
    params = np.asarray(params, dtype=float)
    grad = np.zeros_like(params)
    for j in range(params.size):
        e = np.zeros_like(params)
        e[j] = eps
        grad[j] = (loss_fn(params + e) - loss_fn(params - e)) / (2*eps)
    return grad
