from dataclasses import dataclass
import numpy as np

from .. import config
from ..utils.argument_check import check_range

@dataclass
class SGDParameters:
    """
    Hyper parameters of the momentum SGD run by every local node
    """
    learning_rate : float = config.LEARNING_RATE # η_0
    momentum      : float = config.MOMENTUM      # β
    decay_factor  : float = config.DECAY_FACTOR  # multiplicative decay of η
    decay_period  : int   = config.DECAY_PERIOD  # η is decayed every `decay_period` global rounds

    def __post_init__(self):
        check_range("learning_rate", self.learning_rate, low=0., low_open=True)
        check_range("momentum", self.momentum, 0., 1., high_open=True)
        check_range("decay_factor", self.decay_factor, 0., 1., low_open=True)
        check_range("decay_period", self.decay_period, low=1)

    def learning_rate_at(self, round_index : int) -> float:
        return lr_schedule(self.learning_rate, self.decay_factor, self.decay_period, round_index)

def lr_schedule(lr0 : float, decay_factor : float, decay_period : int, round_index : int) -> float:
    """
    Step decay: η_t = η_0 * factor^floor(t / period)

    Args:
        lr0 (float): initial learning rate η_0
        decay_factor (float): multiplicative factor
        decay_period (int): period in global rounds
        round_index (int): global round t, counted from 0

    Returns:
        float
    """
    return lr0 * decay_factor ** (round_index // decay_period)

def sgd_step(params : np.ndarray, grad : np.ndarray, lr : float, velocity : np.ndarray, momentum : float) -> tuple:
    """
    One step of SGD with heavy-ball momentum:
        v' = β v + g
        θ' = θ - η v'

    Args:
        params (np.ndarray): θ
        grad (np.ndarray): the (estimated) gradient g
        lr (float): learning rate η
        velocity (np.ndarray): momentum buffer v
        momentum (float): β

    Returns:
        (np.ndarray, np.ndarray): new parameters and new velocity
    """
    velocity = momentum * velocity + grad
    return params - lr * velocity, velocity
