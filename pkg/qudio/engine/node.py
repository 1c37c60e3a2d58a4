from dataclasses import dataclass
import numpy as np

from .problems import Problem
from .parameters import GlobalConfig
from ..optimize import sgd_step
from ..utils.rng import node_rng

@dataclass
class LocalNode:
    """
    One classical optimizer driving one quantum processor. The node owns shard `node_id` of the problem and a private random stream per round.
    """
    node_id : int
    problem : Problem
    config : GlobalConfig

    def rng(self, round_index : int) -> np.random.Generator:
        return node_rng(self.config.seed, self.node_id, round_index)

def local_update_loop(node : LocalNode, params_start : np.ndarray, round_index : int, velocity : np.ndarray = None, W : int = None) -> tuple:
    """
    W local SGD steps of a node starting from the broadcast parameters θ^(t)

    Args:
        node (LocalNode): the node
        params_start (np.ndarray): θ^(t)
        round_index (int): global round t. Selects the learning rate and the random stream.
        velocity (np.ndarray, optional): momentum buffer at the start of the round. Defaults to zero.
        W (int, optional): number of local steps. Defaults to node.config.W.

    Returns:
        (np.ndarray, np.ndarray): θ_i^(t,W) and the final momentum buffer
    """
    config = node.config
    W = config.W if W is None else W
    params = np.array(params_start, dtype=float)
    velocity = np.zeros_like(params) if velocity is None else np.array(velocity, dtype=float)
    lr = config.sgd.learning_rate_at(round_index)
    rng = node.rng(round_index)
    for _ in range(W):
        g = node.problem.local_gradient(params, node.node_id, rng, config)
        params, velocity = sgd_step(params, g.values, lr, velocity, config.momentum)
    return params, velocity
