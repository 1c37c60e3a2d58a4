"""
problems.py

A problem tells the engine what one local node optimizes and how the coordinator evaluates the synchronized parameters.
Problems are immutable once built and are shipped once to every worker process.
"""

from abc import ABC, abstractmethod
import numpy as np

from .evaluation import evaluate_accuracy
from ..datasets import ShardPlan, shard, stack_examples
from ..gradients import GradEstimate, QnnLossSpec, VqeSpec, qnn_gradient, qnn_loss, qnn_full_gradient, vqe_energy, vqe_grad
from ..hamiltonian import Partition, partition_terms
from ..quantum import NoiseModel
from ..utils.argument_check import InvalidDimensionError

class Problem(ABC):

    metric_name = "metric"

    @property
    @abstractmethod
    def n_params(self) -> int:
        pass

    @property
    @abstractmethod
    def n_nodes(self) -> int:
        """Number Q of shards (dataset subgroups or Hamiltonian term groups)"""
        pass

    @abstractmethod
    def local_gradient(self, params : np.ndarray, node_id : int, rng : np.random.Generator, config) -> GradEstimate:
        """Gradient estimate g_i used by node `node_id` for one local step"""
        pass

    @abstractmethod
    def train_loss(self, params : np.ndarray) -> float:
        pass

    @abstractmethod
    def full_gradient(self, params : np.ndarray) -> np.ndarray:
        """∇L(θ) of the ideal loss over the full dataset / Hamiltonian"""
        pass

    def grad_norm_sq(self, params : np.ndarray) -> float:
        g = self.full_gradient(params)
        return float(np.dot(g,g))

    @abstractmethod
    def metric(self, params : np.ndarray, noise : NoiseModel = None, rng : np.random.Generator = None) -> float:
        pass

class QnnProblem(Problem):
    """
    Image classification: node i samples its examples from the shard D_i of the training set

    Args:
        spec (QnnLossSpec): the model
        train (list): EncodedExample training set
        test (list): EncodedExample test set
        shards (ShardPlan): split of the training indices into Q shards
    """

    metric_name = "test_accuracy"

    def __init__(self, spec : QnnLossSpec, train : list, test : list, shards : ShardPlan):
        if shards.n_examples != len(train):
            raise InvalidDimensionError("shard plan", shards.n_examples, len(train))
        self.spec = spec
        self.shards = shards
        self.train_amps, self.train_labels = stack_examples(train)
        self.test_amps, self.test_labels = stack_examples(test) if len(test) > 0 else (None, None)

    @classmethod
    def build(cls, spec : QnnLossSpec, train : list, test : list, Q : int, seed : int = 0) -> "QnnProblem":
        return cls(spec, train, test, shard(train, Q, seed))

    @property
    def n_params(self) -> int:
        return self.spec.n_params

    @property
    def n_nodes(self) -> int:
        return self.shards.Q

    def local_gradient(self, params, node_id, rng, config) -> GradEstimate:
        indices = np.asarray(self.shards[node_id])
        if indices.size == 0:
            raise InvalidDimensionError(f"shard of node {node_id}", 0, ">= 1 example")
        picked = indices[rng.integers(indices.size, size=config.batch_size)]
        batch = (self.train_amps[picked], self.train_labels[picked])
        return qnn_gradient(params, batch, self.spec, config.noise, rng, config.ideal_gradient)

    def train_loss(self, params) -> float:
        return qnn_loss(params, (self.train_amps, self.train_labels), self.spec)

    def full_gradient(self, params) -> np.ndarray:
        return qnn_full_gradient(params, (self.train_amps, self.train_labels), self.spec).values

    def metric(self, params, noise = None, rng = None) -> float:
        if self.test_amps is None:
            return float("nan")
        return evaluate_accuracy(params, (self.test_amps, self.test_labels), self.spec, noise, rng)

class VqeProblem(Problem):
    """
    Ground state estimation: node i minimizes the energy of its group S_i of Hamiltonian terms

    Args:
        spec (VqeSpec): the Hamiltonian, ansatz and reference state
        partition (Partition): split of the terms into Q groups
    """

    metric_name = "energy"

    def __init__(self, spec : VqeSpec, partition : Partition):
        if partition.n_terms != len(spec.hamiltonian):
            raise InvalidDimensionError("partition", partition.n_terms, len(spec.hamiltonian))
        self.spec = spec
        self.partition = partition

    @classmethod
    def build(cls, spec : VqeSpec, Q : int, seed : int = 0) -> "VqeProblem":
        return cls(spec, partition_terms(spec.hamiltonian, Q, seed))

    @property
    def n_params(self) -> int:
        return self.spec.n_params

    @property
    def n_nodes(self) -> int:
        return self.partition.Q

    def local_gradient(self, params, node_id, rng, config) -> GradEstimate:
        return vqe_grad(params, self.spec, self.partition[node_id], config.noise, rng)

    def train_loss(self, params) -> float:
        return vqe_energy(params, self.spec)

    def full_gradient(self, params) -> np.ndarray:
        return vqe_grad(params, self.spec).values

    def metric(self, params, noise = None, rng = None) -> float:
        return vqe_energy(params, self.spec)
