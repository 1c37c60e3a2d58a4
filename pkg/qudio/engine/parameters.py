from dataclasses import dataclass, field, asdict
import numpy as np
from aenum import MultiValueEnum

from .. import config
from ..quantum import NoiseModel
from ..optimize import SGDParameters
from ..utils.argument_check import check_range, check_argument

class Workload(MultiValueEnum):
    QNN = "qnn", "QNN"
    VQE = "vqe", "VQE"

class Executor(MultiValueEnum):
    """
    How the Q local nodes of a round are scheduled.
    PROCESS: a pool of worker processes, the problem being installed once in each of them
    THREAD: a pool of threads sharing the problem
    SERIAL: nodes run one after the other in the coordinating thread
    """
    PROCESS = "process", "processes"
    THREAD = "thread", "threads"
    SERIAL = "serial", "sequential"

@dataclass
class GlobalConfig:
    """
    Hyper parameters of a distributed training run

    Attributes:
        Q (int): number of local nodes
        W (int): local steps between two synchronizations
        T (int): number of global rounds
        learning_rate (float): initial learning rate η_0
        momentum (float): momentum coefficient β in [0,1)
        decay_factor (float): learning rate decay factor in ]0,1]
        decay_period (int): the learning rate is decayed every `decay_period` global rounds
        regularization (float): λ >= 0 (QNN only)
        noise (NoiseModel): depolarization rate and shots used by the local nodes
        seed (int): master seed. Every random stream of the run derives from it.
        workload (Workload): qnn or vqe
        executor (Executor): process, thread or serial
        workers (int): size of the pool. Defaults to min(Q, cpu count).
        carry_momentum (bool): if True, each node keeps its momentum buffer across synchronizations. Otherwise buffers are reset every round.
        batch_size (int): examples drawn per local QNN step
        ideal_gradient (str): "adjoint" or "shift", how ideal gradients are computed
        record_grad_norm (bool): evaluate ||∇L(θ^(t))||^2 at every round
        init_range (float): θ^(0) is drawn uniformly in [0, init_range)^d. Defaults to 2π.
    """
    Q : int = 1
    W : int = 1
    T : int = config.QNN_GLOBAL_STEPS
    learning_rate : float = config.LEARNING_RATE
    momentum : float = config.MOMENTUM
    decay_factor : float = config.DECAY_FACTOR
    decay_period : int = config.DECAY_PERIOD
    regularization : float = 0.
    noise : NoiseModel = field(default_factory=NoiseModel)
    seed : int = 0
    workload : Workload = Workload.QNN
    executor : Executor = Executor.SERIAL
    workers : int = None
    carry_momentum : bool = False
    batch_size : int = 1
    ideal_gradient : str = "adjoint"
    record_grad_norm : bool = True
    init_range : float = 2*np.pi

    def __post_init__(self):
        self.workload = Workload(self.workload)
        self.executor = Executor(self.executor)

    @classmethod
    def for_workload(cls, workload, **kwargs) -> "GlobalConfig":
        """
        Configuration with the defaults of a workload. VQE runs use their own learning rate schedule, round count and initialization range.
        """
        workload = Workload(workload)
        defaults = {}
        if workload == Workload.VQE:
            defaults = dict(T=config.VQE_GLOBAL_STEPS, learning_rate=config.VQE_LEARNING_RATE, decay_factor=config.VQE_DECAY_FACTOR, init_range=config.VQE_INIT_RANGE)
        defaults.update(kwargs)
        return cls(workload=workload, **defaults)

    def validate(self) -> "GlobalConfig":
        check_range("Q", self.Q, low=1)
        check_range("W", self.W, low=1)
        check_range("T", self.T, low=1)
        check_range("regularization", self.regularization, low=0.)
        check_range("batch_size", self.batch_size, low=1)
        check_range("init_range", self.init_range, low=0., low_open=True)
        if self.workers is not None:
            check_range("workers", self.workers, low=1)
        check_argument("ideal_gradient", self.ideal_gradient, str, ["adjoint", "shift"])
        self.sgd # validates the optimizer hyper parameters
        return self

    @property
    def sgd(self) -> SGDParameters:
        return SGDParameters(self.learning_rate, self.momentum, self.decay_factor, self.decay_period)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["noise"] = {"p" : self.noise.p, "shots" : self.noise.shots}
        d["workload"] = self.workload.value
        d["executor"] = self.executor.value
        return d

    @classmethod
    def from_dict(cls, d : dict) -> "GlobalConfig":
        d = dict(d)
        d["noise"] = NoiseModel(**d.get("noise", {}))
        return cls(**d)
