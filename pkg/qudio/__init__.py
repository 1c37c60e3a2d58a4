"""qudio

Quantum Distributed Optimization: a bulk-synchronous training engine for
variational quantum algorithms, simulated on dense statevectors.
"""

from . import config
from . import utils
from . import quantum
from . import hamiltonian
from . import datasets
from . import gradients
from . import optimize
from . import engine
from . import diagnostics

from .utils import Logger
from .worker import Worker
from .quantum import StateVector, Circuit, Gate, NoiseModel
from .hamiltonian import PauliString, Hamiltonian, Partition
from .engine import GlobalConfig, TrainingTrace, run_qudio
