from .parameters import GlobalConfig, Workload, Executor
from .problems import Problem, QnnProblem, VqeProblem
from .node import LocalNode, local_update_loop
from .trace import TrainingTrace, CSV_HEADER
from .evaluation import predict_label, evaluate_accuracy
from .qudio import Qudio, run_qudio, synchronize, check_conservation, initial_parameters, NodeFailureError, InvariantViolationError
