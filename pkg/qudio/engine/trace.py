from dataclasses import dataclass, field
import csv
import json
import numpy as np

from ..utils.argument_check import InvalidDimensionError

CSV_HEADER = ("round", "wall_clock_s", "train_loss", "grad_norm_sq", "metric")

@dataclass
class TrainingTrace:
    """
    Record of a training run, one entry per synchronized parameter vector θ^(t), t = 0..T

    Attributes:
        params (list): θ^(t) snapshots
        wall_clock (list): cumulative seconds spent in the parallel regions up to round t
        train_loss (list): ideal training loss at θ^(t)
        grad_norm_sq (list): ||∇L(θ^(t))||^2, nan when not recorded
        metric (list): test accuracy (QNN) or energy (VQE)
        metric_name (str): name of the metric column
        config (dict): configuration of the run
    """
    params : list = field(default_factory=list)
    wall_clock : list = field(default_factory=list)
    train_loss : list = field(default_factory=list)
    grad_norm_sq : list = field(default_factory=list)
    metric : list = field(default_factory=list)
    metric_name : str = "metric"
    config : dict = field(default_factory=dict)

    class NonMonotonicClockError(Exception):
        def __init__(self, previous, current):
            super().__init__(f"Wall clock went backward: {previous} -> {current}")

    def record(self, params : np.ndarray, wall_clock : float, train_loss : float, grad_norm_sq : float, metric : float):
        if self.wall_clock and wall_clock < self.wall_clock[-1]:
            raise TrainingTrace.NonMonotonicClockError(self.wall_clock[-1], wall_clock)
        self.params.append(None if params is None else np.array(params, dtype=float))
        self.wall_clock.append(float(wall_clock))
        self.train_loss.append(float(train_loss))
        self.grad_norm_sq.append(float(grad_norm_sq))
        self.metric.append(float(metric))

    def __len__(self):
        return len(self.wall_clock)

    @property
    def n_rounds(self) -> int:
        """Number T of global rounds (the trace holds T+1 entries)"""
        return max(len(self) - 1, 0)

    @property
    def final_params(self) -> np.ndarray:
        return self.params[-1]

    def rows(self) -> list:
        return [(t, self.wall_clock[t], self.train_loss[t], self.grad_norm_sq[t], self.metric[t]) for t in range(len(self))]

    def summary(self) -> dict:
        if len(self) == 0:
            return {}
        return {
            "rounds" : self.n_rounds,
            "wall_clock_s" : self.wall_clock[-1],
            "final_train_loss" : self.train_loss[-1],
            f"final_{self.metric_name}" : self.metric[-1],
            f"best_{self.metric_name}" : float(np.nanmax(self.metric)) if self.metric_name != "energy" else float(np.nanmin(self.metric)),
        }

    def save_csv(self, filepath : str) -> None:
        """Writes the per-round columns. The header is fixed: round,wall_clock_s,train_loss,grad_norm_sq,metric"""
        with open(filepath, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(CSV_HEADER)
            for row in self.rows():
                writer.writerow([row[0]] + [repr(float(x)) for x in row[1:]])

    def save_json(self, filepath : str, extra : dict = None) -> None:
        """Writes the configuration, the final parameters and the summary"""
        content = {
            "config" : self.config,
            "metric_name" : self.metric_name,
            "summary" : self.summary(),
            "initial_params" : None if len(self)==0 or self.params[0] is None else self.params[0].tolist(),
            "final_params" : None if len(self)==0 or self.final_params is None else self.final_params.tolist(),
        }
        if extra is not None:
            content.update(extra)
        with open(filepath, "w", encoding="utf-8") as f:
            json.dump(content, f, indent=2)

    @classmethod
    def load_csv(cls, filepath : str, metric_name : str = "metric") -> "TrainingTrace":
        """Reads a trace written by `save_csv`. Parameter snapshots are not stored in the CSV and are set to None."""
        trace = cls(metric_name=metric_name)
        with open(filepath, "r", newline="", encoding="utf-8") as f:
            reader = csv.reader(f)
            header = tuple(next(reader))
            if header != CSV_HEADER:
                raise InvalidDimensionError("trace header", header, CSV_HEADER)
            for row in reader:
                trace.record(None, *(float(x) for x in row[1:]))
        return trace
