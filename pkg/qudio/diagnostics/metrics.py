import numpy as np

from ..engine import TrainingTrace
from ..utils.argument_check import InvalidDimensionError, InvalidArgumentValueError

def utility_R1(trace : TrainingTrace) -> float:
    """
    Convergence utility R_1 = 1/T Σ_{t=1}^T ||∇L(θ^(t))||^2 over the synchronized parameters.
    A trace holding a single entry is its own average.

    Raises:
        InvalidDimensionError: if the trace is empty
        InvalidArgumentValueError: if the gradient norms were not recorded

    Returns:
        float
    """
    if len(trace) == 0:
        raise InvalidDimensionError("trace", 0, ">= 1 round")
    values = np.asarray(trace.grad_norm_sq, dtype=float)
    values = values if values.size == 1 else values[1:]
    if np.any(np.isnan(values)):
        raise InvalidArgumentValueError("grad_norm_sq", "nan (gradient norms were not recorded)")
    return float(np.mean(values))

def time_to_threshold(trace : TrainingTrace, threshold : float, higher_is_better : bool = True) -> float:
    """First wall-clock time at which the metric reaches the threshold, None if never reached"""
    for t,m in zip(trace.wall_clock, trace.metric):
        if (m >= threshold) if higher_is_better else (m <= threshold):
            return t
    return None

def _ratio(num, den):
    if num is None or den is None:
        return None
    if den == 0.:
        return 1. if num == 0. else float("inf")
    return num / den

def speedup_metrics(traces : dict, threshold : float, baseline = None, higher_is_better : bool = True) -> dict:
    """
    Speedups of a sweep over the number of local nodes, relative to a baseline (Q=1 by default)

    Args:
        traces (dict): map Q -> TrainingTrace
        threshold (float): target value of the metric (e.g. 0.95 accuracy)
        baseline (optional): key of the baseline trace. Defaults to the smallest Q.
        higher_is_better (bool, optional): False for metrics to minimize such as energies. Defaults to True.

    Returns:
        dict: for each Q, `time_to_threshold` (None if the threshold is never reached), `speedup_to_accuracy` T1/T2 (None if undefined),
        `fixed_T_time` (total wall-clock) and `fixed_T_speedup`
    """
    if len(traces) == 0:
        raise InvalidDimensionError("traces", 0, ">= 1 trace")
    baseline = min(traces) if baseline is None else baseline
    t1 = time_to_threshold(traces[baseline], threshold, higher_is_better)
    base_total = traces[baseline].wall_clock[-1]
    out = {}
    for Q in sorted(traces):
        tr = traces[Q]
        t2 = time_to_threshold(tr, threshold, higher_is_better)
        out[Q] = {
            "time_to_threshold" : t2,
            "speedup_to_accuracy" : 1. if Q == baseline and t2 is not None else _ratio(t1, t2),
            "fixed_T_time" : tr.wall_clock[-1],
            "fixed_T_speedup" : 1. if Q == baseline else _ratio(base_total, tr.wall_clock[-1]),
        }
    return out
