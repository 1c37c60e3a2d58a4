from .bounds import bound_constants, BoundConstants, theorem1_bound, estimate_sigma_sq
from .bias import lemma3_constants, predicted_mean, predicted_variance, BiasCheckReport, BiasChecker, bias_check, bias_sweep, sweep_pass_rate, random_configuration
from .metrics import utility_R1, time_to_threshold, speedup_metrics
