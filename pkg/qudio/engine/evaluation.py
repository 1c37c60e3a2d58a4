import numpy as np

from ..gradients.qnn import QnnLossSpec, as_batch, ideal_predictions, apply_noise
from ..quantum import NoiseModel

DECISION_THRESHOLD = 0.5

def predict_label(y):
    """Label 0 iff the prediction is <= 0.5. Works componentwise on arrays."""
    if np.ndim(y) == 0:
        return 0 if y <= DECISION_THRESHOLD else 1
    return (np.asarray(y) > DECISION_THRESHOLD).astype(int)

def evaluate_accuracy(params : np.ndarray, data, spec : QnnLossSpec, noise : NoiseModel = None, rng : np.random.Generator = None) -> float:
    """
    Fraction of correctly classified examples

    Args:
        params (np.ndarray): θ
        data: a list of EncodedExample or a pair of arrays (amplitudes, labels)
        spec (QnnLossSpec): the model
        noise (NoiseModel, optional): in a sampled mode, the K-shot sample mean ȳ is thresholded. Defaults to None (ideal).
        rng (np.random.Generator, optional): random stream, required when the noise model is sampled

    Returns:
        float: accuracy in [0,1]
    """
    params = spec.circuit.check_params(params)
    amps, labels = as_batch(data)
    y = apply_noise(ideal_predictions(params, amps, spec), spec, noise, rng)
    return float(np.mean(predict_label(y) == labels.astype(int)))
