import numpy as np

def near_equal_split(indices, q : int) -> list:
    """
    Splits a sequence into q contiguous chunks whose sizes differ by at most one. Larger chunks come first.

    Args:
        indices (sequence): elements to split, in order
        q (int): number of chunks

    Returns:
        list: q tuples of elements
    """
    return [tuple(int(i) for i in chunk) for chunk in np.array_split(np.asarray(indices, dtype=int), q)]

def clamp_probability(p):
    """Clips floating point artifacts (e.g. -1e-17) so that p lies in [0,1]"""
    return np.clip(p, 0., 1.)

def standard_error(samples : np.ndarray, axis:int = 0) -> np.ndarray:
    """Standard error of the mean of samples along an axis"""
    n = samples.shape[axis]
    return np.std(samples, axis=axis, ddof=1) / np.sqrt(n)
