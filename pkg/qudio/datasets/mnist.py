from dataclasses import dataclass
from functools import lru_cache
import numpy as np

from .idx import RawExample, IMAGE_SIZE
from ..quantum import StateVector
from ..utils.argument_check import InvalidDimensionError
from ..utils.rng import derive_rng, STREAM_DISTILL

DOWNSAMPLED_SIZE = 8
POSITIVE_LABEL, NEGATIVE_LABEL = 1, 0

class ZeroNormError(Exception):
    def __init__(self):
        super().__init__("Cannot amplitude-encode a vector of zero norm")

class InsufficientDataError(Exception):
    def __init__(self, split : str, label : int, needed : int, available : int):
        super().__init__(f"Not enough examples of digit {label} in the {split} split: needed {needed}, found {available}")

@dataclass(frozen=True, eq=False)
class EncodedExample:
    """
    Amplitude encoded image.

    Attributes:
        features (np.ndarray): unit-norm real vector of length 2^n
        label (int): binary label y in {0,1}
        state (StateVector): the state Σ_j features[j] |j>
    """
    features : np.ndarray
    label : int
    state : StateVector

@lru_cache(maxsize=None)
def pooling_matrix(size_in : int = IMAGE_SIZE, size_out : int = DOWNSAMPLED_SIZE) -> np.ndarray:
    """
    Area averaging operator from `size_in` to `size_out` samples along one axis.
    Output cell i covers [i*r, (i+1)*r[ with r = size_in/size_out and entry (i,j) is the length of the overlap
    between this cell and source pixel [j, j+1[, divided by r. Each row sums to 1.
    """
    r = size_in / size_out
    A = np.zeros((size_out, size_in))
    for i in range(size_out):
        lo, hi = i*r, (i+1)*r
        for j in range(int(np.floor(lo)), min(size_in, int(np.ceil(hi)))):
            A[i,j] = max(0., min(hi, j+1) - max(lo, j)) / r
    A.flags.writeable = False
    return A

def downsample_8x8(pixels : np.ndarray) -> np.ndarray:
    """
    Area-weighted average pooling of a 28x28 image down to 8x8

    Args:
        pixels (np.ndarray): 28x28 grid of values in [0,255]

    Returns:
        np.ndarray: row-major flattening of the 8x8 image, values in [0,1]
    """
    pixels = np.asarray(pixels, dtype=float)
    if pixels.shape != (IMAGE_SIZE, IMAGE_SIZE):
        raise InvalidDimensionError("image", pixels.shape, (IMAGE_SIZE, IMAGE_SIZE))
    A = pooling_matrix()
    return (A @ pixels @ A.T).reshape(-1) / 255.

def encode(vec : np.ndarray, label : int = None) -> EncodedExample:
    """
    Amplitude encoding: the normalized vector becomes the amplitudes of a log2(len(vec))-qubit state

    Args:
        vec (np.ndarray): real vector whose length is a power of 2 (64 for 8x8 images)
        label (int, optional): label of the example. Defaults to None.

    Raises:
        ZeroNormError: if the vector is zero
        InvalidDimensionError: if the length is not a power of 2

    Returns:
        EncodedExample
    """
    vec = np.asarray(vec, dtype=float).reshape(-1)
    n = int(round(np.log2(max(vec.size, 1))))
    if vec.size < 2 or 2**n != vec.size:
        raise InvalidDimensionError("encoded vector", vec.size, "a power of 2")
    norm = np.linalg.norm(vec)
    if norm == 0.:
        raise ZeroNormError()
    features = vec / norm
    features.flags.writeable = False
    return EncodedExample(features, label, StateVector(n, features))

def encode_image(example : RawExample) -> EncodedExample:
    return encode(downsample_8x8(example.pixels), example.label)

def _select(raw : list, count : int, balanced : bool, seed : int, split_key : int, split_name : str) -> list:
    rng = derive_rng(seed, STREAM_DISTILL, split_key)
    by_label = {l : [i for i,ex in enumerate(raw) if ex.label == l] for l in (NEGATIVE_LABEL, POSITIVE_LABEL)}
    if balanced:
        quotas = {NEGATIVE_LABEL : (count+1)//2, POSITIVE_LABEL : count//2}
        pools = {l : [by_label[l][k] for k in rng.permutation(len(by_label[l]))] for l in by_label}
    else:
        pool = by_label[NEGATIVE_LABEL] + by_label[POSITIVE_LABEL]
        pool = [pool[k] for k in rng.permutation(len(pool))]
        quotas = {None : count}
        pools = {None : pool}
    selected = []
    for key, pool in pools.items():
        taken = []
        for i in pool:
            if len(taken) == quotas[key]: break
            try:
                taken.append((i, encode_image(raw[i])))
            except ZeroNormError:
                continue # re-drawn: the next candidate of the permutation is used
        if len(taken) < quotas[key]:
            label = "0/1" if key is None else key
            raise InsufficientDataError(split_name, label, quotas[key], len(taken))
        selected += taken
    selected.sort(key=lambda t : t[0])
    return [ex for _,ex in selected]

def distill(train_raw : list, test_raw : list, train_count : int = 256, test_count : int = 500, seed : int = 0, balanced : bool = True) -> tuple:
    """
    Selects the binary 0-vs-1 classification task from MNIST, downsampled to 8x8 and amplitude encoded on 6 qubits.

    Args:
        train_raw (list): RawExample list of the train split
        test_raw (list): RawExample list of the test split
        train_count (int, optional): number of training examples. Defaults to 256.
        test_count (int, optional): number of test examples. Defaults to 500.
        seed (int, optional): seed of the selection. Defaults to 0.
        balanced (bool, optional): if True, the two classes have sizes differing by at most one in each split. Defaults to True.

    Raises:
        InsufficientDataError: if a split does not contain enough usable examples

    Returns:
        (list, list): train and test EncodedExample lists, in the order of the source files
    """
    train = _select(train_raw, train_count, balanced, seed, 0, "train")
    test = _select(test_raw, test_count, balanced, seed, 1, "test")
    return train, test

def stack_examples(examples : list) -> tuple:
    """
    Batches a list of encoded examples

    Returns:
        (np.ndarray, np.ndarray): amplitudes of shape (M, 2^n) and labels of shape (M,)
    """
    amplitudes = np.stack([ex.features for ex in examples]).astype(complex)
    labels = np.array([ex.label for ex in examples], dtype=float)
    return amplitudes, labels
