import qudio as Q
import numpy as np
import gzip
import struct

def random_amplitudes(n_qubits : int, rng : np.random.Generator, batch : int = None) -> np.ndarray:
    shape = (2**n_qubits,) if batch is None else (batch, 2**n_qubits)
    amps = rng.normal(size=shape) + 1.j * rng.normal(size=shape)
    return amps / np.linalg.norm(amps, axis=-1, keepdims=True)

def random_state(n_qubits : int, rng : np.random.Generator) -> Q.StateVector:
    return Q.StateVector(n_qubits, random_amplitudes(n_qubits, rng))

def dense_expectation(amps : np.ndarray, matrix : np.ndarray) -> float:
    return float(np.vdot(amps, matrix @ amps).real)

def within_stderr(samples : np.ndarray, target, gate : float = 4.) -> bool:
    samples = np.asarray(samples, dtype=float)
    mean = samples.mean(axis=0)
    stderr = samples.std(axis=0, ddof=1) / np.sqrt(samples.shape[0])
    return bool(np.all(np.abs(mean - target) <= np.maximum(gate * stderr, 1e-12)))

def write_idx(path, array : np.ndarray, compress : bool = False, magic : int = None):
    """Writes an array of unsigned bytes in the IDX format"""
    array = np.asarray(array, dtype=np.uint8)
    if magic is None:
        magic = 0x0800 | array.ndim
    header = struct.pack(">I", magic) + b"".join(struct.pack(">I", s) for s in array.shape)
    opener = gzip.open if compress else open
    with opener(str(path), "wb") as f:
        f.write(header + array.tobytes())
    return str(path)

def compare_traces(trace1, trace2, columns=("train_loss", "grad_norm_sq", "metric")) -> bool:
    if len(trace1) != len(trace2):
        return False
    for col in columns:
        a, b = np.asarray(getattr(trace1, col)), np.asarray(getattr(trace2, col))
        if not np.array_equal(a, b, equal_nan=True):
            return False
    return True
