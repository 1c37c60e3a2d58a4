"""
rng.py

Random streams are never shared between workers. Every stream is derived from the master seed and a tuple of integer keys,
so that the stream consumed by a node at some round does not depend on the scheduling order of the workers.
The first key identifies the purpose of the stream.
"""

import numpy as np

STREAM_INIT      = 0
STREAM_NODE      = 1
STREAM_EVAL      = 2
STREAM_PARTITION = 3
STREAM_DISTILL   = 4
STREAM_SHARD     = 5
STREAM_BIAS      = 6

def derive_rng(seed : int, *keys : int) -> np.random.Generator:
    """
    Builds an independent random generator keyed by (seed, *keys)

    Args:
        seed (int): master seed
        *keys (int): additional non-negative integer keys

    Returns:
        np.random.Generator
    """
    # key count first, entropy words are zero padded
    return np.random.default_rng(np.random.SeedSequence([int(seed), len(keys), *(int(k) for k in keys)]))

def node_rng(seed : int, node_id : int, round_index : int) -> np.random.Generator:
    """Stream of local node `node_id` during global round `round_index`"""
    return derive_rng(seed, STREAM_NODE, node_id, round_index)

def init_rng(seed : int) -> np.random.Generator:
    """Stream used to draw the initial parameters"""
    return derive_rng(seed, STREAM_INIT)

def eval_rng(seed : int, round_index : int) -> np.random.Generator:
    """Stream used by the coordinator to evaluate metrics in the NISQ setting"""
    return derive_rng(seed, STREAM_EVAL, round_index)
