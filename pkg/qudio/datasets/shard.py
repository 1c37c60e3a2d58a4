from dataclasses import dataclass
import numpy as np

from ..utils.argument_check import InvalidRangeArgumentError
from ..utils.maths import near_equal_split
from ..utils.rng import derive_rng, STREAM_SHARD

@dataclass(frozen=True)
class ShardPlan:
    """
    Q disjoint lists of training indices D_i, one per local node
    """
    assignments : tuple
    n_examples : int

    def __post_init__(self):
        object.__setattr__(self, "assignments", tuple(tuple(int(i) for i in a) for a in self.assignments))
        flat = sorted(i for a in self.assignments for i in a)
        if flat != list(range(self.n_examples)):
            raise ValueError("Shards should be disjoint and cover the whole training set")

    @property
    def Q(self) -> int:
        return len(self.assignments)

    def sizes(self) -> list:
        return [len(a) for a in self.assignments]

    def __getitem__(self, i):
        return self.assignments[i]

    def __len__(self):
        return len(self.assignments)

def shard(train, Q : int, seed : int = 0) -> ShardPlan:
    """
    Splits the training set into Q shards: seeded shuffle, then contiguous near-equal split (sizes differ by at most one).

    Args:
        train (list | int): the training set, or its size
        Q (int): number of local nodes, 1 <= Q <= |train|
        seed (int, optional): Defaults to 0.

    Raises:
        InvalidRangeArgumentError: if Q is out of range

    Returns:
        ShardPlan
    """
    n = train if isinstance(train, (int, np.integer)) else len(train)
    if not 1 <= Q <= n:
        raise InvalidRangeArgumentError("Q", Q, f"in [1, {n}]")
    order = derive_rng(seed, STREAM_SHARD).permutation(n)
    return ShardPlan(tuple(near_equal_split(order, Q)), n)
