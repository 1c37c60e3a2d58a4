from dataclasses import dataclass
import numpy as np
import scipy.sparse as sp
import scipy.linalg

from .pauli import PauliString
from .. import config
from ..utils.argument_check import InvalidDimensionError, InvalidRangeArgumentError, InvalidArgumentValueError
from ..utils.maths import near_equal_split
from ..utils.rng import derive_rng, STREAM_PARTITION

@dataclass(frozen=True)
class Hamiltonian:
    """
    Weighted sum of Pauli strings H = Σ α_i H_i. Terms are kept in input order.
    """
    terms : tuple

    class EmptyHamiltonianError(Exception):
        def __init__(self):
            super().__init__("A Hamiltonian needs at least one term")

    def __post_init__(self):
        terms = tuple((float(a), p if isinstance(p, PauliString) else PauliString.from_string(p)) for (a,p) in self.terms)
        if len(terms) == 0:
            raise Hamiltonian.EmptyHamiltonianError()
        n = terms[0][1].n_qubits
        for a,p in terms:
            if p.n_qubits != n:
                raise InvalidDimensionError(f"Pauli string '{p}'", p.n_qubits, n)
            if not np.isfinite(a):
                raise InvalidArgumentValueError("coefficient", a)
        object.__setattr__(self, "terms", terms)

    @property
    def n_qubits(self) -> int:
        return self.terms[0][1].n_qubits

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([a for a,_ in self.terms])

    @property
    def paulis(self) -> list:
        return [p for _,p in self.terms]

    def __len__(self):
        return len(self.terms)

    def resolve_subset(self, subset=None) -> tuple:
        if subset is None:
            return tuple(range(len(self)))
        subset = tuple(int(j) for j in subset)
        for j in subset:
            if not 0 <= j < len(self):
                raise InvalidRangeArgumentError("term index", j, f"in [0, {len(self)-1}]")
        return subset

    def to_sparse(self, subset=None) -> sp.csr_matrix:
        """Sparse matrix of Σ_{j in subset} α_j H_j"""
        dim = 2**self.n_qubits
        mat = sp.csr_matrix((dim, dim), dtype=complex)
        for j in self.resolve_subset(subset):
            a,p = self.terms[j]
            mat = mat + a * p.to_sparse()
        return mat

    def to_dense(self, subset=None) -> np.ndarray:
        if self.n_qubits > config.MAX_DENSE_QUBITS:
            raise InvalidRangeArgumentError("n_qubits", self.n_qubits, f"<= {config.MAX_DENSE_QUBITS}")
        return self.to_sparse(subset).toarray()

    def one_norm(self) -> float:
        return float(np.sum(np.abs(self.coefficients)))

    def __str__(self):
        return "\n".join(f"{a:+.10f} {p}" for a,p in self.terms)

@dataclass(frozen=True)
class Partition:
    """
    Split of the term indices [n] into Q disjoint index sets S_i
    """
    index_sets : tuple
    n_terms : int

    class InvalidPartitionError(Exception):
        def __init__(self, reason:str):
            super().__init__(f"Invalid partition: {reason}")

    def __post_init__(self):
        sets = tuple(tuple(int(j) for j in s) for s in self.index_sets)
        object.__setattr__(self, "index_sets", sets)
        flat = [j for s in sets for j in s]
        if sorted(flat) != list(range(self.n_terms)):
            raise Partition.InvalidPartitionError("index sets should be disjoint and cover every term")
        if len(sets) <= self.n_terms and any(len(s) == 0 for s in sets):
            raise Partition.InvalidPartitionError("empty index set")

    @property
    def Q(self) -> int:
        return len(self.index_sets)

    def __getitem__(self, i):
        return self.index_sets[i]

    def __iter__(self):
        return iter(self.index_sets)

    def __len__(self):
        return len(self.index_sets)

def partition_terms(h : Hamiltonian, Q : int, seed : int = 0, shuffle : bool = False) -> Partition:
    """
    Splits the terms of a Hamiltonian into Q groups of near-equal sizes (sizes differ by at most one).

    Args:
        h (Hamiltonian): the Hamiltonian with n terms
        Q (int): number of groups, 1 <= Q <= n
        seed (int, optional): seed of the shuffled mode. Defaults to 0.
        shuffle (bool, optional): if False, groups are contiguous in file order. Otherwise the order is shuffled first. Defaults to False.

    Raises:
        InvalidRangeArgumentError: if Q is not in [1, n]

    Returns:
        Partition
    """
    n = len(h)
    if not 1 <= Q <= n:
        raise InvalidRangeArgumentError("Q", Q, f"in [1, {n}]")
    order = np.arange(n)
    if shuffle:
        order = derive_rng(seed, STREAM_PARTITION).permutation(n)
    return Partition(tuple(tuple(sorted(s)) for s in near_equal_split(order, Q)), n)

def exact_ground_energy(h : Hamiltonian, method : str = "eigh") -> float:
    """
    Smallest eigenvalue of the Hamiltonian by exact diagonalization of its dense matrix.

    Args:
        h (Hamiltonian): the Hamiltonian. At most config.MAX_DENSE_QUBITS qubits.
        method (str, optional): "eigh" for scipy's dense Hermitian solver, "inverse_power" for the iterative cross-check. Defaults to "eigh".

    Raises:
        InvalidRangeArgumentError: if the dimension is too large

    Returns:
        float: the ground state energy
    """
    if h.n_qubits > config.MAX_DENSE_QUBITS:
        raise InvalidRangeArgumentError("n_qubits", h.n_qubits, f"<= {config.MAX_DENSE_QUBITS}")
    if method == "eigh":
        return float(scipy.linalg.eigh(h.to_dense(), eigvals_only=True, subset_by_index=[0,0])[0])
    if method == "inverse_power":
        from ..optimize.eigensolve import ground_state_inverse_power
        energy, _ = ground_state_inverse_power(h.to_sparse(), shift=-h.one_norm() - 1.)
        return energy
    raise InvalidArgumentValueError("method", method, ["eigh", "inverse_power"])
