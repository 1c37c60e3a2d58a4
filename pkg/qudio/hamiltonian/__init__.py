from .pauli import Pauli, PauliString, EigStructure, eig_structure
from .hamiltonian import Hamiltonian, Partition, partition_terms, exact_ground_energy
from .measure import expectation_pauli_sum, sample_pauli_expectation, pauli_expectations
from .io import HamiltonianParseError, parse_hamiltonian, load_hamiltonian, save_hamiltonian, hamiltonian_filename, hamiltonian_path
from .h2 import h2_hamiltonian, write_h2_hamiltonians, molecular_integrals
