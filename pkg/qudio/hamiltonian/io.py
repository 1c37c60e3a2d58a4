import math
import os

from .pauli import PauliString
from .hamiltonian import Hamiltonian

PAULI_LETTERS = set("IXYZixyz")

class HamiltonianParseError(Exception):
    def __init__(self, reason : str, line_number : int = None):
        self.line_number = line_number
        where = "" if line_number is None else f" (line {line_number})"
        super().__init__(f"Could not parse Hamiltonian{where}: {reason}")

def parse_hamiltonian(text : str) -> Hamiltonian:
    """
    Parses a Hamiltonian from its text form: one `<coefficient> <pauli-word>` pair per line, terms in file order.
    Everything after a '#' is a comment. Blank lines are ignored.

    Args:
        text (str): content of the file

    Raises:
        HamiltonianParseError: on a malformed line, words of different lengths, or if no term is found

    Returns:
        Hamiltonian
    """
    terms = []
    n_qubits = None
    for line_number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#")[0].strip()
        if not line: continue
        tokens = line.split()
        if len(tokens) != 2:
            raise HamiltonianParseError(f"expected '<coefficient> <pauli-word>', got '{line}'", line_number)
        try:
            coeff = float(tokens[0])
        except ValueError:
            raise HamiltonianParseError(f"invalid coefficient '{tokens[0]}'", line_number)
        if not math.isfinite(coeff):
            raise HamiltonianParseError(f"non finite coefficient '{tokens[0]}'", line_number)
        word = tokens[1]
        if not set(word) <= PAULI_LETTERS:
            raise HamiltonianParseError(f"invalid Pauli word '{word}'", line_number)
        if n_qubits is None:
            n_qubits = len(word)
        elif len(word) != n_qubits:
            raise HamiltonianParseError(f"word '{word}' has length {len(word)}, previous words have length {n_qubits}", line_number)
        terms.append((coeff, PauliString.from_string(word)))
    if not terms:
        raise HamiltonianParseError("no term found")
    return Hamiltonian(tuple(terms))

def load_hamiltonian(filepath : str) -> Hamiltonian:
    """Imports a Hamiltonian from a text file on the disk

    Parameters:
        filepath (str): path to the file

    Returns:
        Hamiltonian: parsed file
    """
    with open(filepath, "r") as f:
        return parse_hamiltonian(f.read())

def save_hamiltonian(h : Hamiltonian, filepath : str, header : str = None) -> None:
    """Exports a Hamiltonian to a text file readable by `load_hamiltonian`

    Parameters:
        h (Hamiltonian): the object to be exported
        filepath (str): path to the file
        header (str, optional): comment written on top of the file. Defaults to None.
    """
    with open(filepath, "w") as f:
        if header is not None:
            for line in header.splitlines():
                f.write(f"# {line}\n")
        for a,p in h.terms:
            f.write(f"{a:+.15f} {p}\n")

def hamiltonian_filename(distance : float) -> str:
    """File name of the H2 Hamiltonian at a given bond distance in Angstrom, e.g. h2_0.70A.txt"""
    return f"h2_{distance:.2f}A.txt"

def hamiltonian_path(directory : str, distance : float) -> str:
    return os.path.join(directory, hamiltonian_filename(distance))
