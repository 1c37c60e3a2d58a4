"""
h2.py

Qubit Hamiltonian of the H2 molecule in the minimal STO-3G basis, used to provision the data files of the bond distance sweep.
Integrals over the two 1s orbitals are evaluated in closed form; the two molecular orbitals are fixed by symmetry
(bonding σg and antibonding σu), so no self-consistent field iteration is needed.

Qubits are spin orbitals: q0 = σg up, q1 = σg down, q2 = σu up, q3 = σu down.
The resulting 15 terms are written to disk and always read back through `parse_hamiltonian`.
The package ships the files of config.VQE_BOND_DISTANCES in config.H2_DATA_DIR, which the VQE reads by default.
"""

import os
import numpy as np
from scipy.special import erf

from .hamiltonian import Hamiltonian
from .pauli import PauliString
from .io import save_hamiltonian, hamiltonian_path
from .. import config
from ..utils.argument_check import check_range

ANGSTROM_TO_BOHR = 1.8897261246

# STO-3G contraction of the hydrogen 1s orbital (Slater exponent 1.24)
STO3G_ZETA = 1.24
STO3G_EXPONENTS = np.array([0.109818, 0.405771, 2.22766]) * STO3G_ZETA**2
STO3G_COEFFS = np.array([0.444635, 0.535328, 0.154329])

def _boys0(t : float) -> float:
    if t < 1e-12:
        return 1. - t/3.
    return 0.5 * np.sqrt(np.pi / t) * erf(np.sqrt(t))

def _primitive_norm(a : float) -> float:
    return (2. * a / np.pi) ** 0.75

class _Basis:
    """Two contracted 1s functions centered on the z axis at positions `centers` (bohr)"""

    def __init__(self, centers):
        self.centers = np.asarray(centers, dtype=float)
        self.alpha = STO3G_EXPONENTS
        self.coeffs = STO3G_COEFFS * _primitive_norm(STO3G_EXPONENTS)

    def primitives(self, mu : int):
        for a,c in zip(self.alpha, self.coeffs):
            yield a, c, self.centers[mu]

    def overlap(self, mu, nu) -> float:
        s = 0.
        for a,ca,A in self.primitives(mu):
            for b,cb,B in self.primitives(nu):
                p = a+b
                s += ca*cb * (np.pi/p)**1.5 * np.exp(-a*b/p * (A-B)**2)
        return s

    def kinetic(self, mu, nu) -> float:
        s = 0.
        for a,ca,A in self.primitives(mu):
            for b,cb,B in self.primitives(nu):
                p = a+b
                r2 = (A-B)**2
                s += ca*cb * a*b/p * (3. - 2.*a*b/p * r2) * (np.pi/p)**1.5 * np.exp(-a*b/p * r2)
        return s

    def nuclear(self, mu, nu, C : float, charge : float = 1.) -> float:
        s = 0.
        for a,ca,A in self.primitives(mu):
            for b,cb,B in self.primitives(nu):
                p = a+b
                P = (a*A + b*B)/p
                s += ca*cb * (-2.*np.pi/p) * charge * np.exp(-a*b/p * (A-B)**2) * _boys0(p * (P-C)**2)
        return s

    def repulsion(self, mu, nu, la, si) -> float:
        """two-electron integral (μν|λσ) in chemists' notation"""
        s = 0.
        for a,ca,A in self.primitives(mu):
            for b,cb,B in self.primitives(nu):
                p = a+b
                P = (a*A + b*B)/p
                Kab = np.exp(-a*b/p * (A-B)**2)
                for c,cc,C in self.primitives(la):
                    for d,cd,D in self.primitives(si):
                        q = c+d
                        Qc = (c*C + d*D)/q
                        Kcd = np.exp(-c*d/q * (C-D)**2)
                        pref = 2. * np.pi**2.5 / (p*q*np.sqrt(p+q))
                        s += ca*cb*cc*cd * pref * Kab * Kcd * _boys0(p*q/(p+q) * (P-Qc)**2)
        return s

def molecular_integrals(distance : float) -> dict:
    """
    One and two-electron integrals of H2 over the σg, σu molecular orbitals

    Args:
        distance (float): bond distance in Angstrom

    Returns:
        dict: keys h11, h22 (core Hamiltonian), J11, J22, J12 (Coulomb), K12 (exchange) and e_nuc, all in Hartree
    """
    R = distance * ANGSTROM_TO_BOHR
    basis = _Basis([0., R])
    S = np.array([[basis.overlap(i,j) for j in range(2)] for i in range(2)])
    T = np.array([[basis.kinetic(i,j) for j in range(2)] for i in range(2)])
    V = np.array([[basis.nuclear(i,j,0.) + basis.nuclear(i,j,R) for j in range(2)] for i in range(2)])
    eri = np.zeros((2,2,2,2))
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    eri[i,j,k,l] = basis.repulsion(i,j,k,l)

    s12 = S[0,1]
    C = np.array([
        [1./np.sqrt(2*(1+s12)),  1./np.sqrt(2*(1-s12))],
        [1./np.sqrt(2*(1+s12)), -1./np.sqrt(2*(1-s12))]
    ])
    h = C.T @ (T+V) @ C
    g = np.einsum("pi,qj,rk,sl,pqrs->ijkl", C, C, C, C, eri)
    return {
        "h11" : h[0,0], "h22" : h[1,1],
        "J11" : g[0,0,0,0], "J22" : g[1,1,1,1],
        "J12" : g[0,0,1,1], "K12" : g[0,1,0,1],
        "e_nuc" : 1./R
    }

def h2_hamiltonian(distance : float) -> Hamiltonian:
    """
    The 15-term, 4-qubit Hamiltonian of H2 at a given bond distance (Jordan-Wigner mapping of the two spatial orbitals)

    Args:
        distance (float): bond distance in Angstrom, > 0

    Returns:
        Hamiltonian: terms ordered IIII, single Z, ZZ pairs, then the four exchange terms
    """
    check_range("distance", distance, low=0., low_open=True)
    I = molecular_integrals(distance)
    h11, h22 = I["h11"], I["h22"]
    J11, J22, J12, K12 = I["J11"], I["J22"], I["J12"], I["K12"]
    g0 = I["e_nuc"] + h11 + h22 + (J11 + J22 + 4*J12 - 2*K12)/4
    g1 = -h11/2 - (J11 + 2*J12 - K12)/4
    g2 = -h22/2 - (J22 + 2*J12 - K12)/4
    terms = [
        (g0, "IIII"),
        (g1, "ZIII"),
        (g1, "IZII"),
        (g2, "IIZI"),
        (g2, "IIIZ"),
        (J11/4, "ZZII"),
        ((J12-K12)/4, "ZIZI"),
        (J12/4, "ZIIZ"),
        (J12/4, "IZZI"),
        ((J12-K12)/4, "IZIZ"),
        (J22/4, "IIZZ"),
        (-K12/4, "XXYY"),
        (K12/4, "XYYX"),
        (K12/4, "YXXY"),
        (-K12/4, "YYXX"),
    ]
    return Hamiltonian(tuple((float(a), PauliString.from_string(w)) for a,w in terms))

def write_h2_hamiltonians(directory : str, distances = config.VQE_BOND_DISTANCES) -> list:
    """
    Writes one Hamiltonian file per bond distance, named `h2_<d>A.txt`

    Args:
        directory (str): output directory. Created if needed.
        distances (iterable of float, optional): bond distances in Angstrom. Defaults to config.VQE_BOND_DISTANCES.

    Returns:
        list: paths of the written files
    """
    os.makedirs(directory, exist_ok=True)
    paths = []
    for d in distances:
        path = hamiltonian_path(directory, d)
        save_hamiltonian(h2_hamiltonian(d), path, header=f"H2 STO-3G, bond distance {d:.2f} A, Hartree\nqubits: sg-up sg-down su-up su-down")
        paths.append(path)
    return paths
