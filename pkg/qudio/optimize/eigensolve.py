import scipy.sparse as sp
import scipy.sparse.linalg
import numpy as np

def inverse_power_method(A : sp.csc_matrix, shift : float = 0., rng : np.random.Generator = None, maxiter:int = 2000, tol:float=1e-12) -> tuple:
    """
    Implementation of the inverse power method (or inverse iteration) scheme to find an eigenvector associated with the eigenvalue of A closest to `shift`.
    A is assumed to be Hermitian.

    Args:
        A (sp.csc_matrix): the matrix
        shift (float, optional): spectral shift σ. The iteration runs on (A - σI)^-1. Defaults to 0.
        rng (np.random.Generator, optional): random stream of the starting vector. Defaults to a fixed seed.
        maxiter (int, optional): maximal number of internal iteration. Defaults to 2000.
        tol (float, optional): early stopping criterion on the Rayleigh quotient. Will stop the iteration if |λ_{n+1} - λ_n| < tol. Defaults to 1e-12.

    Returns:
        (float, np.ndarray): the eigenvalue (Rayleigh quotient) and a unit eigenvector
    """
    n = A.shape[0]
    rng = np.random.default_rng(0) if rng is None else rng
    M = sp.csc_matrix(A - shift * sp.eye(n, format="csc"), dtype=complex)
    solve = sp.linalg.factorized(M)
    x = np.sqrt(rng.uniform(0, 1, n)) * np.exp(1.j * rng.uniform(0, 2 * np.pi, n)) # values in unit disk in complex plane
    x /= np.linalg.norm(x)

    eigval = np.vdot(x, A@x).real
    it = 0
    stop_criterion = False
    while not stop_criterion:
        x = solve(x)
        x /= np.linalg.norm(x)
        new_eigval = np.vdot(x, A@x).real
        it += 1
        stop_criterion = (it>=maxiter or abs(new_eigval - eigval)<tol)
        eigval = new_eigval
    return float(eigval), x

def ground_state_inverse_power(A : sp.csc_matrix, shift : float, **kwargs) -> tuple:
    """
    Smallest eigenvalue of a Hermitian matrix by inverse iteration. `shift` should lie below the spectrum,
    for instance minus the 1-norm of the Pauli coefficients of a Hamiltonian.
    """
    return inverse_power_method(A, shift=shift, **kwargs)
