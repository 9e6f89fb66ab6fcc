"""Dense complex matrix helpers and a Jacobi eigensolver for Hermitian matrices.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Everything here is
a pure function; inputs are never modified in place.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian

DEFAULT_TOL = 1e-9

# Jacobi stopping rule: off-diagonal Frobenius mass relative to ||A||_F.
JACOBI_REL_TOL = 1e-13
JACOBI_MAX_SWEEPS = 40
_TINY = 1e-290


def as_matrix(A) -> np.ndarray:
    """Coerce ``A`` to a square, finite ``complex128`` array.

    A fresh array is always returned so callers may keep a reference without
    worrying about later mutation of the input.
    """
    M = np.array(A, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix entries must be finite")
    return M


def _same_dim(A: np.ndarray, B: np.ndarray) -> None:
    if A.shape != B.shape:
        raise DimensionMismatch(f"{A.shape} vs {B.shape}")


def adjoint(A) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(A).conj().T.copy()


def matmul(A, B) -> np.ndarray:
    A, B = as_matrix(A), as_matrix(B)
    _same_dim(A, B)
    return A @ B


def trace(A) -> complex:
    return complex(np.trace(as_matrix(A)))


def frobenius_norm(A) -> float:
    """``sqrt(Tr(A A^dagger))``; zero exactly when ``A`` is the zero matrix."""
    mag = np.abs(as_matrix(A))
    top = mag.max()
    if top == 0.0:
        return 0.0
    # scale first so tiny entries do not underflow when squared
    return float(top * np.sqrt(np.sum((mag / top) ** 2)))


def _scale(A: np.ndarray) -> float:
    return max(1.0, frobenius_norm(A))


def is_hermitian(A, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``||A - A^dagger||_F <= tol * max(1, ||A||_F)``."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    A = as_matrix(A)
    return bool(frobenius_norm(A - A.conj().T) <= tol * _scale(A))


def tensor(A, B) -> np.ndarray:
    """Kronecker product; block ``(i, j)`` of the result is ``A[i, j] * B``."""
    return np.kron(as_matrix(A), as_matrix(B))


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


class EigenDecomposition(NamedTuple):
    """Eigenvalues in nondecreasing order and a unitary whose columns are the
    matching eigenvectors, so that ``A = U @ diag(eigenvalues) @ U^dagger``."""

    eigenvalues: np.ndarray
    unitary: np.ndarray

    def reconstruct(self) -> np.ndarray:
        U = self.unitary
        return (U * self.eigenvalues) @ U.conj().T


def _offdiag_norm(A: np.ndarray) -> float:
    off = A[~np.eye(A.shape[0], dtype=bool)]
    return float(np.sqrt(np.sum(off.real**2 + off.imag**2)))


def _jacobi_rotate(A: np.ndarray, V: np.ndarray, p: int, q: int) -> None:
    """Annihilate ``A[p, q]`` in place with a unitary rotation in the (p, q) plane.

    The phase of ``A[p, q]`` is first absorbed into column ``q`` so the pivot
    block becomes real symmetric, then a real Jacobi rotation is applied
    (Numerical Recipes parametrisation, smaller rotation angle).
    """
    b = A[p, q]
    mag = abs(b)
    if mag < _TINY:
        A[p, q] = A[q, p] = 0.0
        return
    phase = b / mag
    a_pp = A[p, p].real
    a_qq = A[q, q].real
    theta = (a_qq - a_pp) / (2.0 * mag)
    if abs(theta) > 1e100:
        t = 0.5 / theta
    else:
        t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    # J = diag(1, conj(phase)) @ [[c, s], [-s, c]]
    J = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
    idx = [p, q]
    A[:, idx] = A[:, idx] @ J
    A[idx, :] = J.conj().T @ A[idx, :]
    A[p, q] = A[q, p] = 0.0
    A[p, p] = a_pp - t * mag
    A[q, q] = a_qq + t * mag
    V[:, idx] = V[:, idx] @ J


def hermitian_eig(A, tol: float = DEFAULT_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.

    Parameters
    ----------
    A : array_like
        Hermitian matrix (checked with :func:`is_hermitian` at ``tol``).
    tol : float
        Hermiticity tolerance for the input check.

    Returns
    -------
    EigenDecomposition
        Real eigenvalues sorted nondecreasingly (stable sort, so ties keep the
        order in which Jacobi left them) and the unitary of eigenvectors.

    Raises
    ------
    NotHermitian
        If ``A`` fails the Hermiticity check.
    NoConvergence
        If the off-diagonal mass is still above ``1e-13 * ||A||_F`` after
        40 full sweeps.
    """
    A = as_matrix(A)
    if not is_hermitian(A, tol):
        raise NotHermitian("hermitian_eig requires a Hermitian matrix")
    n = A.shape[0]
    # symmetrise away the admitted rounding asymmetry
    W = 0.5 * (A + A.conj().T)
    W[np.diag_indices(n)] = W.diagonal().real
    V = identity(n)
    target = JACOBI_REL_TOL * frobenius_norm(W)

    sweeps = 0
    while _offdiag_norm(W) > target:
        if sweeps == JACOBI_MAX_SWEEPS:
            raise NoConvergence(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_rotate(W, V, p, q)
        sweeps += 1

    evals = W.diagonal().real.copy()
    order = np.argsort(evals, kind="stable")
    return EigenDecomposition(evals[order], V[:, order])


def min_eigenvalue(A, tol: float = DEFAULT_TOL) -> float:
    return float(hermitian_eig(A, tol).eigenvalues[0])


def is_psd(A, tol: float = DEFAULT_TOL) -> bool:
    """True iff the smallest eigenvalue is ``>= -tol * max(1, ||A||_F)``."""
    A = as_matrix(A)
    return bool(min_eigenvalue(A, tol) >= -tol * _scale(A))


def loewner_leq(A, B, tol: float = DEFAULT_TOL) -> bool:
    """Loewner order ``A <= B``, i.e. ``B - A`` positive semidefinite."""
    A, B = as_matrix(A), as_matrix(B)
    _same_dim(A, B)
    if not (is_hermitian(A, tol) and is_hermitian(B, tol)):
        raise NotHermitian("loewner_leq requires Hermitian arguments")
    return is_psd(B - A, tol)
