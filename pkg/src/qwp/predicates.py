"""Quantum predicates, density operators, and seeded random generators."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ExceedsIdentity, NotHermitian, NotPositive, TraceTooLarge
from .linalg import (
    DEFAULT_TOL,
    as_matrix,
    hermitian_eig,
    identity,
    is_hermitian,
    is_psd,
)

STRICT = "strict"
OBSERVABLE = "observable"
MODES = (STRICT, OBSERVABLE)


def _frozen(M: np.ndarray) -> np.ndarray:
    M.setflags(write=False)
    return M


@dataclass(frozen=True, eq=False)
class QuantumPredicate:
    """A Hermitian matrix, additionally ``0 <= M <= I`` in strict mode.

    Observable mode only promises Hermiticity. It exists because some
    published instances (e.g. the ``N`` of :func:`qwp.examples.example1`) are
    Hermitian but not positive, while the commutativity theory needs nothing
    beyond Hermiticity.

    Build instances with :func:`validate_predicate`; the constructor itself
    does not check anything.
    """

    matrix: np.ndarray
    mode: str = STRICT

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Positive semidefinite matrix with trace at most one (subnormalised states allowed)."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def validate_predicate(M, mode: str = STRICT, tol: float = DEFAULT_TOL) -> QuantumPredicate:
    """Wrap ``M`` as a predicate after checking, in order: Hermitian, positive, below identity.

    Raises the error for the first violated invariant. Only the Hermiticity
    check is performed in observable mode.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    M = as_matrix(M)
    if not is_hermitian(M, tol):
        raise NotHermitian("predicate is not Hermitian")
    if mode == STRICT:
        if not is_psd(M, tol):
            raise NotPositive("predicate has a negative eigenvalue")
        if not is_psd(identity(M.shape[0]) - M, tol):
            raise ExceedsIdentity("predicate has an eigenvalue above 1")
    return QuantumPredicate(_frozen(M), mode)


def validate_density(R, tol: float = DEFAULT_TOL) -> DensityMatrix:
    R = as_matrix(R)
    if not is_hermitian(R, tol):
        raise NotHermitian("density is not Hermitian")
    if not is_psd(R, tol):
        raise NotPositive("density has a negative eigenvalue")
    if np.trace(R).real > 1.0 + tol:
        raise TraceTooLarge(f"density trace {np.trace(R).real:.17g} exceeds 1")
    return DensityMatrix(_frozen(R))


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Hermitian matrix ``G + G^dagger`` from complex Gaussian ``G``."""
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return G + G.conj().T


def random_predicate(dim: int, seed: int) -> QuantumPredicate:
    """Deterministic random strict predicate.

    A random Hermitian matrix is eigendecomposed and its spectrum is mapped
    affinely onto a random sub-interval ``[lo, hi]`` of ``[0, 1]``.
    """
    if dim < 1:
        raise ValueError("dim must be positive")
    rng = np.random.default_rng(seed)
    lo, hi = np.sort(rng.uniform(0.0, 1.0, size=2))
    dec = hermitian_eig(random_hermitian(dim, rng))
    lam = dec.eigenvalues
    spread = lam[-1] - lam[0]
    if spread > 0:
        mapped = lo + (hi - lo) * (lam - lam[0]) / spread
    else:
        mapped = np.full(dim, lo)
    U = dec.unitary
    M = (U * mapped) @ U.conj().T
    M = 0.5 * (M + M.conj().T)
    return validate_predicate(M, STRICT)


def random_density(dim: int, seed: int) -> DensityMatrix:
    """Deterministic random density ``G G^dagger / Tr(G G^dagger)``."""
    if dim < 1:
        raise ValueError("dim must be positive")
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    R = G @ G.conj().T
    R = R / np.trace(R).real
    return validate_density(0.5 * (R + R.conj().T))

