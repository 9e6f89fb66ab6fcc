"""Deciding whether two Hermitian matrices commute, four ways.

For Hermitian ``A`` and ``B`` the following are equivalent, and each gives an
independent decision procedure:

* ``AB == BA`` (direct commutator test);
* ``AB`` is Hermitian, because ``(AB)^dagger = BA``;
* ``Tr((AB)^2) == Tr(A^2 B^2)``, because with ``C = [A, B]`` one has
  ``||C||_F^2 = Tr(C C^dagger) = 2 (Tr(A^2 B^2) - Tr((AB)^2))``;
* a single unitary diagonalises both.

Weakest preconditions are always Hermitian, so :func:`wp_commutes` runs all
four on ``wp(E)(M)`` and ``wp(E)(N)`` and reports whether they agree.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel, wp_matrix
from .errors import DimensionMismatch, NotCommuting, NotHermitian, VerificationFailed
from .linalg import DEFAULT_TOL, as_matrix, frobenius_norm, hermitian_eig, is_hermitian
from .predicates import QuantumPredicate

# eigenvalue clustering for the simultaneous diagonaliser
CLUSTER_ABS_GAP = 1e-8
CLUSTER_REL_GAP = 1e-6
CLUSTER_RETRY_FACTOR = 100.0


def _hermitian_pair(A, B, tol: float) -> tuple[np.ndarray, np.ndarray]:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"{A.shape} vs {B.shape}")
    if not is_hermitian(A, tol) or not is_hermitian(B, tol):
        raise NotHermitian("commutativity tests take Hermitian matrices")
    return A, B


def commutator(A, B) -> np.ndarray:
    """``[A, B] = AB - BA``."""
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"{A.shape} vs {B.shape}")
    return A @ B - B @ A


def _direct(A: np.ndarray, B: np.ndarray, tol: float) -> tuple[bool, float]:
    norm = frobenius_norm(A @ B - B @ A)
    bound = tol * max(1.0, frobenius_norm(A) * frobenius_norm(B))
    return bool(norm <= bound), norm


def _trace_gap(A: np.ndarray, B: np.ndarray, tol: float) -> tuple[bool, float]:
    AB = A @ B
    lhs = np.trace(AB @ AB)
    rhs = np.trace(A @ A @ B @ B)
    scale = max(1.0, frobenius_norm(A) ** 2 * frobenius_norm(B) ** 2)
    # both traces are real for Hermitian A, B
    if abs(lhs.imag) > tol * scale or abs(rhs.imag) > tol * scale:
        raise ArithmeticError(
            f"trace identity produced imaginary residue {lhs.imag:.3g}, {rhs.imag:.3g}"
        )
    gap = abs(lhs.real - rhs.real)
    return bool(gap <= tol * scale), float(gap)


def check_direct(A, B, tol: float = DEFAULT_TOL) -> bool:
    """``||AB - BA||_F <= tol * max(1, ||A||_F ||B||_F)``."""
    A, B = _hermitian_pair(A, B, tol)
    return _direct(A, B, tol)[0]


def check_hermitian_product(A, B, tol: float = DEFAULT_TOL) -> bool:
    """Commute iff the product ``AB`` is Hermitian."""
    A, B = _hermitian_pair(A, B, tol)
    return is_hermitian(A @ B, tol)


def check_trace_identity(A, B, tol: float = DEFAULT_TOL) -> bool:
    """Commute iff ``Tr((AB)^2) == Tr(A^2 B^2)`` up to ``tol * max(1, ||A||^2 ||B||^2)``."""
    A, B = _hermitian_pair(A, B, tol)
    return _trace_gap(A, B, tol)[0]


@dataclass(frozen=True, eq=False)
class SimDiagWitness:
    """Unitary ``U`` with ``U^dagger A U = diag(lam)`` and ``U^dagger B U = diag(mu)``."""

    unitary: np.ndarray
    lam: np.ndarray
    mu: np.ndarray


def _offdiag(X: np.ndarray) -> float:
    return frobenius_norm(X - np.diag(np.diag(X)))


def _clusters(values: np.ndarray, gap: float) -> list[slice]:
    cuts = [0]
    cuts += [i + 1 for i in range(len(values) - 1) if values[i + 1] - values[i] > gap]
    cuts.append(len(values))
    return [slice(a, b) for a, b in zip(cuts[:-1], cuts[1:])]


def _build_unitary(A: np.ndarray, B: np.ndarray, gap: float, tol: float) -> np.ndarray:
    dec = hermitian_eig(A, tol)
    V = dec.unitary
    blocks = []
    for sl in _clusters(dec.eigenvalues, gap):
        Vk = V[:, sl]
        Bk = Vk.conj().T @ B @ Vk
        Bk = 0.5 * (Bk + Bk.conj().T)
        blocks.append(Vk @ hermitian_eig(Bk, tol).unitary)
    return np.hstack(blocks)


def _verify(U: np.ndarray, A: np.ndarray, B: np.ndarray, tol: float) -> bool:
    n = U.shape[0]
    if frobenius_norm(U.conj().T @ U - np.eye(n)) > tol * max(1.0, np.sqrt(n)):
        return False
    DA = U.conj().T @ A @ U
    DB = U.conj().T @ B @ U
    return (
        _offdiag(DA) <= tol * max(1.0, frobenius_norm(A))
        and _offdiag(DB) <= tol * max(1.0, frobenius_norm(B))
    )


def simultaneous_diagonalize(A, B, tol: float = DEFAULT_TOL) -> SimDiagWitness:
    """Find one unitary diagonalising two commuting Hermitian matrices.

    ``A`` is eigendecomposed and its eigenvectors grouped into eigenspaces;
    commuting ``B`` maps each eigenspace of ``A`` to itself, so ``B``
    compressed to an eigenspace is Hermitian and its eigenvectors, lifted back,
    are eigenvectors of both matrices.

    Eigenvalues of ``A`` belong to the same eigenspace when consecutive sorted
    values differ by at most ``max(1e-8, 1e-6 * spread)``. If the assembled
    unitary does not diagonalise both matrices to within ``tol`` (split
    near-degenerate eigenvalues), the grouping is retried once with a gap
    100 times wider.

    Raises
    ------
    NotCommuting
        If :func:`check_direct` rejects the pair.
    VerificationFailed
        If neither grouping yields a diagonalising unitary.
    """
    A, B = _hermitian_pair(A, B, tol)
    if not _direct(A, B, tol)[0]:
        raise NotCommuting("simultaneous diagonalisation needs commuting matrices")
    evals = hermitian_eig(A, tol).eigenvalues
    gap = max(CLUSTER_ABS_GAP, CLUSTER_REL_GAP * (evals[-1] - evals[0]))
    for attempt_gap in (gap, gap * CLUSTER_RETRY_FACTOR):
        U = _build_unitary(A, B, attempt_gap, tol)
        if _verify(U, A, B, tol):
            lam = np.diag(U.conj().T @ A @ U).real.copy()
            mu = np.diag(U.conj().T @ B @ U).real.copy()
            return SimDiagWitness(U, lam, mu)
    raise VerificationFailed("eigenvalue clustering did not produce a common eigenbasis")


@dataclass(frozen=True, eq=False)
class CommutativityReport:
    """Verdicts of the four procedures plus the numbers behind them.

    ``commutator_norm`` is ``||AB - BA||_F``; ``trace_gap`` is
    ``|Tr(A^2 B^2) - Tr((AB)^2)|``; ``witness`` is present only when the
    simultaneous diagonalisation succeeded.
    """

    direct: bool
    hermitian_product: bool
    trace_identity: bool
    simultaneous_diag: bool
    commutator_norm: float
    trace_gap: float
    witness: SimDiagWitness | None = None
    tol: float = DEFAULT_TOL
    failure: str | None = None

    @property
    def verdicts(self) -> dict[str, bool]:
        return {
            "direct": self.direct,
            "hermitian_product": self.hermitian_product,
            "trace_identity": self.trace_identity,
            "simultaneous_diag": self.simultaneous_diag,
        }

    @property
    def agree(self) -> bool:
        return len(set(self.verdicts.values())) == 1

    @property
    def commutes(self) -> bool:
        return self.direct


def check_all(A, B, tol: float = DEFAULT_TOL) -> CommutativityReport:
    """Run all four procedures on a Hermitian pair.

    The diagonaliser only runs when the direct test says the pair commutes;
    otherwise its slot reports "does not commute" without a witness.
    """
    A, B = _hermitian_pair(A, B, tol)
    direct, cnorm = _direct(A, B, tol)
    herm = is_hermitian(A @ B, tol)
    trace_ok, gap = _trace_gap(A, B, tol)
    witness, failure = None, None
    if direct:
        try:
            witness = simultaneous_diagonalize(A, B, tol)
        except VerificationFailed as exc:
            failure = str(exc)
    return CommutativityReport(
        direct=direct,
        hermitian_product=herm,
        trace_identity=trace_ok,
        simultaneous_diag=witness is not None,
        commutator_norm=cnorm,
        trace_gap=gap,
        witness=witness,
        tol=tol,
        failure=failure,
    )


def wp_commutes(
    M: QuantumPredicate, N: QuantumPredicate, channel: KrausChannel, tol: float = DEFAULT_TOL
) -> CommutativityReport:
    """Commutativity report for ``wp(channel)(M)`` and ``wp(channel)(N)``.

    ``M`` and ``N`` themselves need not commute, and commuting ``M, N`` do not
    guarantee commuting preconditions.
    """
    if M.dim != N.dim:
        raise DimensionMismatch("predicates have different dimensions")
    return check_all(wp_matrix(channel, M.matrix), wp_matrix(channel, N.matrix), tol)
