"""System-environment presentation of quantum programs.

A program is given by a unitary ``U`` and a projector ``P`` on the composite
space ``H_sys (x) H_env`` together with a fixed environment state ``e0``::

    E(rho)   = tr_env[ P U (rho (x) |e0><e0|) U^dagger P ]
    wp(E)(M) = <e0| U^dagger P (M (x) I_env) P U |e0>

Composite indices are system-major: ``(i, a) -> i * env_dim + a``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel, validate_channel
from .errors import DimensionMismatch, InvalidModel
from .linalg import DEFAULT_TOL, as_matrix, frobenius_norm, identity, tensor
from .predicates import (
    DensityMatrix,
    QuantumPredicate,
    validate_density,
    validate_predicate,
)

# Kraus operators at or below this Frobenius norm are dropped by extract_kraus.
PRUNE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SystemEnvironmentModel:
    sys_dim: int
    env_dim: int
    U: np.ndarray
    P: np.ndarray
    e0: np.ndarray

    @property
    def dim(self) -> int:
        return self.sys_dim * self.env_dim


def make_model(U, P, e0, sys_dim: int, env_dim: int, tol: float = DEFAULT_TOL) -> SystemEnvironmentModel:
    """Validate and freeze a system-environment model.

    Raises :class:`InvalidModel` unless ``U`` is unitary, ``P`` is an
    orthogonal projector and ``e0`` is a unit vector, all at relative ``tol``.
    """
    if sys_dim < 1 or env_dim < 1:
        raise InvalidModel("dimensions must be positive")
    n = sys_dim * env_dim
    try:
        U, P = as_matrix(U), as_matrix(P)
    except (ValueError, DimensionMismatch) as exc:
        raise InvalidModel(str(exc)) from exc
    e0 = np.array(e0, dtype=np.complex128).reshape(-1)
    if U.shape != (n, n) or P.shape != (n, n) or e0.shape != (env_dim,):
        raise InvalidModel("U, P or e0 does not match sys_dim * env_dim")
    if not np.all(np.isfinite(e0)):
        raise InvalidModel("e0 has non-finite entries")
    I = identity(n)
    if frobenius_norm(U.conj().T @ U - I) > tol * max(1.0, frobenius_norm(U)):
        raise InvalidModel("U is not unitary")
    scale = max(1.0, frobenius_norm(P))
    if frobenius_norm(P - P.conj().T) > tol * scale or frobenius_norm(P @ P - P) > tol * scale:
        raise InvalidModel("P is not an orthogonal projector")
    if abs(np.linalg.norm(e0) - 1.0) > tol:
        raise InvalidModel("e0 is not a unit vector")
    for arr in (U, P, e0):
        arr.setflags(write=False)
    return SystemEnvironmentModel(sys_dim, env_dim, U, P, e0)


def partial_trace_env(X, sys_dim: int, env_dim: int) -> np.ndarray:
    """Trace out the environment factor: ``out[i, j] = sum_a X[(i,a), (j,a)]``."""
    X = as_matrix(X)
    if X.shape[0] != sys_dim * env_dim:
        raise DimensionMismatch(f"dim {X.shape[0]} != {sys_dim} * {env_dim}")
    return np.einsum("iaja->ij", X.reshape(sys_dim, env_dim, sys_dim, env_dim))


def env_contract(X, e0, sys_dim: int, env_dim: int) -> np.ndarray:
    """``(I (x) <e0|) X (I (x) |e0>)``, a ``sys_dim`` square matrix."""
    X = as_matrix(X)
    e0 = np.asarray(e0, dtype=np.complex128).reshape(-1)
    if X.shape[0] != sys_dim * env_dim or e0.shape != (env_dim,):
        raise DimensionMismatch("operand does not match sys_dim * env_dim")
    X4 = X.reshape(sys_dim, env_dim, sys_dim, env_dim)
    return np.einsum("a,iajb,b->ij", e0.conj(), X4, e0)


def _check_sys(model: SystemEnvironmentModel, dim: int) -> None:
    if dim != model.sys_dim:
        raise DimensionMismatch(f"model has sys_dim {model.sys_dim}, operand has dim {dim}")


def se_wp_matrix(model: SystemEnvironmentModel, M) -> np.ndarray:
    M = as_matrix(M)
    _check_sys(model, M.shape[0])
    U, P = model.U, model.P
    X = U.conj().T @ P @ tensor(M, identity(model.env_dim)) @ P @ U
    return env_contract(X, model.e0, model.sys_dim, model.env_dim)


def se_wp(model: SystemEnvironmentModel, M: QuantumPredicate, tol: float = DEFAULT_TOL) -> QuantumPredicate:
    """Weakest precondition computed directly from the dilation."""
    return validate_predicate(se_wp_matrix(model, M.matrix), M.mode, tol)


def se_apply_matrix(model: SystemEnvironmentModel, rho) -> np.ndarray:
    rho = as_matrix(rho)
    _check_sys(model, rho.shape[0])
    U, P, e0 = model.U, model.P, model.e0
    X = P @ U @ tensor(rho, np.outer(e0, e0.conj())) @ U.conj().T @ P
    return partial_trace_env(X, model.sys_dim, model.env_dim)


def se_apply(model: SystemEnvironmentModel, rho: DensityMatrix, tol: float = DEFAULT_TOL) -> DensityMatrix:
    return validate_density(se_apply_matrix(model, rho.matrix), tol)


def extract_kraus(model: SystemEnvironmentModel, tol: float = DEFAULT_TOL) -> KrausChannel:
    """Kraus form of the model in the ``sum_i E_i M E_i^dagger`` orientation.

    The dilation gives ``K_a = (I (x) <a|) P U (I (x) |e0>)`` with
    ``E(rho) = sum_a K_a rho K_a^dagger``; the returned operators are
    ``E_a = K_a^dagger``. Operators with norm ``<= 1e-12`` are pruned, but at
    least one (possibly zero) operator is always kept.
    """
    s, k = model.sys_dim, model.env_dim
    PU = (model.P @ model.U).reshape(s, k, s, k)
    # K[a] = sum_b PU[(i,a),(j,b)] e0[b]
    K = np.einsum("iajb,b->aij", PU, model.e0)
    ops = [Ka.conj().T for Ka in K]
    kept = [E for E in ops if frobenius_norm(E) > PRUNE_TOL]
    return validate_channel(kept or ops[:1], tol)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian matrix with phase fix."""
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_model(sys_dim: int, env_dim: int, seed: int) -> SystemEnvironmentModel:
    """Seeded random model: Haar unitary, random-rank projector, random ``e0``.

    The projector rank is drawn from ``1..n`` so both trace-preserving
    (``P = I``) and trace-decreasing programs occur.
    """
    rng = np.random.default_rng(seed)
    n = sys_dim * env_dim
    U = random_unitary(n, rng)
    rank = int(rng.integers(1, n + 1))
    Q = random_unitary(n, rng)[:, :rank]
    P = Q @ Q.conj().T
    P = 0.5 * (P + P.conj().T)
    e0 = rng.standard_normal(env_dim) + 1j * rng.standard_normal(env_dim)
    e0 /= np.linalg.norm(e0)
    return make_model(U, P, e0, sys_dim, env_dim)

