"""Kraus-form quantum programs and their weakest preconditions.

Orientation convention
----------------------
Weakest preconditions are taken as ``wp(E)(M) = sum_i E_i M E_i^dagger``.
This is the reverse of the textbook Heisenberg-picture convention, so the
rest of the module follows from it:

* state application is ``E(rho) = sum_i E_i^dagger rho E_i``, the unique
  choice making ``Tr(wp(E)(M) rho) == Tr(M E(rho))`` for all ``M, rho``;
* a channel is trace non-increasing iff ``sum_i E_i E_i^dagger <= I``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, EmptyChannel, TraceIncreasing
from .linalg import DEFAULT_TOL, as_matrix, identity, loewner_leq
from .predicates import (
    DensityMatrix,
    QuantumPredicate,
    random_density,
    validate_density,
    validate_predicate,
)


@dataclass(frozen=True, eq=False)
class KrausChannel:
    dim: int
    operators: tuple

    def __len__(self) -> int:
        return len(self.operators)


def validate_channel(ops: Sequence, tol: float = DEFAULT_TOL) -> KrausChannel:
    """Build a :class:`KrausChannel`, checking ``sum_i E_i E_i^dagger <= I``."""
    if isinstance(ops, np.ndarray) and ops.ndim == 2:
        ops = [ops]
    ops = [as_matrix(E) for E in ops]
    if not ops:
        raise EmptyChannel("a channel needs at least one Kraus operator")
    dim = ops[0].shape[0]
    if any(E.shape != (dim, dim) for E in ops):
        raise DimensionMismatch("Kraus operators have different dimensions")
    if not loewner_leq(gram(ops), identity(dim), tol):
        raise TraceIncreasing("sum of E E^dagger exceeds the identity")
    for E in ops:
        E.setflags(write=False)
    return KrausChannel(dim, tuple(ops))


def gram(ops) -> np.ndarray:
    """``sum_i E_i E_i^dagger``; the identity for a trace-preserving channel."""
    return sum(E @ E.conj().T for E in ops)


def _check_dim(channel: KrausChannel, dim: int) -> None:
    if channel.dim != dim:
        raise DimensionMismatch(f"channel acts on dim {channel.dim}, operand has dim {dim}")


def wp_matrix(channel: KrausChannel, M) -> np.ndarray:
    M = as_matrix(M)
    _check_dim(channel, M.shape[0])
    return sum(E @ M @ E.conj().T for E in channel.operators)


def wp(channel: KrausChannel, M: QuantumPredicate, tol: float = DEFAULT_TOL) -> QuantumPredicate:
    """Weakest precondition ``sum_i E_i M E_i^dagger``.

    The result keeps the mode of ``M``: a strict predicate maps to a strict
    predicate since ``0 <= E M E^dagger <= E E^dagger`` summed stays below ``I``.
    """
    return validate_predicate(wp_matrix(channel, M.matrix), M.mode, tol)


def apply_matrix(channel: KrausChannel, rho) -> np.ndarray:
    rho = as_matrix(rho)
    _check_dim(channel, rho.shape[0])
    return sum(E.conj().T @ rho @ E for E in channel.operators)


def apply(channel: KrausChannel, rho: DensityMatrix, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """Run the program on a state: ``sum_i E_i^dagger rho E_i``."""
    return validate_density(apply_matrix(channel, rho.matrix), tol)


def duality_gap(channel: KrausChannel, M, rho) -> float:
    """``|Tr(wp(E)(M) rho) - Tr(M E(rho))|`` for a single state."""
    M, rho = as_matrix(M), as_matrix(rho)
    lhs = np.trace(wp_matrix(channel, M) @ rho)
    rhs = np.trace(M @ apply_matrix(channel, rho))
    return float(abs(lhs - rhs))


def check_duality(
    channel: KrausChannel,
    M: QuantumPredicate,
    samples: int = 100,
    seed: int = 0,
    tol: float = 1e-10,
) -> bool:
    """Sampled check of ``Tr(wp(E)(M) rho) == Tr(M E(rho))`` on random densities.

    Density ``k`` is ``random_density(dim, seed + k)``. This is a cross-check
    only; :func:`is_precondition` is the exact decision procedure.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    _check_dim(channel, M.dim)
    return all(
        duality_gap(channel, M.matrix, random_density(channel.dim, seed + k).matrix) <= tol
        for k in range(samples)
    )


def is_precondition(
    M: QuantumPredicate, N: QuantumPredicate, channel: KrausChannel, tol: float = DEFAULT_TOL
) -> bool:
    """Whether ``M`` is a precondition of ``N`` under ``channel``.

    ``Tr(M rho) <= Tr(N E(rho))`` for every density ``rho`` holds exactly when
    ``M <= wp(E)(N)`` in the Loewner order, which is what is decided here.
    """
    if M.dim != N.dim:
        raise DimensionMismatch("predicates have different dimensions")
    return loewner_leq(M.matrix, wp_matrix(channel, N.matrix), tol)


def random_channel(dim: int, n_ops: int, seed: int, contraction: float | None = None) -> KrausChannel:
    """Seeded random Kraus channel with ``n_ops`` operators.

    Random complex Gaussian operators are rescaled so the largest eigenvalue
    of ``sum E E^dagger`` equals ``contraction`` (drawn from ``[0.5, 1]``
    when not given).
    """
    rng = np.random.default_rng(seed)
    ops = [
        rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        for _ in range(n_ops)
    ]
    if contraction is None:
        contraction = rng.uniform(0.5, 1.0)
    top = np.linalg.norm(gram(ops), 2)
    scale = np.sqrt(contraction / top)
    return validate_channel([scale * E for E in ops])
