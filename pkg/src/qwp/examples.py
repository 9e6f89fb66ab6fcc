"""Worked instances showing that commutativity of the inputs ``M, N`` says
nothing about commutativity of their weakest preconditions.

* :func:`example1` / :func:`prop7_instance`: ``MN != NM`` but the
  preconditions commute.
* :func:`example2` / :func:`prop8_instance`: ``MN == NM`` but the
  preconditions do not commute.

The ``n``-dimensional families pad the 2x2 instances with an identity block,
``X -> I_{n-2} (+) X``, for ``M``, ``N`` and the single Kraus operator.

Note on ``example1``: its ``N`` has characteristic polynomial
``mu^2 - 0.3 mu - 0.05``, whose roots are ``0.15 +- sqrt(0.0725)``, one of them
negative (about ``-0.119``). It is therefore an observable rather than a
predicate in ``[0, I]``, and is built in observable mode. Its value is kept as
published.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel, validate_channel
from .errors import InvalidDimension
from .predicates import OBSERVABLE, STRICT, QuantumPredicate, validate_predicate

EX1_M = np.array([[0.2, 0.2j], [-0.2j, 0.5]])
EX1_N = np.array([[0.3, 0.1 + 0.2j], [0.1 - 0.2j, 0.0]])
EX1_E = np.array([[0.1, 0.0], [0.0, 0.0]])

EX2_M = np.array([[0.2, 0.0], [0.0, 0.0]])
EX2_N = np.array([[0.3, 0.0], [0.0, 0.7]])
EX2_E = np.array([[0.5, 0.2j], [0.0, 0.5]])


@dataclass(frozen=True, eq=False)
class PaperInstance:
    name: str
    M: QuantumPredicate
    N: QuantumPredicate
    channel: KrausChannel
    expected_inputs_commute: bool
    expected_wps_commute: bool

    @property
    def dim(self) -> int:
        return self.channel.dim


def pad_identity(X, n: int) -> np.ndarray:
    """Block-diagonal ``I_{n-k} (+) X`` for a ``k x k`` matrix ``X``."""
    X = np.asarray(X, dtype=np.complex128)
    k = X.shape[0]
    if n < k:
        raise InvalidDimension(f"n = {n} is smaller than the block size {k}")
    out = np.eye(n, dtype=np.complex128)
    out[n - k:, n - k:] = X
    return out


def prop7_instance(n: int) -> PaperInstance:
    """``n``-dimensional instance with non-commuting inputs and commuting preconditions."""
    if n < 2:
        raise InvalidDimension("n must be at least 2")
    return PaperInstance(
        name="ex1" if n == 2 else f"prop7-{n}",
        M=validate_predicate(pad_identity(EX1_M, n), STRICT),
        N=validate_predicate(pad_identity(EX1_N, n), OBSERVABLE),
        channel=validate_channel([pad_identity(EX1_E, n)]),
        expected_inputs_commute=False,
        expected_wps_commute=True,
    )


def prop8_instance(n: int) -> PaperInstance:
    """``n``-dimensional instance with commuting inputs and non-commuting preconditions."""
    if n < 2:
        raise InvalidDimension("n must be at least 2")
    return PaperInstance(
        name="ex2" if n == 2 else f"prop8-{n}",
        M=validate_predicate(pad_identity(EX2_M, n), STRICT),
        N=validate_predicate(pad_identity(EX2_N, n), STRICT),
        channel=validate_channel([pad_identity(EX2_E, n)]),
        expected_inputs_commute=True,
        expected_wps_commute=False,
    )


def example1() -> PaperInstance:
    return prop7_instance(2)


def example2() -> PaperInstance:
    return prop8_instance(2)


INSTANCES = {
    "ex1": lambda n=2: example1(),
    "ex2": lambda n=2: example2(),
    "prop7": prop7_instance,
    "prop8": prop8_instance,
}
