"""
Four ways to ask whether two Hermitian matrices commute
=======================================================

The direct commutator norm, Hermiticity of the product, the trace identity
Tr((AB)^2) = Tr(A^2 B^2), and an explicit simultaneous diagonalization.
On a random pair they all say no; on a pair built from a shared eigenbasis
they all say yes, and the last one hands back the shared basis.
"""
import numpy as np

from qwp import check_all
from qwp.predicates import random_hermitian
from qwp.sysenv import random_unitary

rng = np.random.default_rng(0)
n = 4

A, B = random_hermitian(n, rng), random_hermitian(n, rng)
report = check_all(A, B)
print("random pair:", report.verdicts)
print("  ||[A,B]||_F   =", report.commutator_norm)
print("  trace gap     =", report.trace_gap, "(half the squared norm above)")

# Build a commuting pair: conjugate two diagonals by the same unitary, with a
# repeated eigenvalue in A so the diagonalizer has to split a cluster using B.
U = random_unitary(n, rng)
a = np.array([1.0, 1.0, 2.0, 5.0])
b = rng.standard_normal(n)
A = (U * a) @ U.conj().T
B = (U * b) @ U.conj().T

report = check_all(A, B)
print("\nshared-basis pair:", report.verdicts)
W = report.witness
print("  eigenvalues of A in the shared basis:", np.round(W.lam, 6))
print("  eigenvalues of B in the shared basis:", np.round(W.mu, 6))
off = W.unitary.conj().T @ B @ W.unitary - np.diag(W.mu)
print("  leftover off-diagonal mass in B:", np.linalg.norm(off))
