"""
Weakest preconditions of two small programs
===========================================

Two single-qubit programs, each with one Kraus operator. In the first, the
inputs M and N do not commute but their weakest preconditions do. The second
is the other way round.
"""
import numpy as np

from qwp import check_all, example1, example2, hermitian_eig, wp

np.set_printoptions(precision=4, suppress=True)

for ex in (example1(), example2()):
    M, N, E = ex.M, ex.N, ex.channel
    print(f"--- {ex.name} ---")
    print("Kraus operator E =\n", E.operators[0])

    # wp(E)(M) = E M E^dagger for a one-operator program
    A, B = wp(E, M).matrix, wp(E, N).matrix
    print("wp(M) =\n", A)
    print("wp(N) =\n", B)

    before = check_all(M.matrix, N.matrix)
    after = check_all(A, B)
    print("inputs commute:", before.commutes, " commutator norm", f"{before.commutator_norm:.3g}")
    print("wps commute:   ", after.commutes, " commutator norm", f"{after.commutator_norm:.3g}")
    print()

# N in the first program is Hermitian but has a negative eigenvalue, so it is
# carried as an observable rather than a predicate.
print("eigenvalues of the first N:", hermitian_eig(example1().N.matrix).eigenvalues)
