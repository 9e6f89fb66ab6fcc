"""Quantum weakest preconditions and decision procedures for their commutativity."""
from .channels import (
    KrausChannel,
    apply,
    check_duality,
    is_precondition,
    random_channel,
    validate_channel,
    wp,
)
from .commutativity import (
    CommutativityReport,
    SimDiagWitness,
    check_all,
    check_direct,
    check_hermitian_product,
    check_trace_identity,
    commutator,
    simultaneous_diagonalize,
    wp_commutes,
)
from .errors import QWPError
from .examples import PaperInstance, example1, example2, prop7_instance, prop8_instance
from .linalg import (
    EigenDecomposition,
    adjoint,
    frobenius_norm,
    hermitian_eig,
    is_hermitian,
    is_psd,
    loewner_leq,
    matmul,
    tensor,
    trace,
)
from .predicates import (
    DensityMatrix,
    QuantumPredicate,
    random_density,
    random_predicate,
    validate_density,
    validate_predicate,
)
from .sysenv import (
    SystemEnvironmentModel,
    env_contract,
    extract_kraus,
    make_model,
    partial_trace_env,
    random_model,
    se_apply,
    se_wp,
)

__version__ = "0.1.0"
