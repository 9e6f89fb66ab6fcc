"""Exception hierarchy.

Every error carries a short machine-readable ``reason`` (e.g. ``"not-positive"``)
that the command-line front end prints verbatim.
"""


class QWPError(Exception):
    reason = "error"

    def __init__(self, message=None):
        super().__init__(message or self.reason)


class DimensionMismatch(QWPError, ValueError):
    reason = "dimension-mismatch"


class NotHermitian(QWPError, ValueError):
    reason = "not-hermitian"


class NoConvergence(QWPError, ArithmeticError):
    reason = "no-convergence"


class NotPositive(QWPError, ValueError):
    reason = "not-positive"


class ExceedsIdentity(QWPError, ValueError):
    reason = "exceeds-identity"


class TraceTooLarge(QWPError, ValueError):
    reason = "trace-too-large"


class EmptyChannel(QWPError, ValueError):
    reason = "empty-list"


class TraceIncreasing(QWPError, ValueError):
    reason = "trace-increasing"


class InvalidModel(QWPError, ValueError):
    reason = "invalid-model"


class NotCommuting(QWPError, ValueError):
    reason = "not-commuting"


class VerificationFailed(QWPError, ArithmeticError):
    reason = "verification-failed"


class InvalidDimension(QWPError, ValueError):
    reason = "invalid-dimension"


# Raised when the module-level validators see a value that is structurally
# a validation failure (hermiticity, positivity, order, trace).
VALIDATION_ERRORS = (
    NotHermitian,
    NotPositive,
    ExceedsIdentity,
    TraceTooLarge,
    EmptyChannel,
    TraceIncreasing,
    InvalidModel,
)
