"""Exception types shared across the package."""


class QlovaszError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(QlovaszError, ValueError):
    pass


class NonHermitianError(QlovaszError, ValueError):
    pass


class DomainError(QlovaszError, ValueError):
    """Parameter outside the range where a construction is defined."""


class CompletenessViolation(QlovaszError, ValueError):
    """Kraus operators do not sum to the identity."""

    def __init__(self, residual):
        super().__init__(f"sum_k E_k^dag E_k deviates from identity by {residual:.3e}")
        self.residual = residual


class NotStochastic(QlovaszError, ValueError):
    pass


class AllZeroInput(QlovaszError, ValueError):
    pass


class SubspaceNotValid(QlovaszError, ValueError):
    """Operator subspace is not a non-commutative graph (needs 1 in S and S = S^dag)."""


class SolverFailure(QlovaszError, RuntimeError):
    """Raised when a quantity cannot be certified because the solver did not reach optimality."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
