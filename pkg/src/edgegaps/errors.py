"""Exception hierarchy shared across the package."""


class EdgeGapError(Exception):
    """Base class for all package errors."""


class DomainError(EdgeGapError, ValueError):
    """An argument lies outside the domain of the operation."""


class BracketError(EdgeGapError, ValueError):
    """A root bracket does not contain a sign change."""


class InfeasibleCountError(EdgeGapError, ValueError):
    """A conditioned eigenvalue count cannot be realized.

    ``n_max`` is the supremum of feasible counts for the problem, when known.
    """

    def __init__(self, message, n_max=None):
        super().__init__(message)
        self.n_max = n_max


class AccuracyError(EdgeGapError, ArithmeticError):
    """A numerical routine failed to reach the requested accuracy.

    Carries the best available estimate and its error bound so callers may
    decide whether the partial result is usable.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class ConstructionError(EdgeGapError, ValueError):
    """Random matrix construction received invalid shape parameters."""


class UsageError(EdgeGapError, ValueError):
    """Incompatible combination of options (e.g. hard edge on a Gaussian ensemble)."""
