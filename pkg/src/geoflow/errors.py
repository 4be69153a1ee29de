"""Exception types shared across the package."""


class GeoflowError(Exception):
    """Base class for all package errors."""


class ChartDomainError(GeoflowError):
    """A chart point lies outside the working window."""


class IntegrationError(GeoflowError):
    """An ODE integration failed (step underflow, solver breakdown)."""


class ConvergenceError(GeoflowError):
    """An iterative solve (shooting, corrector) did not converge."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ConjugatePointError(GeoflowError):
    """A Jacobi boundary-value solution vanished inside its interval.

    Signals that the chart left the certified no-conjugate-point family.
    """


class PreconditionError(GeoflowError):
    """An operation was called with inputs violating its precondition."""


class NoIntersectionError(GeoflowError):
    """Two traced leaves failed to intersect within the trace window."""


class ConfigError(GeoflowError):
    """An experiment configuration failed validation."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key
