"""Exception types shared across the package.

Configuration errors (bad scale descriptions, unknown names, points outside
the scale) are distinguished from computational failures (limits or
quadrature that did not reach tolerance) so callers such as the HTTP service
can map them to different status codes.
"""


class TscalcError(Exception):
    """Base class for all library errors."""


class ConfigError(TscalcError):
    """The request or input data is invalid; no computation was attempted."""


class ComputationError(TscalcError):
    """A numerical procedure failed to reach its tolerance."""


class EmptyScaleError(ConfigError):
    """A time scale must contain at least one point."""


class InvalidComponentError(ConfigError):
    """A component has a bad shape (interval with lo >= hi, NaN, interior infinity)."""


class NotInScaleError(ConfigError):
    """The queried point does not belong to the time scale."""


class NotInKappaError(ConfigError):
    """The point is not in the derivative domain (scale minus a detached maximum)."""


class UnboundedAboveError(ConfigError):
    """Operation requires a finite supremum."""


class UnboundedBelowError(ConfigError):
    """Operation requires a finite infimum."""


class InvalidIntervalError(ConfigError):
    """Interval endpoints are out of order or not finite."""


class UnknownScaleError(ConfigError):
    """No builtin scale family of that name."""


class UnknownFunctionError(ConfigError):
    """No builtin test function of that name."""


class UnknownSuiteError(ConfigError):
    """No verification suite of that name."""


class InvalidParameterError(ConfigError):
    """A family or operation parameter is outside its documented range."""


class NoPairedFunctionError(ConfigError):
    """The scale family has no canonical paired test function."""


class NoConvergenceError(ComputationError):
    """A one-sided limit did not pass the Cauchy criterion within the iteration cap."""


class QuadratureFailureError(ComputationError):
    """Adaptive quadrature hit the depth cap before reaching tolerance."""


class ZeroDenominatorError(ComputationError):
    """The measure puts no mass near the point, so the density quotient is undefined."""


class NonConvergedDerivativeError(ComputationError):
    """A derivative was required at points where the limit did not converge."""

    def __init__(self, points, message=None):
        self.points = list(points)
        super().__init__(message or f"derivative did not converge at {self.points}")
