"""Exception and warning types shared across the package."""


class CatpacketError(Exception):
    """Base class for package-specific failures."""


class UnsupportedModelError(CatpacketError):
    """Raised for (dispersion, barrier) combinations that have no defined filter."""


class DegenerateNormalizationError(CatpacketError):
    """Raised when the initial-overlap normalization sum is consistent with zero."""


class QuadratureAccuracyError(CatpacketError):
    """Raised when the estimated quadrature error exceeds the requested tolerance.

    Attributes
    ----------
    estimate : float
        Estimated relative error of the offending integral.
    tau : float or None
        Delay at which the failure occurred, when known.
    """

    def __init__(self, message, estimate, tau=None):
        super().__init__(message)
        self.estimate = estimate
        self.tau = tau


class InsufficientDataError(CatpacketError):
    """Raised when a sweep diagnostic has too few features to produce an estimate."""


class ConfigError(CatpacketError):
    """Raised for invalid run configurations; carries the offending field path."""

    def __init__(self, message, field=""):
        super().__init__(message)
        self.field = field


class ApproximationWarning(UserWarning):
    """Emitted when an analytic closed form is evaluated outside its validity range."""
