"""Error and warning types shared across the package."""


class UnsupportedOrderError(ValueError):
    """A moment or derivative order beyond the configured maximum."""


class DegenerateKernelError(RuntimeError):
    """The moment system of a kernel is singular or near-singular."""

    def __init__(self, message: str, condition_estimate: float | None = None):
        super().__init__(message)
        self.condition_estimate = condition_estimate


class InvalidScaleError(ValueError):
    """A kernel scale that is not a positive finite number."""


class InvalidEpsilonError(ValueError):
    """A regularization parameter outside its admissible range."""


class PlacementError(ValueError):
    """A potential location or initial bump that does not fit inside the domain."""


class SingularSystemError(RuntimeError):
    """A vanishing pivot in the tridiagonal elimination."""

    def __init__(self, message: str, pivot_index: int | None = None):
        super().__init__(message)
        self.pivot_index = pivot_index


class OutOfRegimeError(ValueError):
    """Parameters outside the contraction regime of the fixed-point oracle."""


class InsufficientDataError(ValueError):
    """Too few points for a meaningful fit."""


class DegenerateFitError(ValueError):
    """Fit data that breaks the log-log regression (zero or negative values)."""


class InapplicableExperimentError(ValueError):
    """An experiment invoked on a potential kind it is not defined for."""


class ConfigError(ValueError):
    """A malformed or invalid run configuration."""


class UnderResolvedKernelWarning(UserWarning):
    """Grid spacing too coarse to resolve the scaled kernel support."""
