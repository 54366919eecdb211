"""Exception types shared across the package."""


class SuperoscError(Exception):
    """Base class for all package-specific errors."""


class DomainError(SuperoscError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class CausticError(DomainError):
    """The classical flow is focal: g(t, t') = 0 and the propagator diverges.

    Carries the nearest singular time so callers can re-anchor.
    """

    def __init__(self, message, singular_time=None):
        super().__init__(message)
        self.singular_time = singular_time


class QuadratureError(SuperoscError, RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class ExtrapolationError(SuperoscError, RuntimeError):
    """The regularizer-removal extrapolation did not settle.

    ``values`` holds the per-beta results that failed the tail check.
    """

    def __init__(self, message, values=None):
        super().__init__(message)
        self.values = values


class PeriodicityError(SuperoscError, ValueError):
    """Input field is not periodic at the anchor time; ``defect`` is measured."""

    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class ConfigError(SuperoscError, ValueError):
    """Run configuration is malformed (unknown key, missing block, bad value)."""
