"""Superoscillating wavefunctions under exact driven-oscillator propagators."""

__version__ = "0.1.0"

from .backend import BACKEND
from .errors import (
    CausticError,
    ConfigError,
    DomainError,
    ExtrapolationError,
    PeriodicityError,
    QuadratureError,
    SuperoscError,
)
from .params import CASES, ForceModel, PhysicalParams
from .sequences import BandLimit, SuperoscSpec

__all__ = [
    "__version__", "BACKEND",
    "SuperoscError", "DomainError", "CausticError", "QuadratureError",
    "ExtrapolationError", "PeriodicityError", "ConfigError",
    "PhysicalParams", "ForceModel", "CASES",
    "SuperoscSpec", "BandLimit",
]
