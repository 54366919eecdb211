"""Physical parameters and driving-force models."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError

# Hamiltonian cases: free particle, uniform field, harmonic oscillator,
# driven harmonic oscillator.
CASES = ("free", "uniform", "harmonic", "driven")

# Relative detuning below which a sinusoidal drive is treated as resonant
# with the oscillator (the generic antiderivative degenerates at nu = omega).
RESONANCE_RTOL = 1e-9


@dataclass(frozen=True)
class PhysicalParams:
    """Ambient physics: mass, angular frequency, action quantum, dimension."""

    m: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0
    d: int = 1

    def __post_init__(self):
        if self.m <= 0:
            raise DomainError(f"mass must be positive, got {self.m}")
        if self.hbar <= 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        if self.omega < 0:
            raise DomainError(f"omega must be >= 0, got {self.omega}")
        if int(self.d) != self.d or self.d < 1:
            raise DomainError(f"dimension must be an integer >= 1, got {self.d}")

    def require_omega(self):
        """Reject omega = 0 where a harmonic formula would hide a 0/0."""
        if self.omega == 0:
            raise DomainError(
                "omega = 0: use the free/uniform case or an explicit small-omega limit"
            )


def _as_vector(v, d):
    arr = np.atleast_1d(np.asarray(v, dtype=float))
    if arr.shape != (d,):
        raise DomainError(f"expected a length-{d} vector, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class ForceModel:
    """Driving force f(t).

    Kinds: ``zero``, ``constant`` (f0), ``sinusoidal`` (f0 sin(nu t + phase)),
    ``sampled`` (arbitrary callable, integrated by quadrature).
    """

    kind: str
    f0: np.ndarray | None = None
    nu: float = 0.0
    phase: float = 0.0
    fn: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)
    d: int = 1

    @classmethod
    def zero(cls, d: int = 1) -> "ForceModel":
        return cls(kind="zero", f0=np.zeros(d), d=d)

    @classmethod
    def constant(cls, f0, d: int | None = None) -> "ForceModel":
        arr = np.atleast_1d(np.asarray(f0, dtype=float))
        if d is not None:
            arr = _as_vector(f0, d)
        return cls(kind="constant", f0=arr, d=arr.size)

    @classmethod
    def sinusoidal(cls, f0, nu: float, phase: float = 0.0, d: int | None = None) -> "ForceModel":
        arr = np.atleast_1d(np.asarray(f0, dtype=float))
        if d is not None:
            arr = _as_vector(f0, d)
        return cls(kind="sinusoidal", f0=arr, nu=float(nu), phase=float(phase), d=arr.size)

    @classmethod
    def sampled(cls, fn: Callable, d: int = 1) -> "ForceModel":
        return cls(kind="sampled", fn=fn, d=d)

    def __call__(self, t):
        """Evaluate f(t); scalar t gives shape (d,), array t gives (len(t), d)."""
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        ts = np.atleast_1d(t)
        if self.kind == "zero":
            out = np.zeros((ts.size, self.d))
        elif self.kind == "constant":
            out = np.broadcast_to(self.f0, (ts.size, self.d)).copy()
        elif self.kind == "sinusoidal":
            out = np.outer(np.sin(self.nu * ts + self.phase), self.f0)
        elif self.kind == "sampled":
            out = np.asarray([np.atleast_1d(self.fn(s)) for s in ts], dtype=float)
            if out.shape[1] != self.d:
                raise DomainError(
                    f"sampled force returned dimension {out.shape[1]}, expected {self.d}"
                )
        else:
            raise DomainError(f"unknown force kind {self.kind!r}")
        return out[0] if scalar else out

    def is_resonant_with(self, omega: float) -> bool:
        return self.kind == "sinusoidal" and abs(self.nu - omega) < RESONANCE_RTOL * abs(omega)
