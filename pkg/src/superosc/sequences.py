"""Superoscillating sequences F_n, Y_n, Z_n and their diagnostics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import DomainError
from .modesum import (
    coefficient,
    coefficients,
    coefficient_phase_sum,
    needs_extended_precision,
)

__all__ = [
    "SuperoscSpec", "BandLimit", "coefficient", "coefficients",
    "f_n_product", "f_n_sum", "f_n_sum_grid", "f_limit",
    "y_n", "y_limit", "z_n", "z_limit",
    "local_frequency", "pointwise_local_frequency", "sup_error_on_compact",
]

LOCAL_FREQ_MASK = 1e-8


@dataclass(frozen=True)
class SuperoscSpec:
    """Amplification a, momenta p, orders n, and hbar of one sequence."""

    a: float
    p: np.ndarray
    n: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        p = np.atleast_1d(np.asarray(self.p, dtype=float))
        n = np.atleast_1d(np.asarray(self.n, dtype=int))
        if n.size == 1 and p.size > 1:
            n = np.full(p.size, n[0])
        if p.size != n.size:
            raise DomainError("p and n must have matching lengths")
        if np.any(p == 0):
            raise DomainError("all momentum components must be nonzero")
        if np.any(n < 1):
            raise DomainError("all orders must be >= 1")
        if self.hbar <= 0:
            raise DomainError("hbar must be positive")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", n)

    @property
    def d(self) -> int:
        return self.p.size

    def scalar_order(self) -> int:
        """Single order n for the scalar-index sums (Y_n, Z_n, evolution)."""
        return int(self.n[0])


@dataclass(frozen=True)
class BandLimit:
    """Fastest wavenumber |p_j|/hbar present in the generating exponentials."""

    kmax: np.ndarray

    @classmethod
    def of(cls, spec: SuperoscSpec) -> "BandLimit":
        return cls(kmax=np.abs(spec.p) / spec.hbar)


def _per_dim(spec, x):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (spec.d,):
        raise DomainError(f"expected position of shape ({spec.d},), got {x.shape}")
    return x


def f_n_product(spec: SuperoscSpec, x) -> complex:
    """[cos(px/(n hbar)) + i a sin(px/(n hbar))]^n, tensorized over dimensions.

    Numerically stable for any order; the oracle form of the sequence.
    """
    x = _per_dim(spec, x)
    val = 1.0 + 0.0j
    for j in range(spec.d):
        theta = spec.p[j] * x[j] / (spec.n[j] * spec.hbar)
        val *= (np.cos(theta) + 1j * spec.a * np.sin(theta)) ** int(spec.n[j])
    return complex(val)


def f_n_product_grid(spec: SuperoscSpec, x: np.ndarray) -> np.ndarray:
    """Vectorized product form on a 1-d grid (d = 1 only)."""
    if spec.d != 1:
        raise DomainError("grid evaluation is 1-d only")
    theta = spec.p[0] * np.asarray(x, dtype=float) / (spec.n[0] * spec.hbar)
    return (np.cos(theta) + 1j * spec.a * np.sin(theta)) ** int(spec.n[0])


def f_n_sum(spec: SuperoscSpec, x, rel_target: float = 1e-12) -> complex:
    """Coefficient-sum form Sum_k C_k(n,a) e^{i p x (1-2k/n)/hbar} per dimension.

    Must agree with the product form; switches itself to extended precision
    once the binomial cancellation would eat the requested relative target.
    """
    x = _per_dim(spec, x)
    val = 1.0 + 0.0j
    for j in range(spec.d):
        A = spec.p[j] * x[j] / spec.hbar
        val *= coefficient_phase_sum(int(spec.n[j]), spec.a, lambda b: b * A,
                                     rel_target=rel_target)
    return complex(val)


def f_n_sum_grid(spec: SuperoscSpec, x: np.ndarray, rel_target: float = 1e-12) -> np.ndarray:
    """Sum form on a 1-d grid; hot path uses the kernel backend when safe."""
    if spec.d != 1:
        raise DomainError("grid evaluation is 1-d only")
    x = np.asarray(x, dtype=float)
    n = int(spec.n[0])
    if needs_extended_precision(n, spec.a, rel_target):
        return np.array([f_n_sum(spec, np.array([xi]), rel_target) for xi in x])
    b = 1.0 - 2.0 * np.arange(n + 1) / n
    kappas = b * spec.p[0] / spec.hbar
    return backend.mode_sum(x, coefficients(n, spec.a).astype(complex), kappas)


def f_limit(spec: SuperoscSpec, x) -> complex:
    """Pointwise limit e^{i a p.x / hbar}."""
    x = _per_dim(spec, x)
    return complex(np.exp(1j * spec.a * float(np.dot(spec.p, x)) / spec.hbar))


def _even_sign(q: int) -> float:
    # (-i)^q for even q
    return (-1.0) ** (q // 2)


def _odd_sign(q: int) -> float:
    # (-i)^q = sign * (-i) for odd q; the resulting real phase factor
    return -((-1.0) ** ((q - 1) // 2))


def y_n(spec: SuperoscSpec, q: int, x, rel_target: float = 1e-12) -> complex:
    """Generalized sequence with mode exponent (i p.x/hbar)(-i)^q (1-2k/n)^q, q even."""
    if q < 0 or q % 2:
        raise DomainError(f"y_n requires even q >= 0, got {q}")
    x = _per_dim(spec, x)
    A = _even_sign(q) * float(np.dot(spec.p, x)) / spec.hbar
    return coefficient_phase_sum(spec.scalar_order(), spec.a, lambda b: A * b ** q,
                                 rel_target=rel_target)


def y_limit(spec: SuperoscSpec, q: int, x) -> complex:
    if q < 0 or q % 2:
        raise DomainError(f"y_limit requires even q >= 0, got {q}")
    x = _per_dim(spec, x)
    return complex(np.exp(1j * _even_sign(q) * spec.a ** q
                          * float(np.dot(spec.p, x)) / spec.hbar))


def z_n(spec: SuperoscSpec, q: int, x, rel_target: float = 1e-12) -> complex:
    """Companion sequence with exponent (p.x/hbar)(-i)^q (1-2k/n)^q, q odd."""
    if q < 1 or q % 2 == 0:
        raise DomainError(f"z_n requires odd q >= 1, got {q}")
    x = _per_dim(spec, x)
    A = _odd_sign(q) * float(np.dot(spec.p, x)) / spec.hbar
    return coefficient_phase_sum(spec.scalar_order(), spec.a, lambda b: A * b ** q,
                                 rel_target=rel_target)


def z_limit(spec: SuperoscSpec, q: int, x) -> complex:
    if q < 1 or q % 2 == 0:
        raise DomainError(f"z_limit requires odd q >= 1, got {q}")
    x = _per_dim(spec, x)
    return complex(np.exp(1j * _odd_sign(q) * spec.a ** q
                          * float(np.dot(spec.p, x)) / spec.hbar))


def local_frequency(psi: np.ndarray, dx: float, mask_threshold: float = LOCAL_FREQ_MASK) -> np.ndarray:
    """Local wavenumber Im[psi'/psi] by central differences on a uniform grid.

    Endpoints and samples with |psi| below the mask threshold come back NaN
    (the diagnostic blows up at zeros of psi; masking is honest).
    """
    psi = np.asarray(psi, dtype=complex)
    out = np.full(psi.shape, np.nan)
    good = np.abs(psi[1:-1]) > mask_threshold
    deriv = (psi[2:] - psi[:-2]) / (2.0 * dx)
    out[1:-1][good] = np.imag(deriv[good] / psi[1:-1][good])
    return out


def pointwise_local_frequency(fn, x: float, abs_tol: float = 1e-10) -> float:
    """Im[psi'(x)/psi(x)] with a step chosen from a coarse first pass.

    Two-pass central difference: the O(h^2 k^3) truncation of the naive
    estimate is rebalanced against round-off once k is roughly known.
    """
    h = 1e-4
    psi0 = fn(x)
    k_est = np.imag((fn(x + h) - fn(x - h)) / (2.0 * h * psi0))
    k_mag = max(abs(k_est), 1.0)
    h = min(1e-4, np.sqrt(3.0 * abs_tol / k_mag ** 3))
    h = max(h, 1e-9)
    return float(np.imag((fn(x + h) - fn(x - h)) / (2.0 * h * psi0)))


def sup_error_on_compact(spec: SuperoscSpec, limit_fn, box, grid_points: int = 201) -> float:
    """Max over a rectangular grid of |F_n(x) - limit(x)| (product form)."""
    if grid_points < 2 and grid_points != 1:
        raise DomainError("grid_points must be >= 2 (or 1 for a single point)")
    box = np.atleast_2d(np.asarray(box, dtype=float))
    if box.shape != (spec.d, 2):
        raise DomainError(f"box must have shape ({spec.d}, 2)")
    axes = [np.linspace(lo, hi, grid_points) for lo, hi in box]
    if spec.d == 1:
        f = f_n_product_grid(spec, axes[0])
        lim = np.array([limit_fn(np.array([xi])) for xi in axes[0]])
        return float(np.max(np.abs(f - lim)))
    worst = 0.0
    for idx in np.ndindex(*(grid_points,) * spec.d):
        x = np.array([axes[j][idx[j]] for j in range(spec.d)])
        worst = max(worst, abs(f_n_product(spec, x) - limit_fn(x)))
    return worst
