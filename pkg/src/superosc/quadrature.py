"""Adaptive Gauss-Kronrod quadrature and the regularized oscillatory integral.

The generic routines here take Python callables and serve as oracles for the
closed-form machinery.  The performance-critical specialization (complex
Gaussian phase times a mode superposition) lives in the kernel backend.
"""

from __future__ import annotations

import numpy as np

from .errors import ExtrapolationError, QuadratureError

# 15-point Kronrod extension of 7-point Gauss-Legendre (QUADPACK dqk15).
GK_NODES = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759,
    0.991455371120813,
])
GK_WEIGHTS = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529,
])
# Gauss-7 weights on the embedded nodes (odd indices plus the center).
G7_WEIGHTS = np.zeros(15)
G7_WEIGHTS[1::2] = [0.129484966168870, 0.279705391489277, 0.381830050505119,
                    0.417959183673469, 0.381830050505119, 0.279705391489277,
                    0.129484966168870]

# Default Gaussian-regularizer schedule for oscillatory integrals over the line.
DEFAULT_BETA_SCHEDULE = (1e-2, 5e-3, 2.5e-3, 1.25e-3)

# e^{-beta x^2} < 1e-16 beyond the cutoff.
_CUTOFF_LOG = -np.log(1e-16)


def _panel(f, lo, hi):
    """One Gauss-Kronrod panel: (kronrod_value, error_estimate)."""
    c = 0.5 * (lo + hi)
    h = 0.5 * (hi - lo)
    fx = np.asarray(f(c + h * GK_NODES))
    k15 = h * np.sum(GK_WEIGHTS * fx)
    g7 = h * np.sum(G7_WEIGHTS * fx)
    return k15, abs(k15 - g7)


def adaptive_gauss_kronrod(f, a, b, abs_tol=1e-12, max_depth=30):
    """Integrate a vectorized complex-valued callable over [a, b].

    Oriented: a > b integrates backwards with the sign the bounds dictate.
    Returns (value, error_estimate); raises QuadratureError when the depth
    cap is hit before the tolerance is met.
    """
    if a == b:
        return 0.0 + 0.0j, 0.0
    sign = 1.0
    if a > b:
        a, b = b, a
        sign = -1.0
    total_width = b - a
    value = 0.0 + 0.0j
    err_total = 0.0
    stack = [(a, b, 0)]
    failed = False
    while stack:
        lo, hi, depth = stack.pop()
        k15, err = _panel(f, lo, hi)
        if err <= abs_tol * (hi - lo) / total_width or depth >= max_depth:
            value += k15
            err_total += err
            if depth >= max_depth and err > abs_tol * (hi - lo) / total_width:
                failed = True
        else:
            mid = 0.5 * (lo + hi)
            stack.append((mid, hi, depth + 1))
            stack.append((lo, mid, depth + 1))
    if failed and err_total > abs_tol:
        raise QuadratureError(
            f"quadrature did not converge: achieved {err_total:.3e}, wanted {abs_tol:.3e}",
            achieved=err_total,
        )
    return sign * value, err_total


def vectorize_scalar(f):
    """Wrap a scalar-argument callable for use with the panel evaluator."""

    def g(x):
        return np.asarray([f(xi) for xi in np.atleast_1d(x)])

    return g


def beta_extrapolate(betas, values):
    """Extrapolate the regularized-integral values to beta -> 0+.

    Quadratic polynomial through the three smallest betas; the remaining
    point feeds the monotone-tail stability check.  Returns (limit, err_est).
    """
    betas = np.asarray(betas, dtype=float)
    values = np.asarray(values, dtype=complex)
    order = np.argsort(betas)[::-1]  # largest beta first
    betas, values = betas[order], values[order]
    if betas.size < 3:
        raise ExtrapolationError("need at least 3 beta values", values=values)
    diffs = np.abs(np.diff(values))
    # A genuinely settling sequence has a shrinking (or noise-level) tail.
    if diffs[-1] > 2.0 * diffs[-2] and diffs[-1] > 1e-12 * max(1.0, np.max(np.abs(values))):
        raise ExtrapolationError(
            f"non-monotone tail in beta extrapolation: diffs {diffs}", values=values
        )
    b3, v3 = betas[-3:], values[-3:]
    coeffs = np.polyfit(b3, v3, 2)
    limit = coeffs[-1]
    linear = np.polyfit(betas[-2:], values[-2:], 1)[-1]
    return limit, abs(limit - linear)


def regularized_integral(f, beta_schedule=DEFAULT_BETA_SCHEDULE, abs_tol=1e-9,
                         max_depth=30):
    """lim_{beta->0+} of integral over R of f(x) e^{-beta x^2} dx.

    Generic-callable path; f must be vectorized.  The per-beta domain is
    truncated where the regularizer falls below 1e-16.
    """
    values = []
    for beta in beta_schedule:
        cut = np.sqrt(_CUTOFF_LOG / beta)

        def g(x, beta=beta):
            return f(x) * np.exp(-beta * x * x)

        v, _ = adaptive_gauss_kronrod(g, -cut, cut, abs_tol=abs_tol, max_depth=max_depth)
        values.append(v)
    return beta_extrapolate(beta_schedule, values)


def composite_simpson(y, h):
    """Composite Simpson on uniformly sampled values (even panel count)."""
    n = len(y) - 1
    if n % 2 != 0:
        raise ValueError("composite Simpson needs an even number of panels")
    return (h / 3.0) * (y[0] + y[-1] + 4.0 * np.sum(y[1:-1:2]) + 2.0 * np.sum(y[2:-1:2]))
