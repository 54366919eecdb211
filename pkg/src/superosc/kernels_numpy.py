"""Pure-numpy implementations of the hot kernels.

Reference semantics for the numba versions; selected at import time by the
``SUPEROSC_NO_NUMBA`` environment flag (see ``backend``).
"""

from __future__ import annotations

import numpy as np

from .quadrature import GK_NODES, GK_WEIGHTS, G7_WEIGHTS


def mode_sum(x, weights, kappas):
    """Sum_j w_j exp(i kappa_j x) evaluated on the sample array x."""
    x = np.asarray(x, dtype=float)
    return np.exp(1j * np.outer(x, np.asarray(kappas))) @ np.asarray(weights, dtype=complex)


def gauss_mode_integral(lo, hi, alpha, beta, lin, weights, kappas,
                        abs_tol=1e-9, max_depth=30):
    """Adaptive GK15 of exp((i alpha - beta) x^2 + i lin x) * mode_sum(x).

    Batched bisection: all pending panels are evaluated per sweep, which keeps
    the numpy fallback within a small factor of the jitted version.
    Returns (value, error_estimate).
    """
    weights = np.asarray(weights, dtype=complex)
    kappas = np.asarray(kappas, dtype=float)
    quad_coeff = 1j * alpha - beta
    total_width = hi - lo

    los = np.array([lo], dtype=float)
    his = np.array([hi], dtype=float)
    depths = np.array([0], dtype=np.int64)
    value = 0.0 + 0.0j
    err_total = 0.0

    while los.size:
        c = 0.5 * (los + his)
        h = 0.5 * (his - los)
        x = c[:, None] + h[:, None] * GK_NODES          # (P, 15)
        envelope = np.exp(quad_coeff * x * x + 1j * lin * x)
        modes = np.exp(1j * x[..., None] * kappas) @ weights
        fx = envelope * modes
        k15 = h * (fx @ GK_WEIGHTS)
        g7 = h * (fx @ G7_WEIGHTS)
        err = np.abs(k15 - g7)
        budget = abs_tol * (his - los) / total_width
        done = (err <= budget) | (depths >= max_depth)
        value += np.sum(k15[done])
        err_total += np.sum(err[done])
        split = ~done
        mid = c[split]
        los, his, depths = (
            np.concatenate([los[split], mid]),
            np.concatenate([mid, his[split]]),
            np.concatenate([depths[split] + 1, depths[split] + 1]),
        )
    return value, err_total
