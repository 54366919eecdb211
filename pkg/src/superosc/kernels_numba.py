"""Numba-jitted hot kernels (same contracts as ``kernels_numpy``)."""

from __future__ import annotations

import numpy as np
from numba import njit

from .quadrature import GK_NODES, GK_WEIGHTS, G7_WEIGHTS

_NODES = np.ascontiguousarray(GK_NODES)
_WK = np.ascontiguousarray(GK_WEIGHTS)
_WG = np.ascontiguousarray(G7_WEIGHTS)


@njit(cache=True)
def _mode_sum_impl(x, weights, kappas):
    out = np.empty(x.size, dtype=np.complex128)
    for i in range(x.size):
        acc = 0.0 + 0.0j
        for j in range(kappas.size):
            acc += weights[j] * np.exp(1j * kappas[j] * x[i])
        out[i] = acc
    return out


def mode_sum(x, weights, kappas):
    x = np.ascontiguousarray(np.asarray(x, dtype=float))
    return _mode_sum_impl(
        x,
        np.ascontiguousarray(np.asarray(weights, dtype=complex)),
        np.ascontiguousarray(np.asarray(kappas, dtype=float)),
    )


@njit(cache=True)
def _gauss_mode_integral_impl(lo, hi, alpha, beta, lin, weights, kappas,
                              abs_tol, max_depth, nodes, wk, wg):
    total_width = hi - lo
    quad_coeff = complex(-beta, alpha)
    # DFS worklist; with depth-first processing the stack stays shallow.
    cap = 4 * max_depth + 16
    st_lo = np.empty(cap)
    st_hi = np.empty(cap)
    st_depth = np.empty(cap, dtype=np.int64)
    st_lo[0] = lo
    st_hi[0] = hi
    st_depth[0] = 0
    top = 1
    value = 0.0 + 0.0j
    err_total = 0.0
    fx = np.empty(15, dtype=np.complex128)
    while top > 0:
        top -= 1
        a = st_lo[top]
        b = st_hi[top]
        depth = st_depth[top]
        c = 0.5 * (a + b)
        h = 0.5 * (b - a)
        for q in range(15):
            x = c + h * nodes[q]
            env = np.exp(quad_coeff * x * x + 1j * lin * x)
            acc = 0.0 + 0.0j
            for j in range(kappas.size):
                acc += weights[j] * np.exp(1j * kappas[j] * x)
            fx[q] = env * acc
        k15 = 0.0 + 0.0j
        g7 = 0.0 + 0.0j
        for q in range(15):
            k15 += wk[q] * fx[q]
            g7 += wg[q] * fx[q]
        k15 *= h
        g7 *= h
        err = abs(k15 - g7)
        if err <= abs_tol * (b - a) / total_width or depth >= max_depth or top + 2 > cap:
            value += k15
            err_total += err
        else:
            st_lo[top] = c
            st_hi[top] = b
            st_depth[top] = depth + 1
            top += 1
            st_lo[top] = a
            st_hi[top] = c
            st_depth[top] = depth + 1
            top += 1
    return value, err_total


def gauss_mode_integral(lo, hi, alpha, beta, lin, weights, kappas,
                        abs_tol=1e-9, max_depth=30):
    return _gauss_mode_integral_impl(
        float(lo), float(hi), float(alpha), float(beta), float(lin),
        np.ascontiguousarray(np.asarray(weights, dtype=complex)),
        np.ascontiguousarray(np.asarray(kappas, dtype=float)),
        float(abs_tol), int(max_depth), _NODES, _WK, _WG,
    )
