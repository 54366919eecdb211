"""Classical ingredients of the propagator: g(t,t'), I, J, action, kernel.

Hamiltonian cases: (free) -h^2/2m Lap, (uniform) + constant force,
(harmonic) + m w^2 |x|^2 / 2, (driven) harmonic + time-dependent force.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import CausticError, DomainError
from .params import CASES, ForceModel, PhysicalParams
from .quadrature import adaptive_gauss_kronrod, composite_simpson, vectorize_scalar

_CAUSTIC_TOL = 1e-12


def _check_case(case):
    if case not in CASES:
        raise DomainError(f"unknown case {case!r}, expected one of {CASES}")


def g_factor(params: PhysicalParams, t: float, t_prime: float, case: str) -> float:
    """Jacobi factor of the classical flow: t - t' or sin(w(t-t'))/w."""
    _check_case(case)
    if case in ("free", "uniform"):
        return t - t_prime
    params.require_omega()
    return math.sin(params.omega * (t - t_prime)) / params.omega


def nearest_caustic(params: PhysicalParams, t: float, t_prime: float, case: str) -> float:
    """Time t* nearest to t at which g(t*, t') vanishes."""
    if case in ("free", "uniform"):
        return t_prime
    k = round(params.omega * (t - t_prime) / math.pi)
    return t_prime + k * math.pi / params.omega


def _require_regular(params, t, t_prime, case):
    g = g_factor(params, t, t_prime, case)
    if abs(g) < _CAUSTIC_TOL * max(1.0, abs(t - t_prime)):
        raise CausticError(
            f"caustic: g(t, t') vanishes near t* = {nearest_caustic(params, t, t_prime, case)!r}",
            singular_time=nearest_caustic(params, t, t_prime, case),
        )
    return g


def force_integral_I(params: PhysicalParams, force: ForceModel, t: float,
                     t_prime: float) -> np.ndarray:
    """(1/mw) * oriented integral over [t', t] of f(s) sin(w (s - t')) ds."""
    params.require_omega()
    m, w = params.m, params.omega
    T = t - t_prime
    if force.kind == "zero" or t == t_prime:
        return np.zeros(force.d)
    if force.kind == "constant":
        return force.f0 * (1.0 - math.cos(w * T)) / (m * w * w)
    if force.kind == "sinusoidal":
        return force.f0 * _sin_sin_integral(force.nu, force.phase, w, t_prime, t) / (m * w)
    # sampled: adaptive quadrature, 1e-12 absolute per component
    out = np.empty(force.d)
    for c in range(force.d):
        def g(s, c=c):
            return force(s)[:, c] * np.sin(w * (s - t_prime))
        val, _ = adaptive_gauss_kronrod(g, t_prime, t, abs_tol=1e-12)
        out[c] = val.real
    return out / (m * w)


def _sin_sin_integral(nu, phase, w, t_prime, t):
    """Integral of sin(nu s + phase) sin(w (s - t')) ds over [t', t].

    Product-to-sum antiderivative with a dedicated resonant branch at nu = w.
    """
    d = nu - w
    s_ = nu + w
    ph1 = phase + w * t_prime   # argument offset of the (nu - w) cosine
    ph2 = phase - w * t_prime

    def half_int(freq, ph):
        # integral of cos(freq s + ph) over [t', t]
        if abs(freq) < 1e-9 * max(1.0, abs(w)):
            return math.cos(ph) * (t - t_prime)
        return (math.sin(freq * t + ph) - math.sin(freq * t_prime + ph)) / freq

    return 0.5 * (half_int(d, ph1) - half_int(s_, ph2))


def force_integral_J(params: PhysicalParams, force: ForceModel, t: float,
                     t_prime: float) -> float:
    """Double force integral of case (4); closed form for zero/constant."""
    params.require_omega()
    m, w = params.m, params.omega
    T = t - t_prime
    if force.kind == "zero" or t == t_prime:
        return 0.0
    if force.kind == "constant":
        f2 = float(np.dot(force.f0, force.f0))
        return f2 * ((1.0 - math.cos(w * T)) / w - 0.5 * T * math.sin(w * T)) / (m * m * w ** 3)
    # Nested adaptive quadrature: inner integral per outer node, 1e-10 overall.
    def outer(s):
        fs = force(s)

        def g(sp):
            return (force(sp) @ fs) * np.sin(w * (sp - t_prime))

        inner_val, _ = adaptive_gauss_kronrod(g, t_prime, s, abs_tol=1e-12)
        return inner_val.real * math.sin(w * (t - s))

    val, _ = adaptive_gauss_kronrod(vectorize_scalar(outer), t_prime, t, abs_tol=1e-10)
    return val.real / (m * m * w * w)


def closed_form_IJ(params: PhysicalParams, force: ForceModel, t: float,
                   t_prime: float):
    """Analytic (I, J) for the zero/constant/sinusoidal force kinds."""
    params.require_omega()
    if force.kind in ("zero", "constant"):
        return force_integral_I(params, force, t, t_prime), force_integral_J(
            params, force, t, t_prime)
    if force.kind != "sinusoidal":
        raise DomainError(f"no closed form for force kind {force.kind!r}")
    m, w = params.m, params.omega
    I = force_integral_I(params, force, t, t_prime)
    # J via the closed-form inner integral I(s, t') and a fixed-order
    # Gauss-Legendre outer pass (machine precision for these trig integrands).
    f2 = float(np.dot(force.f0, force.f0))
    panels = max(1, int(abs(t - t_prime) * (abs(force.nu) + 2 * w) / 3.0) + 1)
    nodes, wts = np.polynomial.legendre.leggauss(32)
    edges = np.linspace(t_prime, t, panels + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        c, h = 0.5 * (a + b), 0.5 * (b - a)
        s = c + h * nodes
        inner = np.array([_sin_sin_integral(force.nu, force.phase, w, t_prime, si)
                          for si in s])
        vals = np.sin(force.nu * s + force.phase) * inner * np.sin(w * (t - s))
        total += h * float(np.dot(wts, vals))
    J = f2 * total / (m * m * w * w)
    return I, J


def action(params: PhysicalParams, force: ForceModel, t: float, x, t_prime: float,
           x_prime, case: str) -> float:
    """Classical action along the boundary-value trajectory (closed forms)."""
    _check_case(case)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    xp = np.atleast_1d(np.asarray(x_prime, dtype=float))
    m = params.m
    T = t - t_prime
    if case in ("free", "uniform"):
        if abs(T) < _CAUSTIC_TOL:
            raise CausticError("action singular at t = t'", singular_time=t_prime)
        s_free = m * float(np.dot(x - xp, x - xp)) / (2.0 * T)
        if case == "free":
            return s_free
        if force.kind not in ("zero", "constant"):
            raise DomainError("uniform case requires a constant (or zero) force")
        f0 = force.f0 if force.f0 is not None else np.zeros(params.d)
        f2 = float(np.dot(f0, f0))
        return s_free + 0.5 * T * float(np.dot(f0, x + xp)) - f2 * T ** 3 / (24.0 * m)
    params.require_omega()
    w = params.omega
    g = _require_regular(params, t, t_prime, case)
    swt = math.sin(w * T)
    cwt = math.cos(w * T)
    quad = (float(np.dot(x, x)) + float(np.dot(xp, xp))) * cwt - 2.0 * float(np.dot(x, xp))
    if case == "harmonic":
        return m * w / (2.0 * swt) * quad
    I_t = force_integral_I(params, force, t, t_prime)
    I_rev = force_integral_I(params, force, t_prime, t)
    J = force_integral_J(params, force, t, t_prime)
    extra = 2.0 * float(np.dot(x, I_t)) + 2.0 * float(np.dot(xp, I_rev)) - 2.0 * J
    return m * w / (2.0 * swt) * (quad + extra)


@dataclass(frozen=True)
class Trajectory:
    """Sampled boundary-value trajectory on a uniform time grid."""

    s: np.ndarray      # (steps+1,)
    y: np.ndarray      # (steps+1, d)
    ydot: np.ndarray   # (steps+1, d)


def solve_trajectory(params: PhysicalParams, force: ForceModel, t: float, x,
                     t_prime: float, x_prime, steps: int) -> Trajectory:
    """Solve y'' + w^2 y = f(s)/m with y(t') = x', y(t) = x.

    Closed form for zero/constant force; second-order finite differences
    otherwise.
    """
    if steps < 16:
        raise DomainError("steps must be >= 16")
    if steps % 2:
        steps += 1
    x = np.atleast_1d(np.asarray(x, dtype=float))
    xp = np.atleast_1d(np.asarray(x_prime, dtype=float))
    d = x.size
    m, w = params.m, params.omega
    T = t - t_prime
    if abs(T) < _CAUSTIC_TOL:
        raise CausticError("degenerate boundary value problem at t = t'",
                           singular_time=t_prime)
    s = np.linspace(t_prime, t, steps + 1)
    tau = s - t_prime

    if force.kind in ("zero", "constant"):
        f0 = force.f0 if force.kind == "constant" else np.zeros(d)
        if w > 0:
            swt = math.sin(w * T)
            if abs(swt) < _CAUSTIC_TOL:
                raise CausticError(
                    "caustic: boundary value problem not uniquely solvable",
                    singular_time=nearest_caustic(params, t, t_prime, "harmonic"))
            yp = f0 / (m * w * w)
            A = xp - yp
            B = (x - yp - A * math.cos(w * T)) / swt
            cos_t = np.cos(w * tau)[:, None]
            sin_t = np.sin(w * tau)[:, None]
            y = A * cos_t + B * sin_t + yp
            ydot = w * (-A * sin_t + B * cos_t)
        else:
            v = (x - xp - f0 * T * T / (2.0 * m)) / T
            y = xp + np.outer(tau, v) + np.outer(tau * tau, f0) / (2.0 * m)
            ydot = v + np.outer(tau, f0) / m
        return Trajectory(s=s, y=y, ydot=ydot)

    # Finite-difference linear solve (Thomas algorithm per component).
    if w > 0 and abs(math.sin(w * T)) < _CAUSTIC_TOL:
        raise CausticError("caustic: boundary value problem not uniquely solvable",
                           singular_time=nearest_caustic(params, t, t_prime, "harmonic"))
    h = T / steps
    n_int = steps - 1
    fvals = force(s) / m                              # (steps+1, d)
    diag = np.full(n_int, -2.0 / (h * h) + w * w)
    off = 1.0 / (h * h)
    y = np.empty((steps + 1, d))
    y[0], y[-1] = xp, x
    for c in range(d):
        rhs = fvals[1:-1, c].copy()
        rhs[0] -= off * xp[c]
        rhs[-1] -= off * x[c]
        y[1:-1, c] = _thomas(diag.copy(), off, rhs)
    ydot = np.empty_like(y)
    ydot[1:-1] = (y[2:] - y[:-2]) / (2.0 * h)
    ydot[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h)
    ydot[-1] = (3.0 * y[-1] - 4.0 * y[-2] + y[-3]) / (2.0 * h)
    return Trajectory(s=s, y=y, ydot=ydot)


def _thomas(diag, off, rhs):
    """Tridiagonal solve with constant off-diagonals (in-place on copies)."""
    n = rhs.size
    for i in range(1, n):
        m_ = off / diag[i - 1]
        diag[i] -= m_ * off
        rhs[i] -= m_ * rhs[i - 1]
    out = np.empty(n)
    out[-1] = rhs[-1] / diag[-1]
    for i in range(n - 2, -1, -1):
        out[i] = (rhs[i] - off * out[i + 1]) / diag[i]
    return out


def action_from_trajectory(params: PhysicalParams, force: ForceModel, t: float, x,
                           t_prime: float, x_prime, steps: int = 2048) -> float:
    """Independent action oracle: Lagrangian integrated along the BVP solution."""
    traj = solve_trajectory(params, force, t, x, t_prime, x_prime, steps)
    m, w = params.m, params.omega
    kinetic = 0.5 * m * np.sum(traj.ydot * traj.ydot, axis=1)
    potential = 0.5 * m * w * w * np.sum(traj.y * traj.y, axis=1)
    drive = np.sum(force(traj.s) * traj.y, axis=1)
    lagrangian = kinetic - potential + drive
    h = traj.s[1] - traj.s[0]
    return float(composite_simpson(lagrangian, h))


def propagator_kernel(params: PhysicalParams, force: ForceModel, t: float, x,
                      t_prime: float, x_prime, case: str) -> complex:
    """Exact propagator value [m/(2 pi i hbar g)]^{d/2} exp(i S / hbar).

    The d/2 power takes the principal square root of the base, then the
    integer power d; valid inside the first caustic window.
    """
    g = _require_regular(params, t, t_prime, case)
    base = params.m / (2.0j * math.pi * params.hbar * g)
    pref = cmath.sqrt(base) ** params.d
    S = action(params, force, t, x, t_prime, x_prime, case)
    return pref * cmath.exp(1j * S / params.hbar)
