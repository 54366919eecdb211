"""Classical propagator ingredients against independent oracles."""

import cmath
import math

import numpy as np
import pytest
import scipy.integrate

from superosc.errors import CausticError, DomainError
from superosc.oscillator import (
    action,
    action_from_trajectory,
    closed_form_IJ,
    force_integral_I,
    force_integral_J,
    g_factor,
    nearest_caustic,
    propagator_kernel,
    solve_trajectory,
)
from superosc.params import ForceModel, PhysicalParams

PAR = PhysicalParams(m=1.3, omega=1.1, hbar=0.9, d=1)
PAR_FREE = PhysicalParams(m=1.3, omega=0.0, hbar=0.9, d=1)


def test_g_factor_cases():
    assert g_factor(PAR, 0.7, 0.2, "free") == pytest.approx(0.5)
    assert g_factor(PAR, 0.7, 0.2, "harmonic") == pytest.approx(
        math.sin(1.1 * 0.5) / 1.1)


def test_nearest_caustic_and_error():
    t_star = math.pi / PAR.omega + 0.2
    assert nearest_caustic(PAR, t_star + 1e-3, 0.2, "harmonic") == pytest.approx(t_star)
    with pytest.raises(CausticError) as exc:
        action(PAR, ForceModel.zero(1), t_star, [1.0], 0.2, [0.0], "harmonic")
    assert exc.value.singular_time == pytest.approx(t_star)


def _scipy_I(params, force, t, t_prime):
    def f(s):
        return float(force(s)[0]) * math.sin(params.omega * (s - t_prime))
    val, _ = scipy.integrate.quad(f, t_prime, t)
    return val / (params.m * params.omega)


def _scipy_J(params, force, t, t_prime):
    w = params.omega

    def inner(s):
        val, _ = scipy.integrate.quad(
            lambda sp: float(force(sp)[0]) * float(force(s)[0])
            * math.sin(w * (sp - t_prime)), t_prime, s)
        return val * math.sin(w * (t - s))

    val, _ = scipy.integrate.quad(inner, t_prime, t, limit=200)
    return val / (params.m * params.omega) ** 2


@pytest.mark.parametrize("force", [
    ForceModel.constant([0.8]),
    ForceModel.sinusoidal([0.7], 0.5, 0.3),
    ForceModel.sinusoidal([0.7], 1.1, 0.0),   # resonant with omega
    ForceModel.sampled(lambda s: np.array([0.4 * s + 0.1 * s * s]), 1),
])
def test_force_integrals_match_scipy(force):
    t, t_prime = 0.9, 0.1
    I = force_integral_I(PAR, force, t, t_prime)
    assert abs(I[0] - _scipy_I(PAR, force, t, t_prime)) < 1e-10
    J = force_integral_J(PAR, force, t, t_prime)
    assert abs(J - _scipy_J(PAR, force, t, t_prime)) < 1e-8


def test_closed_form_IJ_sinusoidal():
    force = ForceModel.sinusoidal([0.7], 0.5, 0.3)
    I, J = closed_form_IJ(PAR, force, 0.9, 0.1)
    assert abs(I[0] - _scipy_I(PAR, force, 0.9, 0.1)) < 1e-12
    assert abs(J - _scipy_J(PAR, force, 0.9, 0.1)) < 1e-10


def test_free_action_example():
    # m=1, T=1, displacement 2: S = m dx^2 / 2T = 2
    par = PhysicalParams(m=1.0, omega=0.0, hbar=1.0, d=1)
    assert action(par, ForceModel.zero(1), 1.0, [2.0], 0.0, [0.0], "free") == pytest.approx(2.0)
    assert action_from_trajectory(par, ForceModel.zero(1), 1.0, [2.0], 0.0, [0.0]) == pytest.approx(2.0)


@pytest.mark.parametrize("case,params,force", [
    ("free", PAR_FREE, ForceModel.zero(1)),
    ("uniform", PAR_FREE, ForceModel.constant([0.8])),
    ("harmonic", PAR, ForceModel.zero(1)),
    ("driven", PAR, ForceModel.constant([0.8])),
])
def test_action_matches_trajectory_oracle(case, params, force):
    rng = np.random.default_rng(3)
    for _ in range(10):
        t = rng.uniform(0.2, 1.2)
        x, xp = rng.uniform(-2, 2, size=2)
        s_cf = action(params, force, t, [x], 0.0, [xp], case)
        s_tr = action_from_trajectory(params, force, t, [x], 0.0, [xp], steps=2048)
        assert abs(s_cf - s_tr) < 1e-8


def test_driven_sinusoidal_action_consistency():
    force = ForceModel.sinusoidal([0.7], 0.5, 0.3)
    s_cf = action(PAR, force, 1.0, [0.8], 0.0, [-0.3], "driven")
    s_tr = action_from_trajectory(PAR, force, 1.0, [0.8], 0.0, [-0.3], steps=4096)
    assert abs(s_cf - s_tr) < 1e-6  # FD trajectory path is O(h^2)


def test_trajectory_hits_boundaries_and_ode():
    force = ForceModel.sinusoidal([0.7], 0.5, 0.3)
    traj = solve_trajectory(PAR, force, 1.0, [0.8], 0.0, [-0.3], steps=512)
    assert traj.y[0, 0] == pytest.approx(-0.3)
    assert traj.y[-1, 0] == pytest.approx(0.8)
    # interior residual of y'' + w^2 y = f/m
    h = traj.s[1] - traj.s[0]
    ypp = (traj.y[2:, 0] - 2 * traj.y[1:-1, 0] + traj.y[:-2, 0]) / h ** 2
    res = ypp + PAR.omega ** 2 * traj.y[1:-1, 0] - force(traj.s[1:-1])[:, 0] / PAR.m
    assert np.max(np.abs(res)) < 1e-8


def test_simpson_order_of_action_oracle():
    errs = []
    for steps in (256, 512):
        s_tr = action_from_trajectory(PAR, ForceModel.zero(1), 1.0, [0.8], 0.0,
                                      [-0.3], steps=steps)
        s_cf = action(PAR, ForceModel.zero(1), 1.0, [0.8], 0.0, [-0.3], "harmonic")
        errs.append(abs(s_tr - s_cf))
    assert math.log2(errs[0] / errs[1]) > 3.9


def test_free_kernel_value():
    par = PhysicalParams(m=1.0, omega=0.0, hbar=1.0, d=1)
    val = propagator_kernel(par, ForceModel.zero(1), 1.0, [0.3], 0.0, [0.3], "free")
    assert abs(val - 1.0 / cmath.sqrt(2j * math.pi)) < 1e-14


def test_uniform_requires_constant_force():
    with pytest.raises(DomainError):
        action(PAR_FREE, ForceModel.sinusoidal([0.7], 0.5), 1.0, [0.0], 0.0,
               [1.0], "uniform")


def test_unknown_case_rejected():
    with pytest.raises(DomainError):
        g_factor(PAR, 1.0, 0.0, "anharmonic")
