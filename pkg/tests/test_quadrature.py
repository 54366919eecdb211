"""Generic quadrature and extrapolation machinery."""

import cmath
import math

import numpy as np
import pytest
import scipy.integrate

from superosc.errors import ExtrapolationError, QuadratureError
from superosc.quadrature import (
    DEFAULT_BETA_SCHEDULE,
    GK_NODES,
    GK_WEIGHTS,
    G7_WEIGHTS,
    adaptive_gauss_kronrod,
    beta_extrapolate,
    composite_simpson,
    regularized_integral,
    vectorize_scalar,
)


def test_gk_constants_sanity():
    assert abs(np.sum(GK_WEIGHTS) - 2.0) < 1e-12
    assert abs(np.sum(G7_WEIGHTS) - 2.0) < 1e-12
    assert np.all(np.diff(GK_NODES) > 0)


def test_smooth_integral_matches_scipy():
    f = lambda x: np.exp(-x * x) * np.cos(3 * x)
    val, err = adaptive_gauss_kronrod(f, -4.0, 5.0, abs_tol=1e-13)
    ref, _ = scipy.integrate.quad(lambda x: math.exp(-x * x) * math.cos(3 * x), -4.0, 5.0)
    assert abs(val - ref) < 1e-12
    assert err < 1e-12


def test_oscillatory_integral():
    val, _ = adaptive_gauss_kronrod(lambda x: np.cos(50 * x), 0.0, 10.0, abs_tol=1e-12)
    assert abs(val - math.sin(500) / 50.0) < 1e-11


def test_oriented_bounds():
    fwd, _ = adaptive_gauss_kronrod(lambda x: x * x, 0.0, 2.0)
    bwd, _ = adaptive_gauss_kronrod(lambda x: x * x, 2.0, 0.0)
    assert abs(fwd - 8.0 / 3.0) < 1e-13
    assert abs(fwd + bwd) < 1e-13


def test_zero_width_interval():
    val, err = adaptive_gauss_kronrod(lambda x: np.exp(x), 1.0, 1.0)
    assert val == 0.0 and err == 0.0


def test_depth_cap_raises():
    # integrable endpoint singularity, but far too few levels allowed
    f = lambda x: 1.0 / np.sqrt(np.abs(x) + 1e-300)
    with pytest.raises(QuadratureError) as exc:
        adaptive_gauss_kronrod(f, 0.0, 1.0, abs_tol=1e-12, max_depth=3)
    assert exc.value.achieved is not None


def test_vectorize_scalar():
    g = vectorize_scalar(lambda x: x ** 2)
    assert np.allclose(g(np.array([1.0, 2.0])), [1.0, 4.0])


def test_beta_extrapolate_exact_for_quadratics():
    betas = np.asarray(DEFAULT_BETA_SCHEDULE)
    values = 3.0 - 2.0j + 5.0 * betas + 7.0 * betas ** 2
    limit, err = beta_extrapolate(betas, values)
    assert abs(limit - (3.0 - 2.0j)) < 1e-12


def test_beta_extrapolate_rejects_unsettled_tail():
    betas = np.asarray(DEFAULT_BETA_SCHEDULE)
    values = np.array([1.0, 1.001, 1.002, 1.5])  # tail jumps instead of settling
    with pytest.raises(ExtrapolationError):
        beta_extrapolate(betas, values)


def test_regularized_fresnel_integral():
    # int e^{i x^2} dx = sqrt(i pi)
    val, _ = regularized_integral(lambda x: np.exp(1j * x * x))
    assert abs(val - cmath.sqrt(1j * math.pi)) < 1e-6


def test_regularized_gaussian_is_trivial_case():
    # residual is the cubic interpolation error of the beta schedule, ~3e-8
    val, _ = regularized_integral(lambda x: np.exp(-x * x))
    assert abs(val - math.sqrt(math.pi)) < 1e-7


def test_composite_simpson_order():
    f = lambda s: np.sin(3.0 * s) + s ** 4
    exact = (1 - math.cos(3.0)) / 3.0 + 0.2
    errs = []
    for steps in (64, 128):
        s = np.linspace(0.0, 1.0, steps + 1)
        errs.append(abs(composite_simpson(f(s), s[1] - s[0]) - exact))
    order = math.log2(errs[0] / errs[1])
    assert order > 3.9


def test_composite_simpson_rejects_odd_panels():
    with pytest.raises(ValueError):
        composite_simpson(np.zeros(4), 0.1)
