"""Mode-lattice persistence machinery."""

import math

import numpy as np
import pytest

from superosc.errors import CausticError, DomainError, PeriodicityError
from superosc.modesum import coefficients
from superosc.oscillator import propagator_kernel
from superosc.params import ForceModel, PhysicalParams
from superosc.persistence import (
    ModeCoefficients,
    ModeLattice,
    PotentialModel,
    evolve_coefficients,
    evolve_field,
    extract_coefficients,
    free_kernel_limit,
    gram_matrix,
    periodicity_check,
    reconstruct,
    reconstruct_grid,
)
from superosc.sequences import SuperoscSpec
from superosc.evolution import free_particle_mode_sum

PAR = PhysicalParams(m=1.0, omega=0.0, hbar=1.0, d=1)
LAT = ModeLattice(n=[6], p=[1.3])
RNG = np.random.default_rng(5)


def _random_coeffs(lattice):
    v = RNG.standard_normal(lattice.shape) + 1j * RNG.standard_normal(lattice.shape)
    return ModeCoefficients(t=0.0, values=v)


def _field_of(lattice, coeffs):
    def field(x):
        x = np.asarray(x, dtype=float)
        if x.ndim == 2 and lattice.d == 1:
            return reconstruct_grid(lattice, coeffs, x[:, 0])
        return reconstruct(lattice, coeffs, x)
    return field


def test_lattice_geometry():
    assert LAT.size == 13
    lo, hi = LAT.box()[0]
    assert hi == pytest.approx(6 * math.pi / 1.3)
    assert lo == pytest.approx(-hi)
    assert LAT.base_frequency(0) == pytest.approx(1.3 / 6)


def test_gram_identity():
    G = gram_matrix(LAT)
    assert np.max(np.abs(G - np.eye(LAT.size))) < 1e-12


def test_extract_single_mode_is_indicator():
    w = LAT.base_frequency(0)
    c = extract_coefficients(LAT, lambda x: np.exp(1j * 4 * w * np.asarray(x).ravel()[-1]))
    expect = np.zeros(13, dtype=complex)
    expect[4 + 6] = 1.0
    assert np.max(np.abs(c.values - expect)) < 1e-12


def test_extract_recovers_sequence_coefficients():
    # F_n (n = 6, matching p) is a lattice trigonometric polynomial
    spec = SuperoscSpec(a=2.0, p=[1.3], n=[6])

    def field(x):
        th = 1.3 * np.asarray(x).ravel()[-1] / 6.0
        return (np.cos(th) + 2j * np.sin(th)) ** 6

    got = extract_coefficients(LAT, field).values
    expect = np.zeros(13, dtype=complex)
    ck = coefficients(6, 2.0)
    for k in range(7):
        expect[(6 - 2 * k) + 6] = ck[k]  # mode index n - 2k
    assert np.max(np.abs(got - expect)) < 1e-12


def test_round_trip():
    coeffs = _random_coeffs(LAT)
    back = extract_coefficients(LAT, _field_of(LAT, coeffs))
    assert np.max(np.abs(back.values - coeffs.values)) < 1e-12


def test_evolution_identity_and_unitarity():
    coeffs = _random_coeffs(LAT)
    V = PotentialModel.constant(0.4)
    same = evolve_coefficients(LAT, coeffs, V, 0.0)
    assert np.max(np.abs(same.values - coeffs.values)) < 1e-15
    later = evolve_coefficients(LAT, coeffs, V, 0.8)
    assert np.max(np.abs(np.abs(later.values) - np.abs(coeffs.values))) < 1e-13
    # V = 0 leaves the k = 0 mode untouched
    free = evolve_coefficients(LAT, coeffs, PotentialModel.zero(), 0.8)
    assert free.values[6] == pytest.approx(coeffs.values[6])


def test_constant_potential_is_common_phase():
    coeffs = _random_coeffs(LAT)
    t = 0.7
    with_v = evolve_coefficients(LAT, coeffs, PotentialModel.constant(0.4), t)
    without = evolve_coefficients(LAT, coeffs, PotentialModel.zero(), t)
    ratio = with_v.values / without.values
    assert np.max(np.abs(ratio - np.exp(-0.4j * t))) < 1e-13


def test_callable_potential_integral():
    V = PotentialModel(fn=lambda t: 0.3 * t * t)
    assert V.integral(0.0, 2.0) == pytest.approx(0.8, abs=1e-12)


def test_extraction_commutes_with_evolution():
    coeffs = _random_coeffs(LAT)
    V = PotentialModel.constant(0.4)
    t = 0.8
    evolved = evolve_coefficients(LAT, coeffs, V, t)
    re_extracted = extract_coefficients(LAT, _field_of(LAT, evolved), t_prime=t)
    assert np.max(np.abs(re_extracted.values - evolved.values)) < 1e-10


def test_matches_free_particle_mode_sum():
    spec = SuperoscSpec(a=2.0, p=[1.3], n=[6])

    def field(x):
        th = 1.3 * np.asarray(x).ravel()[-1] / 6.0
        return (np.cos(th) + 2j * np.sin(th)) ** 6

    for x in (-0.7, 0.0, 1.1):
        lattice_val = evolve_field(LAT, field, PotentialModel.zero(), 0.5, [x])
        ref = free_particle_mode_sum(PAR, spec, 0.5, [x])
        assert abs(lattice_val - ref) < 1e-10


def test_free_kernel_limit_matches_propagator():
    V0 = PotentialModel.zero()
    val = free_kernel_limit(PAR, V0, 0.9, 0.1, [0.3], [-0.2])
    ref = propagator_kernel(PAR, ForceModel.zero(1), 0.9, [0.3], 0.1, [-0.2], "free")
    assert abs(val - ref) < 1e-14
    # modulus independent of positions
    other = free_kernel_limit(PAR, V0, 0.9, 0.1, [5.0], [2.0])
    assert abs(abs(val) - abs(other)) < 1e-14
    assert abs(abs(val) - math.sqrt(1.0 / (2 * math.pi * 0.8))) < 1e-14
    with pytest.raises(CausticError):
        free_kernel_limit(PAR, V0, 0.5, 0.5, [0.0], [0.0])


def test_kernel_limit_approximates_lattice_at_large_n():
    # smooth periodic datum on a large lattice vs the limiting free kernel
    lat = ModeLattice(n=[48], p=[1.3])
    L = lat.box()[0, 1] - lat.box()[0, 0]

    def smooth(x):
        xx = np.asarray(x, dtype=float)
        xx = xx[:, 0] if xx.ndim == 2 else xx[-1]
        return np.exp(1j * np.sin(2 * math.pi * xx / L)) * (2 + np.cos(2 * math.pi * xx / L))

    from superosc.evolution import quadrature_evolve
    lattice_val = evolve_field(lat, smooth, PotentialModel.zero(), 0.3, [0.2])
    kernel_val = quadrature_evolve(PAR, ForceModel.zero(1),
                                   lambda xp: np.exp(1j * np.sin(2 * math.pi * xp / L))
                                   * (2 + np.cos(2 * math.pi * xp / L)),
                                   0.3, 0.2, case="free")
    assert abs(lattice_val - kernel_val) < 1e-3


def _sparse_field(lattice, active):
    values = np.zeros(lattice.shape, dtype=complex)
    for k, v in active.items():
        values[k + lattice.n[0]] = v
    coeffs = ModeCoefficients(t=0.0, values=values)
    return coeffs, _field_of(lattice, coeffs)


def test_periodicity_lattice_path():
    # active modes with gcd 3: period 2 pi / (3 w)
    _, field = _sparse_field(LAT, {-6: 0.3 + 0.1j, -3: 0.2, 0: 1.0, 3: -0.4j, 6: 0.05})
    X = [2 * math.pi / (3 * LAT.base_frequency(0))]
    rep = periodicity_check(PAR, LAT, field, X, t=1.1,
                            V=PotentialModel.constant(0.2))
    assert rep.passed
    assert rep.final_defect <= rep.initial_defect + 1e-10


def test_periodicity_single_mode_exact():
    _, field = _sparse_field(LAT, {4: 1.0})
    X = [2 * math.pi / (4 * LAT.base_frequency(0))]
    rep = periodicity_check(PAR, LAT, field, X, t=0.9)
    assert rep.final_defect < 1e-12


def test_periodicity_quadrature_path():
    _, field = _sparse_field(LAT, {-6: 0.3 + 0.1j, -3: 0.2, 0: 1.0, 3: -0.4j, 6: 0.05})
    X = [2 * math.pi / (3 * LAT.base_frequency(0))]
    rep = periodicity_check(PAR, LAT, field, X, t=0.7, path="quadrature",
                            test_points=5)
    assert rep.passed
    assert rep.final_defect < 1e-4


def test_periodicity_guard_rejects_aperiodic_input():
    _, field = _sparse_field(LAT, {1: 1.0, 2: 0.5})
    X = [2 * math.pi / (2 * LAT.base_frequency(0))]  # not a period of mode 1
    with pytest.raises(PeriodicityError) as exc:
        periodicity_check(PAR, LAT, field, X, t=0.5)
    assert exc.value.defect > 0.1


def test_periodicity_rejects_bad_period_vector():
    _, field = _sparse_field(LAT, {0: 1.0})
    with pytest.raises(DomainError):
        periodicity_check(PAR, LAT, field, [0.0], t=0.5)


def test_multidim_round_trip():
    lat2 = ModeLattice(n=[2, 3], p=[1.0, 1.7])
    values = RNG.standard_normal(lat2.shape) + 1j * RNG.standard_normal(lat2.shape)
    coeffs = ModeCoefficients(t=0.0, values=values)
    field = lambda x: reconstruct(lat2, coeffs, x)
    back = extract_coefficients(lat2, field)
    assert np.max(np.abs(back.values - coeffs.values)) < 1e-12
