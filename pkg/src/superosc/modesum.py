"""Precision-aware weighted sums over the binomial mode coefficients.

The sums Sum_k C_k(n, a) e^{i phase(b_k)} with b_k = 1 - 2k/n are brutally
ill-conditioned for a > 1: the coefficients grow like ((1+a)/2)^n while the
sum stays O(1).  Double precision is used while the estimated cancellation
stays below the requested relative target; beyond that the evaluation
switches to mpmath with a working precision sized to the coefficient growth.
"""

from __future__ import annotations

import math

import mpmath as mp
import numpy as np

from .errors import DomainError

_EPS = np.finfo(float).eps
_SAFETY = 64.0


def coefficient(n: int, k: int, a: float) -> float:
    """Binomial mode weight C_k(n, a) = C(n,k) ((1+a)/2)^{n-k} ((1-a)/2)^k."""
    if not (0 <= k <= n):
        raise DomainError(f"k must satisfy 0 <= k <= n, got k={k}, n={n}")
    up = (1.0 + a) / 2.0
    dn = (1.0 - a) / 2.0
    if n <= 60:
        return math.comb(n, k) * up ** (n - k) * dn ** k
    # log-domain with explicit sign to dodge overflow of the raw product
    if dn == 0.0:
        return up ** n if k == 0 else 0.0
    if up == 0.0:
        return dn ** n if k == n else 0.0
    sign = (1.0 if up > 0 else (-1.0) ** (n - k)) * (1.0 if dn > 0 else (-1.0) ** k)
    logmag = (math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
              + (n - k) * math.log(abs(up)) + k * math.log(abs(dn)))
    return sign * math.exp(logmag)


def coefficients(n: int, a: float) -> np.ndarray:
    return np.array([coefficient(n, k, a) for k in range(n + 1)])


def coefficient_magnitude_sum(n: int, a: float) -> float:
    """Sum_k |C_k(n, a)| = max(1, |a|)^n; the cancellation scale of the sums."""
    return max(1.0, abs(a)) ** n


def needs_extended_precision(n: int, a: float, rel_target: float) -> bool:
    return _EPS * coefficient_magnitude_sum(n, a) * _SAFETY > rel_target


def working_dps(n: int, a: float) -> int:
    return 25 + int(math.ceil(n * math.log10(max(1.0, abs(a)))))


def coefficient_phase_sum(n: int, a: float, phase_fn, rel_target: float = 1e-12) -> complex:
    """Sum_k C_k(n, a) exp(i phase_fn(b_k)), b_k = 1 - 2k/n.

    ``phase_fn`` must map a real b (ndarray in the fast path, mpf in the
    extended-precision path) to a real phase using arithmetic valid for both.
    """
    if not needs_extended_precision(n, a, rel_target):
        b = 1.0 - 2.0 * np.arange(n + 1) / n
        return complex(np.sum(coefficients(n, a) * np.exp(1j * phase_fn(b))))
    with mp.workdps(working_dps(n, a)):
        up = (1 + mp.mpf(a)) / 2
        dn = (1 - mp.mpf(a)) / 2
        total = mp.mpc(0)
        for k in range(n + 1):
            ck = mp.binomial(n, k) * up ** (n - k) * dn ** k
            b = 1 - mp.mpf(2 * k) / n
            total += ck * mp.exp(mp.mpc(0, phase_fn(b)))
        return complex(total)


def coefficient_term_sum(n: int, a: float, term_fn, rel_target: float = 1e-12) -> complex:
    """Sum_k C_k(n, a) term_fn(b_k) for complex-valued terms of modulus <= O(1).

    ``term_fn`` must accept a scalar b (float or mpf) and return a complex
    (or mpc) value built from arithmetic valid in both number systems.
    """
    if not needs_extended_precision(n, a, rel_target):
        ck = coefficients(n, a)
        b = 1.0 - 2.0 * np.arange(n + 1) / n
        return complex(sum(ck[k] * term_fn(b[k]) for k in range(n + 1)))
    with mp.workdps(working_dps(n, a)):
        up = (1 + mp.mpf(a)) / 2
        dn = (1 - mp.mpf(a)) / 2
        total = mp.mpc(0)
        for k in range(n + 1):
            ck = mp.binomial(n, k) * up ** (n - k) * dn ** k
            total += ck * term_fn(1 - mp.mpf(2 * k) / n)
        return complex(total)
