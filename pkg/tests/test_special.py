import math

import numpy as np
from scipy.integrate import trapezoid
import pytest

from dbbdirac.errors import DomainError
from dbbdirac.special import (bessel_j, bessel_y, erf, first_positive_zero,
                              positive_zeros)


def bessel_series(n, x, terms=60):
    """Ascending-series oracle sum_k (-1)^k (x/2)^(n+2k) / (k! (n+k)!)."""
    total = 0.0
    for k in range(terms):
        total += (-1.0) ** k * (0.5 * x) ** (n + 2 * k) / (
            math.factorial(k) * math.factorial(n + k))
    return total


def erf_quadrature(x, n=20000):
    """Trapezoid oracle 2/sqrt(pi) int_0^x exp(-t^2) dt."""
    t = np.linspace(0.0, x, n)
    return 2.0 / math.sqrt(math.pi) * trapezoid(np.exp(-t * t), t)


def zero_bisection(n):
    """Bisection oracle for the first positive zero of J_n."""
    lo = max(n, 0.5)          # J_n has no zero below its order
    hi = lo + 0.5
    while bessel_series(n, lo) * bessel_series(n, hi) > 0.0:
        lo, hi = hi, hi + 0.5
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if bessel_series(n, lo) * bessel_series(n, mid) <= 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


@pytest.mark.parametrize("n", range(6))
def test_bessel_against_series_oracle(n):
    for x in np.linspace(0.0, 10.0, 41):
        assert bessel_j(n, x) == pytest.approx(bessel_series(n, x), abs=1e-10)


def test_bessel_negative_order_parity():
    for n in range(1, 8):
        for x in (0.3, 1.7, 5.2):
            assert bessel_j(-n, x) == pytest.approx(
                (-1.0) ** n * bessel_j(n, x), rel=1e-14)


def test_bessel_vectorized_matches_scalar():
    x = np.linspace(0.1, 20.0, 57)
    vec = bessel_j(3, x)
    for xi, vi in zip(x, vec):
        assert vi == bessel_j(3, float(xi))


def test_bessel_rejects_nonfinite():
    with pytest.raises(DomainError):
        bessel_j(2, float("nan"))
    with pytest.raises(DomainError):
        bessel_j(2, np.array([1.0, float("inf")]))


def test_bessel_y_domain():
    assert np.isfinite(bessel_y(1, 2.5))
    with pytest.raises(DomainError):
        bessel_y(1, 0.0)
    with pytest.raises(DomainError):
        bessel_y(1, -3.0)


def test_erf_against_quadrature_oracle():
    for x in (0.1, 0.5, 1.0, 2.0, 3.0):
        assert erf(x) == pytest.approx(erf_quadrature(x), abs=1e-8)
    assert erf(0.0) == 0.0
    assert erf(-1.3) == pytest.approx(-erf(1.3), rel=1e-14)


def test_first_zero_against_bisection_oracle():
    for n in range(5):
        assert first_positive_zero(n) == pytest.approx(zero_bisection(n), abs=1e-9)


def test_positive_zeros_increasing_and_consistent():
    zs = positive_zeros(2, 6)
    assert np.all(np.diff(zs) > 0)
    assert zs[0] == first_positive_zero(2)
    for z in zs:
        assert bessel_j(2, z) == pytest.approx(0.0, abs=1e-12)


def test_fourier_bessel_orthogonality():
    # int_0^1 x J_n(a_i x) J_n(a_j x) dx = delta_ij J_{n+1}(a_i)^2 / 2
    n = 2
    zeros = positive_zeros(n, 4)
    x = np.linspace(0.0, 1.0, 200001)
    for i, zi in enumerate(zeros):
        for k, zk in enumerate(zeros):
            integral = trapezoid(x * bessel_j(n, zi * x) * bessel_j(n, zk * x), x)
            expected = 0.5 * bessel_j(n + 1, zi) ** 2 if i == k else 0.0
            assert integral == pytest.approx(expected, abs=1e-6)


def test_zero_helpers_reject_bad_input():
    with pytest.raises(DomainError):
        first_positive_zero(-1)
    with pytest.raises(DomainError):
        positive_zeros(2, 0)
