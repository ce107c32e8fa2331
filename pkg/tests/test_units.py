import math

import pytest
from hypothesis import given, strategies as st

from dbbdirac.errors import DomainError
from dbbdirac.units import C, CONSTANTS, HBAR, PhysicalConstants, energy_of_momentum


def test_constant_values():
    assert C == 1.0e6
    assert HBAR == 6.5821e-4
    assert CONSTANTS.c == C
    assert CONSTANTS.hbar == HBAR


def test_constants_frozen():
    with pytest.raises(Exception):
        CONSTANTS.c = 2.0


def test_massless_dispersion_is_linear():
    for p in (1e-7, 1e-5, 1e-4, 3.7e-3):
        assert energy_of_momentum(p) == pytest.approx(C * p / HBAR, rel=1e-15)


def test_massive_dispersion_oracle():
    # independent oracle: explicit sqrt instead of hypot
    for p, m in [(1e-4, 1e-16), (1e-5, 1e-15), (2e-4, 5e-16)]:
        expected = math.sqrt((m * C * C) ** 2 + (p * C) ** 2) / HBAR
        assert energy_of_momentum(p, m) == pytest.approx(expected, rel=1e-13)


def test_energy_at_rest_is_mass_energy():
    m = 1e-16
    assert HBAR * energy_of_momentum(0.0, m) == pytest.approx(m * C * C, rel=1e-15)


def test_negative_inputs_rejected():
    with pytest.raises(DomainError):
        energy_of_momentum(-1e-4)
    with pytest.raises(DomainError):
        energy_of_momentum(1e-4, m=-1e-16)


def test_custom_constants_bundle():
    alt = PhysicalConstants(c=2.0, hbar=1.0)
    assert energy_of_momentum(3.0, constants=alt) == pytest.approx(6.0)


@given(p=st.floats(1e-8, 1e-2), m=st.floats(0.0, 1e-12))
def test_energy_dominates_both_limits(p, m):
    omega = energy_of_momentum(p, m)
    assert HBAR * omega >= C * p * (1.0 - 1e-12)
    assert HBAR * omega >= m * C * C * (1.0 - 1e-12)
