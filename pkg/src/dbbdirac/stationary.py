"""Improper stationary basis solutions for fixed total angular momentum.

The regular radial solution at energy hbar*omega_p is

    h1(r) = i c p J_{j-1/2}(p r / hbar)
    h2(r) = -(hbar omega_p - m c^2) J_{j+1/2}(p r / hbar)

attached to the angular phases e^{i (j -/+ 1/2) phi} and the stationary
phase e^{-i omega_p t}.  The guidance velocity is purely azimuthal and
its magnitude never exceeds c.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SingularDensityError
from .special import bessel_j
from .spinor import Spinor
from .units import C, HBAR, energy_of_momentum

__all__ = ["StationaryState", "radial_functions", "spinor_at", "density_stat",
           "velocity_stat", "most_probable_radius"]

# step in the dimensionless radius x = p r / hbar used to bracket the first
# density maximum before golden-section refinement
_SCAN_STEP = 0.01
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class StationaryState:
    two_j: int           # twice the total angular momentum; odd, may be negative
    p: float             # momentum, meV ns / nm
    m: float = 0.0       # mass parameter, meV ns^2 / nm^2
    omega: float = field(init=False)

    def __post_init__(self):
        if self.two_j % 2 == 0:
            raise DomainError(f"two_j must be odd, got {self.two_j}")
        if not (self.p > 0.0):
            raise DomainError(f"momentum must be positive, got {self.p}")
        if not (self.m >= 0.0):
            raise DomainError(f"mass must be non-negative, got {self.m}")
        object.__setattr__(self, "omega", energy_of_momentum(self.p, self.m))

    @property
    def j(self) -> float:
        return 0.5 * self.two_j

    @property
    def lower_order(self) -> int:
        """Bessel order j - 1/2 of the upper spinor component."""
        return (self.two_j - 1) // 2

    @property
    def upper_order(self) -> int:
        """Bessel order j + 1/2 of the lower spinor component."""
        return (self.two_j + 1) // 2

    @property
    def energy_gap(self) -> float:
        """hbar omega_p - m c^2 in meV (equals c p for m = 0)."""
        return HBAR * self.omega - self.m * C * C


def radial_functions(s: StationaryState, r: float) -> tuple[complex, complex]:
    """Radial spinor components (h1, h2) at radius r >= 0."""
    if not (r >= 0.0):
        raise DomainError(f"radius must be non-negative, got {r}")
    x = s.p * r / HBAR
    h1 = 1j * C * s.p * bessel_j(s.lower_order, x)
    h2 = -s.energy_gap * bessel_j(s.upper_order, x)
    return h1, h2


def spinor_at(s: StationaryState, r: float, phi: float, t: float) -> Spinor:
    h1, h2 = radial_functions(s, r)
    tphase = cmath.exp(-1j * s.omega * t)
    return Spinor(
        tphase * cmath.exp(1j * (s.j - 0.5) * phi) * h1,
        tphase * cmath.exp(1j * (s.j + 0.5) * phi) * h2,
    )


def density_stat(s: StationaryState, r) -> float | np.ndarray:
    """rho(r) = (c p)^2 J_{j-1/2}^2 + (hbar omega - m c^2)^2 J_{j+1/2}^2."""
    x = s.p * np.asarray(r, dtype=float) / HBAR
    out = (C * s.p) ** 2 * bessel_j(s.lower_order, x) ** 2 \
        + s.energy_gap ** 2 * bessel_j(s.upper_order, x) ** 2
    return float(out) if np.ndim(out) == 0 else out


def velocity_stat(s: StationaryState, r: float) -> tuple[float, float]:
    """(v_r, v_phi) of the guidance field; v_r is identically zero."""
    if not (r >= 0.0):
        raise DomainError(f"radius must be non-negative, got {r}")
    x = s.p * r / HBAR
    a = C * s.p * bessel_j(s.lower_order, x)
    b = s.energy_gap * bessel_j(s.upper_order, x)
    rho = a * a + b * b
    if rho == 0.0:
        raise SingularDensityError(f"density vanishes at r={r}")
    return 0.0, 2.0 * C * a * b / rho


def most_probable_radius(s: StationaryState) -> float:
    """First local maximum of the stationary density (m = 0 regime).

    For j = 1/2 the density is maximal at the origin and 0.0 is returned.
    Otherwise the maximum is bracketed by a fixed-step scan in x = p r/hbar
    and refined by golden-section search.
    """
    if s.m != 0.0:
        raise DomainError("most_probable_radius is defined for the massless case")
    if s.two_j < 0:
        raise DomainError("most_probable_radius expects j > 0")

    def f(x):
        return bessel_j(s.lower_order, x) ** 2 + bessel_j(s.upper_order, x) ** 2

    if s.two_j == 1:
        return 0.0

    x0, f0 = 0.0, f(0.0)
    x1, f1 = _SCAN_STEP, f(_SCAN_STEP)
    while True:
        x2 = x1 + _SCAN_STEP
        f2 = f(x2)
        if f0 < f1 >= f2:
            break
        x0, f0, x1, f1 = x1, f1, x2, f2

    lo, hi = x0, x2
    while hi - lo > 1e-12:
        d = _GOLDEN * (hi - lo)
        a, b = hi - d, lo + d
        if f(a) < f(b):
            lo = a
        else:
            hi = b
    return 0.5 * (lo + hi) * HBAR / s.p
