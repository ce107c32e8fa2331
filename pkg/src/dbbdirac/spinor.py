"""Two-component spinor values and their bilinear densities.

Matrix conventions are fixed: alpha^1 = sigma_x, alpha^2 = sigma_y,
beta = sigma_z.  With those, for psi = (psi1, psi2):

    rho   = |psi1|^2 + |psi2|^2
    j_x   = c (psi1* psi2 + psi2* psi1) = 2 c Re(psi1* psi2)
    j_y   = i c (-psi1* psi2 + psi2* psi1) = 2 c Im(psi1* psi2)
    sigma = (|psi1|^2 - |psi2|^2) / 2

and the Minkowski square of (c rho, j_x, j_y) equals (2 c sigma)^2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError
from .units import C

__all__ = ["Spinor", "CurrentBundle", "density", "flux", "scalar_density",
           "polar_flux", "current_bundle"]


@dataclass(frozen=True)
class Spinor:
    psi1: complex
    psi2: complex

    def __post_init__(self):
        if not (cmath.isfinite(self.psi1) and cmath.isfinite(self.psi2)):
            raise DomainError("spinor components must be finite")

    def scaled(self, factor: complex) -> "Spinor":
        return Spinor(self.psi1 * factor, self.psi2 * factor)


@dataclass(frozen=True)
class CurrentBundle:
    rho: float
    jx: float
    jy: float
    sigma: float


def density(s: Spinor) -> float:
    return abs(s.psi1) ** 2 + abs(s.psi2) ** 2


def flux(s: Spinor) -> tuple[float, float]:
    cross = s.psi1.conjugate() * s.psi2
    return 2.0 * C * cross.real, 2.0 * C * cross.imag


def scalar_density(s: Spinor) -> float:
    return 0.5 * (abs(s.psi1) ** 2 - abs(s.psi2) ** 2)


def polar_flux(jx: float, jy: float, phi: float) -> tuple[float, float]:
    """Radial and azimuthal flux components at polar angle phi (rotation by -phi)."""
    c, s = math.cos(phi), math.sin(phi)
    return c * jx + s * jy, -s * jx + c * jy


def current_bundle(s: Spinor) -> CurrentBundle:
    jx, jy = flux(s)
    return CurrentBundle(density(s), jx, jy, scalar_density(s))
