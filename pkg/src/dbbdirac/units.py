"""Graphene-adapted unit system and the massless/massive dispersion relation.

Lengths are in nm, times in ns, energies in meV.  Momenta are stored in
meV ns nm^-1 so that E = c p holds numerically with c = 1e6 nm/ns; CLI
inputs labelled "meV/c" are these internal numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["C", "HBAR", "PhysicalConstants", "CONSTANTS", "energy_of_momentum"]

#: Effective "velocity of light" (Fermi velocity) in nm/ns.
C: float = 1.0e6

#: Reduced Planck constant in meV ns.
HBAR: float = 6.5821e-4


@dataclass(frozen=True)
class PhysicalConstants:
    """Immutable constant bundle; the non-default constructor is test-only."""

    c: float = C
    hbar: float = HBAR


CONSTANTS = PhysicalConstants()


def energy_of_momentum(p: float, m: float = 0.0, constants: PhysicalConstants = CONSTANTS) -> float:
    """Angular frequency omega_p = sqrt(m^2 c^4 + p^2 c^2) / hbar, in ns^-1.

    ``p`` is the momentum in meV ns/nm, ``m`` the mass parameter in
    meV ns^2/nm^2 (so that m c^2 is an energy in meV).  The energy of the
    state in meV is ``hbar * omega_p``.
    """
    if not (p >= 0.0) or not (m >= 0.0):
        raise DomainError(f"momentum and mass must be non-negative, got p={p}, m={m}")
    c, hbar = constants.c, constants.hbar
    if m == 0.0:
        return c * p / hbar
    return math.hypot(m * c * c, p * c) / hbar
