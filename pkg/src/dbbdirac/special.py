"""Integer-order Bessel functions and the error function.

Thin validated wrappers over scipy.special.  ``bessel_y`` exists for test
oracles only; field evaluation never needs it.
"""

from __future__ import annotations

import numpy as np
import scipy.special as sp

from .errors import DomainError

__all__ = ["bessel_j", "bessel_y", "erf", "first_positive_zero"]


def bessel_j(n: int, x):
    """J_n(x) for integer n (possibly negative) and real x."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("bessel_j requires finite arguments")
    n = int(n)
    if n >= 0:
        out = sp.jv(n, x)
    else:
        # J_{-n}(x) = (-1)^n J_n(x)
        out = sp.jv(-n, x) * (-1.0 if n % 2 else 1.0)
    return float(out) if out.ndim == 0 else out


def bessel_y(n: int, x):
    """Y_n(x) for integer n >= 0 and x > 0.  Test support only."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or np.any(x <= 0.0):
        raise DomainError("bessel_y requires finite x > 0")
    n = int(n)
    if n >= 0:
        out = sp.yv(n, x)
    else:
        out = sp.yv(-n, x) * (-1.0 if n % 2 else 1.0)
    return float(out) if out.ndim == 0 else out


def erf(x):
    """Error function; accurate to better than 1e-12 over the real line."""
    if np.ndim(x) == 0:
        return float(sp.erf(float(x)))
    return sp.erf(np.asarray(x, dtype=float))


def first_positive_zero(n: int) -> float:
    """Smallest z > 0 with J_n(z) = 0, for n >= 0."""
    if n < 0:
        raise DomainError("first_positive_zero requires n >= 0")
    return float(sp.jn_zeros(int(n), 1)[0])


def positive_zeros(n: int, count: int) -> np.ndarray:
    """First ``count`` positive zeros of J_n; helper for orthogonality tests."""
    if n < 0 or count < 1:
        raise DomainError("need n >= 0 and count >= 1")
    return sp.jn_zeros(int(n), int(count))
