"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class SingularDensityError(ArithmeticError):
    """The probability density vanishes exactly where a velocity was requested."""


class LowDensityError(ArithmeticError):
    """The density fell below the guard floor; velocity would be numerically garbage."""

    def __init__(self, r, t, rho, floor):
        super().__init__(
            f"density {rho:.3e} below floor {floor:.3e} at r={r:.6g} nm, t={t:.6g} ns"
        )
        self.r = r
        self.t = t
        self.rho = rho
        self.floor = floor


class IntegrationStallError(RuntimeError):
    """Trajectory integration could not proceed (stall or step underflow)."""


class NonInvertibleFlightError(RuntimeError):
    """The time-of-flight curve is not monotone, so the density formula is unusable."""


class FluxPositivityError(RuntimeError):
    """Radial flux at the detector went negative; the flux density formula does not apply."""
