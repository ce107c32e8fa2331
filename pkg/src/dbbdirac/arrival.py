"""Times of flight to a circular detector and arrival-time densities.

Two independent routes to the arrival-time density Pi(tau):

* trajectory route: invert the monotone time-of-flight curve
  t_flight(r0) and weight by the initial density,
  Pi(tau) proportional to r0(tau) rho(r0(tau), 0) / |dt_flight/dr0|;
* flux route: Pi_flux(tau) proportional to R j_r(R, tau), valid while
  the radial flux at the detector stays positive.

Both densities are normalized by trapezoid quadrature on the tau grid.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp, trapezoid
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from .errors import (DomainError, FluxPositivityError, LowDensityError,
                     NonInvertibleFlightError)
from .packet import PacketSpec, field_sample, fields_on_grid, velocity
from .dynamics import ORIGIN_OFFSET

__all__ = ["DetectorSpec", "ArrivalRecord", "time_of_flight", "flight_sweep",
           "arrival_density_traj", "arrival_density_flux", "compute_arrival",
           "default_r0_grid", "default_tau_grid"]


@dataclass(frozen=True)
class DetectorSpec:
    radius_R: float

    def __post_init__(self):
        if not (self.radius_R > 0.0):
            raise DomainError("detector radius must be positive")


@dataclass
class ArrivalRecord:
    r0_grid: np.ndarray
    t_flight: np.ndarray
    tau_grid: np.ndarray
    pi_traj: np.ndarray
    pi_flux: np.ndarray
    norm_traj: float          # trapezoid integral before normalization
    norm_flux: float
    sup_discrepancy: float    # max |pi_traj - pi_flux| / peak


def time_of_flight(spec: PacketSpec, r0: float, det: DetectorSpec,
                   t_max: float, tol: float = 1e-9) -> float | None:
    """First time the trajectory started at r0 reaches the detector circle.

    Returns None if the detector is not reached before t_max or if the
    integration stalls in a low-density region first.
    """
    if not (0.0 <= r0 < det.radius_R):
        raise DomainError("initial radius must satisfy 0 <= r0 < R")
    r_start = max(r0, ORIGIN_OFFSET)

    def rhs(t, y):
        v_r, v_phi = velocity(spec, y[0], t)
        return (v_r, v_phi / y[0])

    def hit(t, y):
        return y[0] - det.radius_R
    hit.terminal = True
    hit.direction = 1.0

    try:
        sol = solve_ivp(rhs, (0.0, t_max), (r_start, 0.0), method="RK45",
                        rtol=tol, atol=tol, events=hit, dense_output=True)
    except LowDensityError:
        return None
    if sol.t_events[0].size == 0:
        return None
    return float(sol.t_events[0][0])


def flight_sweep(spec: PacketSpec, det: DetectorSpec, r0_grid, t_max: float,
                 tol: float = 1e-9, threads: int = 1) -> np.ndarray:
    """Times of flight for every r0 in the grid; NaN where no crossing occurs.

    Entries are computed independently, so the result does not depend on
    the thread count.
    """
    r0_grid = np.asarray(r0_grid, dtype=float)

    def one(r0):
        t = time_of_flight(spec, r0, det, t_max, tol)
        return np.nan if t is None else t

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            out = list(pool.map(one, r0_grid))
    else:
        out = [one(r0) for r0 in r0_grid]
    return np.asarray(out)


def default_r0_grid(det: DetectorSpec, n: int = 64) -> np.ndarray:
    """Geometric spacing on [0.05 R, 0.99 R]; denser near the origin."""
    return np.geomspace(0.05 * det.radius_R, 0.99 * det.radius_R, n)


def default_tau_grid(t_flight: np.ndarray, n: int = 512) -> np.ndarray:
    """Uniform grid spanning exactly the observed flight times.

    No padding: outside this window the trajectory-route density vanishes
    by construction while the flux does not, so padding would manufacture
    a spurious disagreement between the two routes.
    """
    finite = t_flight[np.isfinite(t_flight)]
    if finite.size < 2:
        raise DomainError("need at least two finite flight times")
    return np.linspace(float(finite.min()), float(finite.max()), n)


def _normalize(tau_grid, pi):
    norm = float(trapezoid(pi, tau_grid))
    if norm <= 0.0:
        raise DomainError("density integrates to zero on the tau grid")
    return pi / norm, norm


def arrival_density_traj(spec: PacketSpec, det: DetectorSpec, r0_grid,
                         tau_grid, t_flight=None, t_max: float | None = None,
                         tol: float = 1e-9, threads: int = 1):
    """Arrival-time density from the inverted time-of-flight curve."""
    r0_grid = np.asarray(r0_grid, dtype=float)
    tau_grid = np.asarray(tau_grid, dtype=float)
    if t_flight is None:
        if t_max is None:
            raise DomainError("need t_max when flight times are not supplied")
        t_flight = flight_sweep(spec, det, r0_grid, t_max, tol, threads)
    t_flight = np.asarray(t_flight, dtype=float)
    ok = np.isfinite(t_flight)
    r0s, ts = r0_grid[ok], t_flight[ok]
    diffs = np.diff(ts)
    if np.all(diffs < 0.0):
        pass
    elif np.all(diffs > 0.0):
        pass
    else:
        raise NonInvertibleFlightError(
            "time-of-flight curve is not monotone on the r0 grid")

    interp = PchipInterpolator(r0s, ts)
    deriv = interp.derivative()
    t_lo, t_hi = min(ts[0], ts[-1]), max(ts[0], ts[-1])
    rho0, _, _ = fields_on_grid(spec, r0s, 0.0)
    rho_interp = PchipInterpolator(r0s, rho0)

    pi = np.zeros_like(tau_grid)
    edge_eps = 1e-9 * max(abs(t_lo), abs(t_hi))
    for i, tau in enumerate(tau_grid):
        if not (t_lo <= tau <= t_hi):
            continue
        fa = float(interp(r0s[0])) - tau
        fb = float(interp(r0s[-1])) - tau
        if fa * fb > 0.0:
            # roundoff at a window edge can break the sign bracket
            if abs(fa) <= edge_eps:
                r0 = r0s[0]
            elif abs(fb) <= edge_eps:
                r0 = r0s[-1]
            else:
                raise NonInvertibleFlightError(
                    f"cannot bracket the flight-time inverse at tau={tau}")
        else:
            r0 = brentq(lambda rr: interp(rr) - tau, r0s[0], r0s[-1], xtol=1e-12)
        jac = abs(float(deriv(r0)))
        if jac == 0.0:
            raise NonInvertibleFlightError(
                f"vanishing flight-time Jacobian at r0={r0}")
        pi[i] = 2.0 * np.pi * r0 * float(rho_interp(r0)) / jac
    return _normalize(tau_grid, pi)


def arrival_density_flux(spec: PacketSpec, det: DetectorSpec, tau_grid):
    """Arrival-time density proportional to the radial flux at the detector."""
    tau_grid = np.asarray(tau_grid, dtype=float)
    jr = np.empty_like(tau_grid)
    for i, tau in enumerate(tau_grid):
        jr[i] = field_sample(spec, det.radius_R, tau).j_r
    if jr.min() < 0.0:
        raise FluxPositivityError(
            f"negative radial flux {jr.min():.3e} at the detector; "
            "the flux formula does not apply")
    pi = 2.0 * np.pi * det.radius_R * jr
    return _normalize(tau_grid, pi)


def compute_arrival(spec: PacketSpec, det: DetectorSpec, t_max: float,
                    r0_grid=None, tau_grid=None, tol: float = 1e-9,
                    threads: int = 1) -> ArrivalRecord:
    """Run the full arrival pipeline and compare both density routes."""
    if r0_grid is None:
        r0_grid = default_r0_grid(det)
    r0_grid = np.asarray(r0_grid, dtype=float)
    t_flight = flight_sweep(spec, det, r0_grid, t_max, tol, threads)
    if tau_grid is None:
        tau_grid = default_tau_grid(t_flight)
    tau_grid = np.asarray(tau_grid, dtype=float)

    pi_traj, norm_traj = arrival_density_traj(
        spec, det, r0_grid, tau_grid, t_flight=t_flight)
    pi_flux, norm_flux = arrival_density_flux(spec, det, tau_grid)
    peak = max(pi_traj.max(), pi_flux.max())
    sup = float(np.max(np.abs(pi_traj - pi_flux)) / peak)
    return ArrivalRecord(
        r0_grid=r0_grid, t_flight=t_flight, tau_grid=tau_grid,
        pi_traj=pi_traj, pi_flux=pi_flux,
        norm_traj=norm_traj, norm_flux=norm_flux, sup_discrepancy=sup)
