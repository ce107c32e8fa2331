"""Guidance-field trajectory integration and diagnostics.

The trajectory obeys, in polar coordinates,

    dr/dt = v_r(r, t),     dphi/dt = v_phi(r, t) / r,

with the velocity field of :mod:`dbbdirac.packet`.  Integration uses an
adaptive RK45 with dense output; phi is accumulated unwrapped so loop
counting is exact.  A start exactly at the coordinate singularity r = 0
is offset to ORIGIN_OFFSET, far below every physical length scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.ndimage import median_filter

from .errors import DomainError, IntegrationStallError, LowDensityError
from .packet import PacketSpec, velocity
from .units import C

__all__ = ["Trajectory", "TrajectoryDiagnostics", "integrate", "count_loops",
           "decay_time", "classical_l", "speed_profile", "ORIGIN_OFFSET"]

ORIGIN_OFFSET = 1e-3  # nm


@dataclass
class Trajectory:
    spec: PacketSpec
    r0: float
    t: np.ndarray
    r: np.ndarray
    phi: np.ndarray
    v_r: np.ndarray
    v_phi: np.ndarray
    stalled: bool = False
    _dense: object = field(default=None, repr=False)

    @property
    def t_end(self) -> float:
        return float(self.t[-1])

    def state_at(self, t: float) -> tuple[float, float]:
        """(r, phi) at time t from the integrator's dense output."""
        if not (self.t[0] <= t <= self.t[-1]):
            raise DomainError(f"t={t} outside trajectory span [{self.t[0]}, {self.t[-1]}]")
        r, phi = self._dense(t)
        return float(r), float(phi)


@dataclass(frozen=True)
class TrajectoryDiagnostics:
    n_loops: int
    tau_obs: float | None
    final_speed: float


def integrate(spec: PacketSpec, r0: float, t_end: float, tol: float = 1e-9,
              n_samples: int = 2000) -> Trajectory:
    """Integrate one trajectory from (r0, phi=0) over [0, t_end]."""
    if not (r0 >= 0.0):
        raise DomainError(f"initial radius must be non-negative, got {r0}")
    if not (t_end > 0.0 and tol > 0.0):
        raise DomainError("need t_end > 0 and tol > 0")
    r_start = max(r0, ORIGIN_OFFSET)

    stall_t = []

    def rhs(t, y):
        try:
            v_r, v_phi = velocity(spec, y[0], t)
        except LowDensityError:
            stall_t.append(t)
            raise
        return (v_r, v_phi / y[0])

    try:
        sol = solve_ivp(rhs, (0.0, t_end), (r_start, 0.0), method="RK45",
                        rtol=tol, atol=tol, dense_output=True)
        stalled = False
    except LowDensityError:
        # keep the partial trajectory up to just before the stall point
        t_stop = 0.999 * min(stall_t)
        if t_stop <= 0.0:
            raise IntegrationStallError(
                f"velocity undefined at the initial point r0={r0}") from None
        sol = solve_ivp(rhs, (0.0, t_stop), (r_start, 0.0), method="RK45",
                        rtol=tol, atol=tol, dense_output=True)
        stalled = True
    if sol.status == -1:
        raise IntegrationStallError(sol.message)

    ts = np.linspace(0.0, sol.t[-1], n_samples)
    rs, phis = sol.sol(ts)
    v_r = np.empty(n_samples)
    v_phi = np.empty(n_samples)
    for i, (t, r) in enumerate(zip(ts, rs)):
        v_r[i], v_phi[i] = velocity(spec, r, t)
    return Trajectory(spec=spec, r0=r0, t=ts, r=rs, phi=phis,
                      v_r=v_r, v_phi=v_phi, stalled=stalled, _dense=sol.sol)


def count_loops(traj: Trajectory, up_to: float | None = None) -> int:
    """floor(|delta phi| / 2 pi) over [0, up_to] (default: the whole trajectory)."""
    if up_to is None:
        phi_end = traj.phi[-1]
    else:
        _, phi_end = traj.state_at(up_to)
    return int(abs(phi_end - traj.phi[0]) // (2.0 * math.pi))


def decay_time(traj: Trajectory, eta: float = 0.5, smooth_window: int = 11,
               plateau_fraction: float = 0.1) -> float | None:
    """First time the smoothed angular velocity durably drops below eta x plateau.

    The plateau is the mean smoothed |dphi/dt| over the leading
    ``plateau_fraction`` of samples; smoothing is a moving median.  Returns
    None when the angular velocity never decays (stationary circles).
    """
    omega = np.abs(traj.v_phi) / traj.r
    smoothed = median_filter(omega, size=smooth_window, mode="nearest")
    n_lead = max(1, int(plateau_fraction * len(smoothed)))
    plateau = float(smoothed[:n_lead].mean())
    below = smoothed < eta * plateau
    if not below[-1]:
        return None
    # last index where the angular velocity was still above threshold
    above_idx = np.nonzero(~below)[0]
    if len(above_idx) == 0:
        return None
    first_durable = above_idx[-1] + 1
    if first_durable >= len(smoothed):
        return None
    return float(traj.t[first_durable])


def classical_l(traj: Trajectory, mean_E: float, t: float) -> float:
    """Classical angular momentum (E/c^2) r(t) v_phi(t) in meV ns."""
    r, _ = traj.state_at(t)
    _, v_phi = velocity(traj.spec, r, t)
    return mean_E / (C * C) * r * v_phi


def speed_profile(traj: Trajectory) -> np.ndarray:
    """Array of (t, |v|) pairs along the trajectory samples."""
    speed = np.hypot(traj.v_r, traj.v_phi)
    return np.column_stack([traj.t, speed])


def diagnostics(traj: Trajectory, eta: float = 0.5) -> TrajectoryDiagnostics:
    speed = float(np.hypot(traj.v_r[-1], traj.v_phi[-1]))
    return TrajectoryDiagnostics(
        n_loops=count_loops(traj),
        tau_obs=decay_time(traj, eta=eta),
        final_speed=speed,
    )
