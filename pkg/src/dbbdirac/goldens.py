"""Golden reference values (tables and figure captions) and their checker.

The values live in ``data/goldens.json``; each entry carries a provenance
string and an explicit tolerance, so adjusting a tolerance means editing
the asset, not code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from . import dynamics, observables
from .packet import PacketSpec, initial_peak_radius
from .stationary import StationaryState, most_probable_radius
from .units import HBAR

__all__ = ["GoldenResult", "load_goldens", "check_alphas", "check_mean_values",
           "check_radii", "check_loops", "check_decay_times", "check_all"]


@dataclass(frozen=True)
class GoldenResult:
    name: str
    source: str
    computed: float
    expected: float
    tolerance: str
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.name}: computed {self.computed:.6g}, "
                f"expected {self.expected:.6g} ({self.tolerance})")


def load_goldens() -> dict:
    with resources.files("dbbdirac.data").joinpath("goldens.json").open() as fh:
        return json.load(fh)


def _spec(inputs: dict) -> PacketSpec:
    return PacketSpec(two_j=inputs["two_j"], p0=inputs["p0"], sigma_p=inputs["sigma"])


def _resolve_r0(spec: PacketSpec, r0) -> float:
    return initial_peak_radius(spec) if r0 == "peak" else float(r0)


def check_alphas(data: dict | None = None) -> list[GoldenResult]:
    data = data or load_goldens()
    block = data["table1"]
    tol = block["tolerance_abs"]
    out = []
    for two_j_str, expected in block["alpha"].items():
        two_j = int(two_j_str)
        state = StationaryState(two_j=two_j, p=1e-4)
        alpha = most_probable_radius(state) * state.p / HBAR
        out.append(GoldenResult(
            name=f"alpha(two_j={two_j})", source=block["source"],
            computed=alpha, expected=expected, tolerance=f"abs {tol}",
            passed=abs(alpha - expected) <= tol))
    return out


def check_mean_values(data: dict | None = None) -> list[GoldenResult]:
    data = data or load_goldens()
    out = []
    for row in data["table2_mean_values"]:
        inputs = row["inputs"]
        spec = PacketSpec(two_j=5, p0=inputs["p0"], sigma_p=inputs["sigma"])
        mean_E, delta_E = observables.mean_energy(spec)
        computed = {"mean_E": mean_E, "delta_E": delta_E,
                    "tau_min": observables.tau_min(spec)}
        for key, expected in row["expected"].items():
            tol = row["tol_abs"][key]
            out.append(GoldenResult(
                name=f"{key}(p0={inputs['p0']:g}, sigma={inputs['sigma']:g})",
                source=row["source"], computed=computed[key], expected=expected,
                tolerance=f"abs {tol}", passed=abs(computed[key] - expected) <= tol))
    return out


def check_radii(data: dict | None = None) -> list[GoldenResult]:
    data = data or load_goldens()
    out = []
    for row in data["table2_radii"]:
        spec = _spec(row["inputs"])
        label = (f"two_j={spec.two_j}, p0={spec.p0:g}, sigma={spec.sigma_p:g}")
        r_L = observables.l_radius(spec)
        exp_rl = row["expected"]["r_L"]
        rel = row["tol"]["r_L_rel"]
        out.append(GoldenResult(
            name=f"r_L({label})", source=row["source"], computed=r_L,
            expected=exp_rl, tolerance=f"rel {rel}",
            passed=abs(r_L - exp_rl) <= rel * abs(exp_rl)))
        r_hat = initial_peak_radius(spec)
        exp_rh = row["expected"]["r_hat0"]
        tol = row["tol"]["r_hat0_abs"]
        out.append(GoldenResult(
            name=f"r_hat0({label})", source=row["source"], computed=r_hat,
            expected=exp_rh, tolerance=f"abs {tol}",
            passed=abs(r_hat - exp_rh) <= tol))
    return out


def check_loops(data: dict | None = None, include_slow: bool = False,
                tol: float = 1e-9) -> list[GoldenResult]:
    data = data or load_goldens()
    out = []
    for row in data["loop_counts"]:
        if row.get("slow") and not include_slow:
            continue
        inputs = row["inputs"]
        spec = _spec(inputs)
        r0 = _resolve_r0(spec, inputs["r0"])
        traj = dynamics.integrate(spec, r0, inputs["t_end"], tol=tol)
        n = dynamics.count_loops(traj)
        expected = row["expected"]["n_loops"]
        out.append(GoldenResult(
            name=f"n_loops(two_j={spec.two_j}, p0={spec.p0:g}, "
                 f"sigma={spec.sigma_p:g}, r0={inputs['r0']})",
            source=row["source"], computed=n, expected=expected,
            tolerance=f"abs {row['tol_abs']}",
            passed=abs(n - expected) <= row["tol_abs"]))
    return out


def check_decay_times(data: dict | None = None, include_slow: bool = False,
                      tol: float = 1e-9) -> list[GoldenResult]:
    data = data or load_goldens()
    out = []
    for row in data["decay_times"]:
        if row.get("slow") and not include_slow:
            continue
        inputs = row["inputs"]
        spec = _spec(inputs)
        r0 = _resolve_r0(spec, inputs["r0"])
        traj = dynamics.integrate(spec, r0, inputs["t_end"], tol=tol)
        tau = dynamics.decay_time(traj)
        expected = row["expected"]["tau_obs"]
        factor = row["tol_factor"]
        passed = tau is not None and expected / factor <= tau <= expected * factor
        out.append(GoldenResult(
            name=f"tau_obs(two_j={spec.two_j}, p0={spec.p0:g}, sigma={spec.sigma_p:g})",
            source=row["source"], computed=float("nan") if tau is None else tau,
            expected=expected, tolerance=f"factor {factor}", passed=passed))
    return out


def check_all(include_slow: bool = False, include_trajectories: bool = True) -> list[GoldenResult]:
    data = load_goldens()
    out = check_alphas(data) + check_mean_values(data) + check_radii(data)
    if include_trajectories:
        out += check_loops(data, include_slow=include_slow)
        out += check_decay_times(data, include_slow=include_slow)
    return out
