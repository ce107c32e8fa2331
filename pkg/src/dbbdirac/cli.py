"""Command-line front end.

Subcommands map one-to-one onto the computation modules and write
plot-ready CSV files plus JSON reports.  All outputs are deterministic:
there is no randomness anywhere, ensembles are fixed grids over the
initial radius, and CSV numbers are printed with 17 significant digits.

Exit codes: 0 success, 2 usage error, 3 numeric domain error,
4 convergence/stall error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy.integrate import trapezoid

from . import arrival as arrival_mod
from . import dynamics, goldens, observables
from .errors import (DomainError, FluxPositivityError, IntegrationStallError,
                     LowDensityError, NonInvertibleFlightError)
from .packet import PacketSpec, QuadratureConfig, fields_on_grid, initial_peak_radius
from .stationary import StationaryState, density_stat, velocity_stat
from .units import C

EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_CONVERGENCE = 4

_FMT = "%.17g"


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps({"command": self.command, "params": self.params},
                          sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        obj = json.loads(text)
        return cls(command=obj["command"], params=obj["params"])


def parse_half_integer(text: str) -> int:
    """Parse '5/2' or '2.5' into twice the value; must be an odd integer."""
    try:
        frac = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"cannot parse half-integer {text!r}")
    two_j = frac * 2
    if two_j.denominator != 1 or two_j.numerator % 2 == 0:
        raise argparse.ArgumentTypeError(
            f"j must be half-integer (odd multiple of 1/2), got {text!r}")
    return int(two_j)


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dbbdirac",
        description="Guidance-field trajectories and arrival times for a free "
                    "Dirac particle in two spatial dimensions (graphene units).")
    parser.add_argument("--config", type=str, default=None,
                        help="JSON config file; explicit flags win over it")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, packet=True):
        p.add_argument("--j", type=str, default=None,
                       help="total angular momentum, e.g. 5/2 or 2.5")
        p.add_argument("--p0", type=float, default=None,
                       help="peak momentum (internal meV ns/nm units, labelled meV/c)")
        if packet:
            p.add_argument("--sigma", type=float, default=None,
                           help="momentum width of the Gaussian amplitude")
            p.add_argument("--nodes", type=int, default=256,
                           help="quadrature nodes (default 256)")
        p.add_argument("--m", type=float, default=0.0, help="mass parameter")
        p.add_argument("--out", type=str, default=".", help="output directory")

    p = sub.add_parser("stationary", help="radial density and azimuthal velocity profile")
    common(p, packet=False)
    p.add_argument("--r-max", type=float, default=100.0)
    p.add_argument("--n-r", type=int, default=1000)

    p = sub.add_parser("field", help="packet density/flux/velocity on an (r, t) grid")
    common(p)
    p.add_argument("--r-min", type=float, default=0.0)
    p.add_argument("--r-max", type=float, default=100.0)
    p.add_argument("--n-r", type=int, default=500)
    p.add_argument("--t-list", type=_float_list, default=[0.0],
                   help="comma-separated times in ns")

    p = sub.add_parser("observables", help="packet mean values (table row + JSON)")
    common(p)

    p = sub.add_parser("trajectory", help="integrate one trajectory")
    common(p)
    p.add_argument("--r0", type=float, default=None,
                   help="initial radius in nm (default: initial density peak)")
    p.add_argument("--t-end", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--n-samples", type=int, default=2000)
    p.add_argument("--l-class-times", type=_float_list, default=[],
                   help="times at which to report the classical angular momentum")

    p = sub.add_parser("ensemble", help="trajectory sweep over initial radii")
    common(p)
    p.add_argument("--r0-list", type=_float_list, default=None)
    p.add_argument("--r0-min", type=float, default=None)
    p.add_argument("--r0-max", type=float, default=None)
    p.add_argument("--n-r0", type=int, default=16)
    p.add_argument("--t-end", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("arrival", help="times of flight and arrival-time densities")
    common(p)
    p.add_argument("--R", type=float, required=True, help="detector radius in nm")
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--n-r0", type=int, default=64)
    p.add_argument("--n-tau", type=int, default=512)
    p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("tables", help="reproduce golden reference tables")
    p.add_argument("--table", type=int, choices=(1, 2), required=True)
    p.add_argument("--row", type=str, default=None,
                   help="restrict table 2 to one block, e.g. p0=1e-4,sigma=1e-7")
    p.add_argument("--include-slow", action="store_true")
    p.add_argument("--skip-trajectories", action="store_true",
                   help="table 2: only mean values and radii")
    p.add_argument("--out", type=str, default=".")
    return parser


def parse_args(argv) -> RunConfig:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    params = vars(ns).copy()
    command = params.pop("command")
    config_path = params.pop("config", None)
    if config_path:
        with open(config_path) as fh:
            base = json.load(fh)
        if base.get("command", command) != command:
            parser.error(f"config file is for command {base.get('command')!r}")
        merged = dict(base.get("params", {}))
        # explicit flags win: overlay every non-default CLI value
        defaults = vars(parser.parse_args([command] + _required_stub(command)))
        for key, value in params.items():
            if key not in merged or value != defaults.get(key):
                merged[key] = value
        params = merged
    if params.get("j") is not None:
        params["two_j"] = parse_half_integer(params.pop("j"))
    else:
        params.pop("j", None)
    return RunConfig(command=command, params=params)


def _required_stub(command: str) -> list[str]:
    """Placeholder required flags so defaults can be introspected."""
    stubs = {
        "trajectory": ["--t-end", "1"],
        "ensemble": ["--t-end", "1"],
        "arrival": ["--R", "1", "--t-max", "1"],
        "tables": ["--table", "1"],
    }
    return stubs.get(command, [])


def _write_csv(path: Path, header: list[str], columns) -> None:
    rows = np.column_stack(columns)
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_FMT % v for v in row) + "\n")


def _write_report(path: Path, payload: dict) -> None:
    with open(path, "w", newline="\n") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _packet_from(params: dict) -> PacketSpec:
    for key in ("two_j", "p0", "sigma"):
        if params.get(key) is None:
            raise DomainError(f"missing required parameter --{key.replace('two_j', 'j')}")
    return PacketSpec(two_j=params["two_j"], p0=params["p0"],
                      sigma_p=params["sigma"], m=params.get("m", 0.0),
                      quad=QuadratureConfig(n_nodes=params.get("nodes", 256)))


def _threads(params: dict) -> int:
    n = params.get("threads")
    if n is None:
        n = int(os.environ.get("DBB_THREADS", "1"))
    return max(1, n)


def _out_dir(params: dict) -> Path:
    out = Path(params.get("out") or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _cmd_stationary(params: dict) -> int:
    if params.get("two_j") is None or params.get("p0") is None:
        raise DomainError("stationary requires --j and --p0")
    state = StationaryState(two_j=params["two_j"], p=params["p0"], m=params.get("m", 0.0))
    r = np.linspace(0.0, params["r_max"], params["n_r"])
    rho = density_stat(state, r)
    vphi = np.empty_like(r)
    for i, ri in enumerate(r):
        try:
            _, vphi[i] = velocity_stat(state, ri)
        except Exception:
            vphi[i] = np.nan
    out = _out_dir(params)
    _write_csv(out / "stationary.csv", ["r", "rho", "v_phi_over_c"],
               [r, rho, vphi / C])
    print(f"wrote {out / 'stationary.csv'}")
    return 0


def _cmd_field(params: dict) -> int:
    spec = _packet_from(params)
    r = np.linspace(params["r_min"], params["r_max"], params["n_r"])
    rows = {k: [] for k in ("r", "t", "rho", "j_r", "j_phi", "v_r", "v_phi")}
    for t in params["t_list"]:
        rho, jr, jphi = fields_on_grid(spec, r, t)
        with np.errstate(divide="ignore", invalid="ignore"):
            vr = np.where(rho > spec.rho_floor, jr / rho, np.nan)
            vphi = np.where(rho > spec.rho_floor, jphi / rho, np.nan)
        rows["r"].append(r)
        rows["t"].append(np.full_like(r, t))
        rows["rho"].append(rho)
        rows["j_r"].append(jr)
        rows["j_phi"].append(jphi)
        rows["v_r"].append(vr)
        rows["v_phi"].append(vphi)
    out = _out_dir(params)
    _write_csv(out / "field.csv", list(rows),
               [np.concatenate(v) for v in rows.values()])
    print(f"wrote {out / 'field.csv'}")
    return 0


def _cmd_observables(params: dict) -> int:
    spec = _packet_from(params)
    mv = observables.mean_values(spec)
    payload = {
        "two_j": spec.two_j, "p0": spec.p0, "sigma": spec.sigma_p, "m": spec.m,
        "z": mv.z, "norm_sq": mv.norm_sq, "mean_E_meV": mv.mean_E,
        "delta_E_meV": mv.delta_E, "mean_S_hbar": mv.mean_S,
        "r_L_nm": mv.r_L, "tau_min_ns": mv.tau_min,
        "r_hat0_nm": initial_peak_radius(spec),
    }
    out = _out_dir(params)
    _write_report(out / "report.json", payload)
    print(json.dumps(payload, sort_keys=True, indent=2))
    print(f"table row: <E>={mv.mean_E:.4f} meV  dE={mv.delta_E:.4g} meV  "
          f"tau_min={mv.tau_min:.3g} ns  r_L={mv.r_L if mv.r_L is None else round(mv.r_L, 2)} nm  "
          f"r_hat0={payload['r_hat0_nm']:.1f} nm")
    return 0


def _cmd_trajectory(params: dict) -> int:
    spec = _packet_from(params)
    r0 = params.get("r0")
    if r0 is None:
        r0 = initial_peak_radius(spec)
    traj = dynamics.integrate(spec, r0, params["t_end"], tol=params["tol"],
                              n_samples=params.get("n_samples", 2000))
    out = _out_dir(params)
    speed = np.hypot(traj.v_r, traj.v_phi)
    _write_csv(out / "trajectory.csv",
               ["t", "r", "phi", "x", "y", "v_r", "v_phi", "speed"],
               [traj.t, traj.r, traj.phi,
                traj.r * np.cos(traj.phi), traj.r * np.sin(traj.phi),
                traj.v_r, traj.v_phi, speed])
    diag = dynamics.diagnostics(traj)
    mean_E, _ = observables.mean_energy(spec)
    payload = {
        "r0": r0, "t_end": traj.t_end, "stalled": traj.stalled,
        "n_loops": diag.n_loops, "tau_obs_ns": diag.tau_obs,
        "final_speed_over_c": diag.final_speed / C,
        "l_class": {str(t): dynamics.classical_l(traj, mean_E, t)
                    for t in params.get("l_class_times", [])},
    }
    _write_report(out / "report.json", payload)
    print(json.dumps(payload, sort_keys=True, indent=2))
    return 0


def _cmd_ensemble(params: dict) -> int:
    spec = _packet_from(params)
    if params.get("r0_list"):
        r0s = np.asarray(params["r0_list"], dtype=float)
    else:
        if params.get("r0_min") is None or params.get("r0_max") is None:
            raise DomainError("ensemble needs --r0-list or --r0-min/--r0-max")
        r0s = np.linspace(params["r0_min"], params["r0_max"], params["n_r0"])
    rho0, _, _ = fields_on_grid(spec, r0s, 0.0)
    weights = r0s * rho0
    total = float(trapezoid(weights, r0s)) if len(r0s) > 1 else 1.0

    def one(r0):
        traj = dynamics.integrate(spec, float(r0), params["t_end"], tol=params["tol"])
        d = dynamics.diagnostics(traj)
        return (d.n_loops, np.nan if d.tau_obs is None else d.tau_obs,
                traj.r[-1], d.final_speed)

    n_threads = _threads(params)
    if n_threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            results = list(pool.map(one, r0s))
    else:
        results = [one(r0) for r0 in r0s]
    results = np.asarray(results)
    out = _out_dir(params)
    _write_csv(out / "ensemble.csv",
               ["r0", "weight", "n_loops", "tau_obs", "final_r", "final_speed"],
               [r0s, weights / total, results[:, 0], results[:, 1],
                results[:, 2], results[:, 3]])
    print(f"wrote {out / 'ensemble.csv'}")
    return 0


def _cmd_arrival(params: dict) -> int:
    spec = _packet_from(params)
    det = arrival_mod.DetectorSpec(radius_R=params["R"])
    record = arrival_mod.compute_arrival(
        spec, det, t_max=params["t_max"],
        r0_grid=arrival_mod.default_r0_grid(det, params.get("n_r0", 64)),
        tol=params["tol"], threads=_threads(params))
    if params.get("n_tau", 512) != len(record.tau_grid):
        record = arrival_mod.compute_arrival(
            spec, det, t_max=params["t_max"],
            r0_grid=record.r0_grid,
            tau_grid=arrival_mod.default_tau_grid(record.t_flight, params["n_tau"]),
            tol=params["tol"], threads=_threads(params))
    out = _out_dir(params)
    _write_csv(out / "tflight.csv", ["r0", "t_flight"],
               [record.r0_grid, record.t_flight])
    _write_csv(out / "arrival.csv", ["tau", "pi_traj", "pi_flux"],
               [record.tau_grid, record.pi_traj, record.pi_flux])
    payload = {
        "R": det.radius_R,
        "peak_tau_traj": float(record.tau_grid[np.argmax(record.pi_traj)]),
        "peak_tau_flux": float(record.tau_grid[np.argmax(record.pi_flux)]),
        "sup_discrepancy_of_peak": record.sup_discrepancy,
        "normalization_residual_traj": float(
            trapezoid(record.pi_traj, record.tau_grid) - 1.0),
        "normalization_residual_flux": float(
            trapezoid(record.pi_flux, record.tau_grid) - 1.0),
    }
    _write_report(out / "report.json", payload)
    print(json.dumps(payload, sort_keys=True, indent=2))
    return 0


def _cmd_tables(params: dict) -> int:
    out = _out_dir(params)
    data = goldens.load_goldens()
    if params["table"] == 1:
        results = goldens.check_alphas(data)
        path = out / "table1.txt"
    else:
        row_filter = None
        if params.get("row"):
            row_filter = dict(tok.split("=") for tok in params["row"].split(","))
            row_filter = {k: float(v) for k, v in row_filter.items()}

        def keep(row):
            if row_filter is None:
                return True
            return (row["inputs"]["p0"] == row_filter.get("p0", row["inputs"]["p0"])
                    and row["inputs"]["sigma"] == row_filter.get(
                        "sigma", row["inputs"]["sigma"]))

        subset = {
            "table1": data["table1"],
            "table2_mean_values": [r for r in data["table2_mean_values"] if keep(r)],
            "table2_radii": [r for r in data["table2_radii"] if keep(r)],
            "loop_counts": [r for r in data["loop_counts"] if keep(r)],
            "decay_times": [r for r in data["decay_times"] if keep(r)],
        }
        results = goldens.check_mean_values(subset) + goldens.check_radii(subset)
        if not params.get("skip_trajectories"):
            results += goldens.check_loops(subset, include_slow=params.get("include_slow", False))
            results += goldens.check_decay_times(subset, include_slow=params.get("include_slow", False))
        path = out / "table2.txt"
    lines = [res.line() for res in results]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    print("\n".join(lines))
    n_fail = sum(1 for res in results if not res.passed)
    print(f"{len(results) - n_fail}/{len(results)} golden checks passed")
    return 0


_COMMANDS = {
    "stationary": _cmd_stationary,
    "field": _cmd_field,
    "observables": _cmd_observables,
    "trajectory": _cmd_trajectory,
    "ensemble": _cmd_ensemble,
    "arrival": _cmd_arrival,
    "tables": _cmd_tables,
}


def run(config: RunConfig) -> int:
    try:
        return _COMMANDS[config.command](config.params)
    except DomainError as exc:
        print(json.dumps({"error": "domain", "message": str(exc)}), file=sys.stderr)
        return EXIT_DOMAIN
    except (IntegrationStallError, LowDensityError, NonInvertibleFlightError,
            FluxPositivityError) as exc:
        print(json.dumps({"error": "convergence", "message": str(exc)}), file=sys.stderr)
        return EXIT_CONVERGENCE


def main(argv=None) -> int:
    try:
        config = parse_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
