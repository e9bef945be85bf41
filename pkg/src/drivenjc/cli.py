"""Batch front-end: resolve a run configuration from defaults, an optional
JSON config file and command-line flags, dispatch one subcommand, and write
CSV artifacts next to a sidecar metadata file that reproduces the run.

Exit codes: 0 success, 1 configuration/usage error, 2 solver failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import time
from typing import Optional

import numpy as np

from . import __version__
from .csvio import fmt
from .dissipators import decompose_channels, diagonalize_h, write_channels_csv
from .levels import TrackingError, min_gap, trace_levels, write_levels_csv
from .liouvillian import (DegenerateSteadyStateError, PropagationError,
                          assemble_liouvillian, steady_state)
from .model import SystemParams, build_h_system
from .observables import (default_spectrum_grid, emission_spectrum,
                          write_spectrum_csv)
from .operators import build_operators, build_space
from .sweeps import (SweepRow, TruncationError, converge_truncation,
                     map_nu_omega, sweep_nu, write_sweep_csv)

PARAM_KEYS = [f.name for f in dataclasses.fields(SystemParams)]

COMMAND_DEFAULTS = {
    "steady": {"out": "steady.csv"},
    "sweep-nu": {"nu_start": 0.0, "nu_stop": 0.012, "nu_step": 1e-4,
                 "with_spectra": False, "auto_converge": False,
                 "workers": None, "out": "sweep.csv"},
    "map": {"nu_start": 0.0, "nu_stop": 0.012, "nu_step": 2e-4,
            "omega_start": 1.008, "omega_stop": 1.012, "omega_step": 5e-4,
            "workers": None, "out": "map.csv"},
    "spectrum": {"core_halfwidth": 0.08, "core_step": 1e-4,
                 "tail_halfwidth": 2.0, "tail_points": 70, "out": "spectrum.csv"},
    "levels": {"nu_stop": 5e-3, "nu_step": 5e-5, "out": "levels.csv"},
    "gap": {"pair": "LP1:UP4", "nu_stop": 5e-3, "nu_step": 5e-5, "out": "gap.csv"},
    "converge": {"tol": 1e-3, "n_max_cap": 60, "out": "converge.csv"},
    "channels": {"out": "channels.csv"},
}

SOLVER_ERRORS = (DegenerateSteadyStateError, PropagationError, TrackingError,
                 TruncationError, np.linalg.LinAlgError)


class ConfigError(ValueError):
    pass


def _load_config(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg


def _resolve(command: str, cfg: dict, overrides: dict) -> dict:
    """defaults <- config file <- CLI flags; unknown keys rejected."""
    resolved = {k: getattr(SystemParams(), k) for k in PARAM_KEYS}
    cmd_block = dict(COMMAND_DEFAULTS[command])

    cfg = dict(cfg)
    file_cmd = cfg.pop("command", None)
    for key, val in cfg.items():
        if key not in PARAM_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        resolved[key] = val
    if file_cmd is not None:
        if not isinstance(file_cmd, dict):
            raise ConfigError("config 'command' must be an object")
        name = file_cmd.pop("name", command)
        if name != command:
            raise ConfigError(
                f"config command {name!r} does not match invoked command {command!r}")
        for key, val in file_cmd.items():
            if key not in cmd_block:
                raise ConfigError(f"unknown key {key!r} for command {command!r}")
            cmd_block[key] = val
    for key, val in overrides.items():
        if val is None:
            continue
        if key in PARAM_KEYS:
            resolved[key] = val
        elif key in cmd_block:
            cmd_block[key] = val
        else:
            raise ConfigError(f"flag {key!r} not valid for command {command!r}")
    resolved["command"] = {"name": command, **cmd_block}
    return resolved


def _params_from(resolved: dict) -> SystemParams:
    kwargs = {k: resolved[k] for k in PARAM_KEYS}
    kwargs["n_max"] = int(kwargs["n_max"])
    return SystemParams(**kwargs)


def _write_meta(out_path: str, resolved: dict, t0: float) -> None:
    meta = {
        "config": resolved,
        "tool_version": __version__,
        "wall_time_s": time.time() - t0,
    }
    with open(out_path + ".meta.json", "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _grid(start, stop, step):
    n = int(round((stop - start) / step))
    return start + step * np.arange(n + 1)


def _workers(cmd_block) -> int:
    w = cmd_block.get("workers")
    if w is None:
        w = os.environ.get("FP_WORKERS")
    if w is None:
        w = os.cpu_count() or 1
    return max(1, int(w))


def _cmd_steady(params, cmd, out):
    from .observables import emission_flux, excitation_number

    L, chans, eig = assemble_liouvillian(params)
    st = steady_state(L)
    ops = build_operators(build_space(params.n_max))
    n_st = excitation_number(st.rho, ops)
    photon, energy = emission_flux(st.rho, chans)
    print(f"n_st = {n_st:.12g}")
    print(f"photon_rate = {photon:.12g}")
    print(f"energy_flux = {energy:.12g}")
    print(f"residual = {st.residual:.3e}  min_eigenvalue = {st.min_eigenvalue:.3e}  "
          f"method = {st.method}")
    write_sweep_csv(out, [SweepRow(nu=params.nu, omega=params.omega, n_st=n_st,
                                   photon_rate=photon, energy_flux=energy,
                                   spectral_width=None, n_max_used=params.n_max,
                                   residual=st.residual)])


def _cmd_sweep_nu(params, cmd, out):
    grid = _grid(cmd["nu_start"], cmd["nu_stop"], cmd["nu_step"])
    rows = sweep_nu(params, grid, with_spectra=cmd["with_spectra"],
                    workers=_workers(cmd), auto_converge=cmd["auto_converge"])
    write_sweep_csv(out, rows)
    bad = sum(r.status != "ok" for r in rows)
    print(f"wrote {len(rows)} rows to {out}" + (f" ({bad} failed)" if bad else ""))


def _cmd_map(params, cmd, out):
    nus = _grid(cmd["nu_start"], cmd["nu_stop"], cmd["nu_step"])
    omegas = _grid(cmd["omega_start"], cmd["omega_stop"], cmd["omega_step"])
    rows = map_nu_omega(params, nus, omegas, workers=_workers(cmd))
    write_sweep_csv(out, rows)
    print(f"wrote {len(rows)} rows to {out}")


def _cmd_spectrum(params, cmd, out):
    L, chans, eig = assemble_liouvillian(params)
    st = steady_state(L)
    ops = build_operators(build_space(params.n_max))
    grid = default_spectrum_grid(params, core_halfwidth=cmd["core_halfwidth"],
                                 core_step=cmd["core_step"],
                                 tail_halfwidth=cmd["tail_halfwidth"],
                                 tail_points=int(cmd["tail_points"]))
    spec = emission_spectrum(L, st.rho, ops, params, grid)
    write_spectrum_csv(out, spec)
    print(f"wrote {len(grid)} spectrum points to {out}")


def _cmd_levels(params, cmd, out):
    grid = _grid(0.0, cmd["nu_stop"], cmd["nu_step"])
    trace = trace_levels(params, grid)
    write_levels_csv(out, trace)
    print(f"wrote {len(grid)} rows to {out}")


def _cmd_gap(params, cmd, out):
    try:
        a, b = cmd["pair"].split(":")
    except ValueError:
        raise ConfigError(f"pair must look like LP1:UP4, got {cmd['pair']!r}")
    grid = _grid(0.0, cmd["nu_stop"], cmd["nu_step"])
    trace = trace_levels(params, grid)
    g = min_gap(trace, a, b)
    print(f"nu_star = {g.nu_star:.12g}")
    print(f"gap_min = {g.gap_min:.12g}")
    print(f"width_at_twice = {g.width_at_twice:.12g}")
    import csv as _csv
    with open(out, "w", newline="") as fh:
        wr = _csv.writer(fh, lineterminator="\n")
        wr.writerow(["pair", "nu_star", "gap_min", "width_at_twice"])
        wr.writerow([cmd["pair"], fmt(g.nu_star), fmt(g.gap_min), fmt(g.width_at_twice)])


def _cmd_converge(params, cmd, out):
    n = converge_truncation(params, tol=cmd["tol"], n_max_cap=int(cmd["n_max_cap"]))
    print(f"converged n_max = {n}")
    import csv as _csv
    with open(out, "w", newline="") as fh:
        wr = _csv.writer(fh, lineterminator="\n")
        wr.writerow(["nu", "tol", "n_max"])
        wr.writerow([fmt(params.nu), fmt(cmd["tol"]), n])


def _cmd_channels(params, cmd, out):
    ops = build_operators(build_space(params.n_max))
    eig = diagonalize_h(build_h_system(params, ops))
    chans = decompose_channels(params, eig, ops)
    write_channels_csv(out, chans)
    print(f"wrote {len(chans.channels)} channels to {out}")


RUNNERS = {
    "steady": _cmd_steady,
    "sweep-nu": _cmd_sweep_nu,
    "map": _cmd_map,
    "spectrum": _cmd_spectrum,
    "levels": _cmd_levels,
    "gap": _cmd_gap,
    "converge": _cmd_converge,
    "channels": _cmd_channels,
}


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="drivenjc",
        description="Driven cavity-emitter steady states, spectra and level maps.",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add_common(p):
        p.add_argument("--config", default=None, help="JSON config file")
        p.add_argument("--out", default=None, help="output CSV path")
        for key in ("nu", "omega", "Omega_R", "gamma_a", "gamma_D", "gamma_ph",
                    "temperature", "delta_secular"):
            p.add_argument(f"--{key.replace('_', '-').lower()}", dest=key,
                           type=float, default=None)
        p.add_argument("--n-max", dest="n_max", type=int, default=None)
        p.add_argument("--elastic-rate-policy", dest="elastic_rate_policy",
                       choices=["bare", "scaled"], default=None)
        p.add_argument("--thermal-factor-policy", dest="thermal_factor_policy",
                       choices=["ohmic", "bose"], default=None)

    p = sub.add_parser("steady", help="single steady-state solve")
    add_common(p)

    p = sub.add_parser("sweep-nu", help="steady-state sweep over drive amplitude")
    add_common(p)
    p.add_argument("--nu-start", dest="nu_start", type=float, default=None)
    p.add_argument("--nu-stop", dest="nu_stop", type=float, default=None)
    p.add_argument("--nu-step", dest="nu_step", type=float, default=None)
    p.add_argument("--with-spectra", dest="with_spectra", action="store_true",
                   default=None)
    p.add_argument("--auto-converge", dest="auto_converge", action="store_true",
                   default=None)
    p.add_argument("--workers", dest="workers", type=int, default=None)

    p = sub.add_parser("map", help="2-d sweep over drive amplitude and frequency")
    add_common(p)
    for key in ("nu_start", "nu_stop", "nu_step", "omega_start", "omega_stop",
                "omega_step"):
        p.add_argument(f"--{key.replace('_', '-')}", dest=key, type=float, default=None)
    p.add_argument("--workers", dest="workers", type=int, default=None)

    p = sub.add_parser("spectrum", help="emission spectrum at one drive amplitude")
    add_common(p)
    for key in ("core_halfwidth", "core_step", "tail_halfwidth"):
        p.add_argument(f"--{key.replace('_', '-')}", dest=key, type=float, default=None)
    p.add_argument("--tail-points", dest="tail_points", type=int, default=None)

    p = sub.add_parser("levels", help="dressed-level trace over drive amplitude")
    add_common(p)
    p.add_argument("--nu-stop", dest="nu_stop", type=float, default=None)
    p.add_argument("--nu-step", dest="nu_step", type=float, default=None)

    p = sub.add_parser("gap", help="anti-crossing location and width for a level pair")
    add_common(p)
    p.add_argument("--pair", dest="pair", default=None, help="e.g. LP1:UP4")
    p.add_argument("--nu-stop", dest="nu_stop", type=float, default=None)
    p.add_argument("--nu-step", dest="nu_step", type=float, default=None)

    p = sub.add_parser("converge", help="Fock-truncation convergence search")
    add_common(p)
    p.add_argument("--tol", dest="tol", type=float, default=None)
    p.add_argument("--n-max-cap", dest="n_max_cap", type=int, default=None)

    p = sub.add_parser("channels", help="dump the jump-channel table")
    add_common(p)
    return ap


def dispatch(argv) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse prints usage itself; --version/-h exit with 0
        return 0 if exc.code in (0, None) else 1
    t0 = time.time()
    try:
        cfg = _load_config(ns.config)
        overrides = {k: v for k, v in vars(ns).items()
                     if k not in ("cmd", "config") and v is not None}
        out_override = overrides.pop("out", None)
        resolved = _resolve(ns.cmd, cfg, overrides)
        if out_override is not None:
            resolved["command"]["out"] = out_override
        params = _params_from(resolved)
    except (ConfigError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    cmd_block = resolved["command"]
    out = cmd_block["out"]
    try:
        RUNNERS[ns.cmd](params, cmd_block, out)
    except SOLVER_ERRORS as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _write_meta(out, resolved, t0)
    return 0


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
