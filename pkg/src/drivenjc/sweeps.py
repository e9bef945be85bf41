"""Parameter sweeps over drive amplitude and frequency, with truncation
convergence control.  Grid points are independent tasks evaluated by a
process pool; results are emitted in grid order whatever the worker count.
"""

from __future__ import annotations

import csv
import dataclasses
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .csvio import fmt
from .liouvillian import assemble_liouvillian, steady_state
from .model import SystemParams
from .observables import (default_spectrum_grid, emission_flux, emission_spectrum,
                          excitation_number, spectral_width)
from .operators import build_operators, build_space


class TruncationError(RuntimeError):
    pass


@dataclass(frozen=True)
class SweepRow:
    nu: float
    omega: float
    n_st: float
    photon_rate: float
    energy_flux: float
    spectral_width: Optional[float]
    n_max_used: int
    residual: float
    status: str = "ok"


def _solve_point(params: SystemParams, with_spectra: bool) -> SweepRow:
    L, chans, eig = assemble_liouvillian(params)
    st = steady_state(L)
    ops = build_operators(build_space(params.n_max))
    n_st = excitation_number(st.rho, ops)
    photon, energy = emission_flux(st.rho, chans)
    width = None
    if with_spectra:
        spec = emission_spectrum(L, st.rho, ops, params, default_spectrum_grid(params))
        width = spectral_width(spec)
    return SweepRow(nu=params.nu, omega=params.omega, n_st=n_st,
                    photon_rate=photon, energy_flux=energy, spectral_width=width,
                    n_max_used=params.n_max, residual=st.residual)


def _point_task(args) -> SweepRow:
    params, with_spectra = args
    try:
        return _solve_point(params, with_spectra)
    except Exception as exc:  # failed points are recorded, not fatal
        return SweepRow(nu=params.nu, omega=params.omega, n_st=np.nan,
                        photon_rate=np.nan, energy_flux=np.nan, spectral_width=None,
                        n_max_used=params.n_max, residual=np.nan,
                        status=f"failed: {type(exc).__name__}: {exc}")


def _run_points(tasks, workers):
    if workers is None or workers <= 1:
        return [_point_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_point_task, tasks))


def sweep_nu(params: SystemParams, nu_grid: Sequence[float], with_spectra: bool = False,
             workers: int = 1, auto_converge: bool = False,
             converge_tol: float = 1e-3) -> List[SweepRow]:
    """One steady-state row per drive amplitude, in grid order."""
    grid = np.asarray(nu_grid, dtype=float)
    if np.any(np.diff(grid) <= 0):
        raise ValueError("nu grid must be strictly ascending")
    if auto_converge:
        # converge at the strongest drive (worst case) and reuse grid-wide
        n_max = converge_truncation(params.with_nu(float(grid[-1])), converge_tol)
        params = dataclasses.replace(params, n_max=n_max)
    tasks = [(params.with_nu(float(nu)), with_spectra) for nu in grid]
    return _run_points(tasks, workers)


def map_nu_omega(params: SystemParams, nu_grid: Sequence[float],
                 omega_grid: Sequence[float], workers: int = 1) -> List[SweepRow]:
    """Cartesian sweep, omega-major; each omega slice reproduces sweep_nu
    bit-identically."""
    nus = np.asarray(nu_grid, dtype=float)
    omegas = np.asarray(omega_grid, dtype=float)
    if np.any(np.diff(nus) <= 0) or np.any(np.diff(omegas) <= 0):
        raise ValueError("grids must be strictly ascending")
    tasks = []
    for w in omegas:
        p_w = dataclasses.replace(params, omega=float(w))
        tasks.extend((p_w.with_nu(float(nu)), False) for nu in nus)
    return _run_points(tasks, workers)


def converge_truncation(params: SystemParams, tol: float, n_max_cap: int = 60,
                        step: int = 4) -> int:
    """Smallest tested n_max whose excitation number is stable under a
    +step increase: |n_st(n+step) - n_st(n)| <= tol * max(n_st(n+step), 1e-6).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")

    def n_st_at(n_max):
        p = dataclasses.replace(params, n_max=n_max)
        L, chans, _ = assemble_liouvillian(p)
        st = steady_state(L)
        return excitation_number(st.rho, build_operators(build_space(n_max)))

    n = params.n_max
    current = n_st_at(n)
    last_change = np.inf
    while n + step <= n_max_cap:
        larger = n_st_at(n + step)
        last_change = abs(larger - current)
        if last_change <= tol * max(larger, 1e-6):
            return n
        n += step
        current = larger
    raise TruncationError(
        f"n_st not converged within tol={tol} by n_max={n_max_cap} "
        f"(last change {last_change:.3e})"
    )


SWEEP_HEADER = ["nu", "omega", "n_st", "photon_rate", "energy_flux",
                "spectral_width", "n_max_used", "residual", "status"]


def write_sweep_csv(path, rows: Sequence[SweepRow]) -> None:
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(SWEEP_HEADER)
        for r in rows:
            wr.writerow([
                fmt(r.nu), fmt(r.omega), fmt(r.n_st), fmt(r.photon_rate),
                fmt(r.energy_flux),
                "" if r.spectral_width is None else fmt(r.spectral_width),
                r.n_max_used, fmt(r.residual), r.status,
            ])
