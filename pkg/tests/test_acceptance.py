"""Acceptance suite: one test per criterion, each at its stated tolerance,
printing one PASS/FAIL line.  Run with `pytest tests/test_acceptance.py -v -s`.

The heavy artifacts (amplitude sweeps, level traces, spectra, the 2-d map)
are computed once per session and shared across criteria.
"""

import dataclasses
import os

import numpy as np
import pytest
from scipy.signal import find_peaks

from drivenjc.levels import min_gap, trace_levels
from drivenjc.liouvillian import (assemble_liouvillian, propagate, steady_state,
                                  unvec, vec)
from drivenjc.model import SystemParams, build_h_system, jc_reference_levels, truncation_level
from drivenjc.observables import (default_spectrum_grid, emission_spectrum,
                                  excitation_number, spectral_width,
                                  spectrum_sum_rule_gap)
from drivenjc.operators import (build_operators, build_space, density_matrix,
                                trace_distance)
from drivenjc.sweeps import map_nu_omega, sweep_nu

BASE = SystemParams()
WORKERS = min(os.cpu_count() or 1, 4)
NU_GRID = np.round(np.arange(0.0, 0.012 + 5e-5, 1e-4), 10)
PEAK_REFS = (2.8e-3, 4.9e-3, 9.2e-3)


def _report(num, name, ok, detail=""):
    print(f"\nACCEPTANCE {num:02d} [{'PASS' if ok else 'FAIL'}] {name}"
          + (f" :: {detail}" if detail else ""))
    assert ok, f"criterion {num}: {name} -- {detail}"


def _detect_peaks(values, prominence_frac=0.02):
    values = np.asarray(values)
    idx, props = find_peaks(values, prominence=prominence_frac * values.max())
    return idx, props


@pytest.fixture(scope="module")
def base_sweep():
    rows = sweep_nu(BASE, NU_GRID, workers=WORKERS)
    assert all(r.status == "ok" for r in rows)
    return np.array([r.n_st for r in rows])


@pytest.fixture(scope="module")
def lp1_up4_gap():
    grid = np.round(np.arange(0.0, 5e-3 + 2.5e-5, 5e-5), 12)
    trace = trace_levels(BASE, grid)
    return min_gap(trace, "LP1", "UP4")


def test_criterion_01_jc_spectrum():
    ops = build_operators(build_space(BASE.n_max))
    evals = np.sort(np.linalg.eigvalsh(build_h_system(BASE.with_nu(0.0), ops).matrix))
    targets = [l.energy_rot for l in jc_reference_levels(BASE)] + [0.0]
    worst = max(np.abs(evals - t).min() for t in targets)
    _report(1, "undriven polariton ladder", worst < 1e-10, f"worst |dE| = {worst:.2e}")


def test_criterion_02_dark_ground_state():
    L, chans, eig = assemble_liouvillian(BASE.with_nu(0.0))
    st = steady_state(L)
    d = L.dim
    ket = np.zeros(d)
    ket[0] = 1.0
    gs = density_matrix(np.outer(ket, ket).astype(complex), L.space)
    dist = trace_distance(st.rho, gs)
    n_st = excitation_number(st.rho, build_operators(build_space(BASE.n_max)))
    ok = dist < 1e-10 and n_st <= 1e-10
    _report(2, "dark ground state at zero drive", ok,
            f"trace distance {dist:.2e}, n_st {n_st:.2e}")


def test_criterion_03_lindblad_structure():
    L, _, _ = assemble_liouvillian(BASE.with_nu(2.8e-3))
    rng = np.random.default_rng(99)
    d = L.dim
    worst_tr, worst_herm = 0.0, 0.0
    for _ in range(20):
        m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        m = 0.5 * (m + m.conj().T)
        m = m / np.trace(m).real
        out = unvec(L.matrix @ vec(m))
        nuc = np.abs(np.linalg.eigvalsh(0.5 * (out + out.conj().T))).sum()
        worst_tr = max(worst_tr, abs(np.trace(out)) / max(nuc, 1e-300))
        worst_herm = max(worst_herm, np.abs(out - out.conj().T).max())
    ok = worst_tr <= 1e-12 and worst_herm <= 1e-12
    _report(3, "trace and Hermiticity preservation", ok,
            f"|Tr L(rho)|/|L(rho)|_1 {worst_tr:.2e}, max asymmetry {worst_herm:.2e}")


def test_criterion_04_oracle_equivalence():
    t = 50.0 / BASE.gamma_a
    worst = 0.0
    for nu in (1e-3, 2.8e-3, 4.9e-3):
        L, _, _ = assemble_liouvillian(BASE.with_nu(nu))
        st = steady_state(L)
        d = L.dim
        ket = np.zeros(d)
        ket[0] = 1.0
        ground = density_matrix(np.outer(ket, ket).astype(complex), L.space)
        mixed = density_matrix(np.eye(d, dtype=complex) / d, L.space)
        for rho0 in (ground, mixed):
            dist = trace_distance(propagate(L, rho0, t), st.rho)
            worst = max(worst, dist)
    _report(4, "steady state equals long-time propagation", worst < 1e-6,
            f"worst trace distance {worst:.2e}")


def test_criterion_05_non_monotone_luminescence(base_sweep):
    idx, _ = _detect_peaks(base_sweep)
    locs = NU_GRID[idx]
    count_ok = len(locs) >= 3
    matches = {}
    for ref in PEAK_REFS:
        inside = locs[(locs >= 0.8 * ref) & (locs <= 1.2 * ref)]
        matches[ref] = inside[0] if len(inside) else None
    loc_ok = all(v is not None for v in matches.values())
    detail = (f"maxima at {[f'{x:.4g}' for x in locs]}; "
              f"window matches {[f'{r:.2g}->{matches[r]}' for r in PEAK_REFS]}")
    _report(5, "three luminescence maxima at the reference drives",
            count_ok and loc_ok, detail)


def test_criterion_06_peak_crossing_coincidence(base_sweep, lp1_up4_gap):
    idx, _ = _detect_peaks(base_sweep)
    assert len(idx) >= 1, "no luminescence maxima found"
    first_peak = NU_GRID[idx[0]]
    g = lp1_up4_gap
    dist = abs(g.nu_star - first_peak)
    ok = dist <= g.width_at_twice
    _report(6, "gap minimum coincides with the first maximum", ok,
            f"argmin {g.nu_star:.4g}, first peak {first_peak:.4g}, "
            f"width {g.width_at_twice:.4g}")


def test_criterion_07_gap_width(lp1_up4_gap):
    w = lp1_up4_gap.width_at_twice
    ok = 0.5 * 1.8e-3 <= w <= 1.5 * 1.8e-3
    _report(7, "LP1-UP4 width at twice the minimum", ok, f"width {w:.4g}")


def test_criterion_08_line_broadening():
    widths = {}
    gaps = {}
    for nu in (4.5e-3, 4.9e-3, 5.3e-3):
        p = BASE.with_nu(nu)
        L, chans, eig = assemble_liouvillian(p)
        st = steady_state(L)
        ops = build_operators(build_space(p.n_max))
        spec = emission_spectrum(L, st.rho, ops, p, default_spectrum_grid(p))
        widths[nu] = spectral_width(spec)
        gaps[nu] = spectrum_sum_rule_gap(spec, st.rho, ops)
    order_ok = widths[4.9e-3] > widths[4.5e-3] and widths[4.9e-3] > widths[5.3e-3]
    sum_ok = all(g < 5e-3 for g in gaps.values())
    _report(8, "spectral width maximal at the middle drive", order_ok and sum_ok,
            f"widths {[f'{widths[k]:.4g}' for k in sorted(widths)]}, "
            f"sum-rule gaps {[f'{gaps[k]:.2e}' for k in sorted(gaps)]}")


def test_criterion_09_two_dimensional_map():
    # window: omega - (omega0 + Omega_R) in [-2e-3, 2e-3]
    nu_grid = np.round(np.arange(0.0, 0.012 + 1e-4, 2e-4), 10)
    omega_rows = np.round(1.01 + np.arange(-2e-3, 2.1e-3, 5e-4), 10)
    rows = map_nu_omega(BASE, nu_grid, omega_rows, workers=WORKERS)
    per_row_counts = []
    for w in omega_rows:
        vals = np.array([r.n_st for r in rows if r.omega == w])
        idx, _ = _detect_peaks(vals)
        per_row_counts.append(len(idx))
    # n simultaneous maxima in one row are crossings of n distinct ridge
    # curves; require >= 3 ridges seen in at least two rows
    ridge_ok = sum(c >= 3 for c in per_row_counts) >= 2
    control = sweep_nu(dataclasses.replace(BASE, omega=1.0 + 3 * BASE.Omega_R),
                       nu_grid, workers=WORKERS)
    cvals = np.array([r.n_st for r in control])
    cidx, _ = _detect_peaks(cvals)
    control_ok = len(cidx) == 0
    _report(9, "ridge structure inside the polariton window only",
            ridge_ok and control_ok,
            f"peaks per row {per_row_counts}, control-row peaks {len(cidx)}")


def test_criterion_10_truncation_convergence():
    vals = {}
    for n_max in (14, 18):
        p = dataclasses.replace(BASE, n_max=n_max).with_nu(2.8e-3)
        L, _, _ = assemble_liouvillian(p)
        st = steady_state(L)
        vals[n_max] = excitation_number(st.rho, build_operators(build_space(n_max)))
    rel = abs(vals[18] - vals[14]) / vals[14]
    _report(10, "excitation number converged in the photon cutoff", rel <= 1e-3,
            f"n_st(14) = {vals[14]:.6g}, n_st(18) = {vals[18]:.6g}, rel {rel:.2e}")


def test_criterion_11_secular_threshold_robustness(base_sweep):
    base_idx, _ = _detect_peaks(base_sweep)
    base_locs = NU_GRID[base_idx]
    step = NU_GRID[1] - NU_GRID[0]
    ok = True
    details = [f"delta_secular=5e-3: {len(base_locs)} maxima"]
    for dsec in (1e-3, 1e-2):
        p = dataclasses.replace(BASE, delta_secular=dsec)
        rows = sweep_nu(p, NU_GRID, workers=WORKERS)
        vals = np.array([r.n_st for r in rows])
        idx, _ = _detect_peaks(vals)
        locs = NU_GRID[idx]
        same_count = len(locs) == len(base_locs)
        same_locs = same_count and np.all(np.abs(locs - base_locs) <= step + 1e-12)
        ok = ok and same_count and same_locs
        details.append(f"delta_secular={dsec:g}: {len(locs)} maxima"
                       + ("" if same_locs else " (moved)"))
    _report(11, "maxima stable across the clustering threshold scan", ok,
            "; ".join(details))
