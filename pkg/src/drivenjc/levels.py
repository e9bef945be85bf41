"""Adiabatic tracking of the dressed levels along a drive sweep and
anti-crossing measurement.

Levels are anchored at nu = 0 to the analytic polariton ladder (GS, LPn,
UPn, plus the single truncation remnant labeled TOP) and followed by
greedy eigenvector-overlap matching from one grid point to the next; a
step whose weakest accepted overlap falls below 0.5 is bisected before
giving up.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .csvio import fmt
from .dissipators import diagonalize_h
from .model import SystemParams, build_h_system, jc_reference_levels, truncation_level
from .operators import build_operators, build_space


class TrackingError(RuntimeError):
    def __init__(self, nu_lo, nu_hi, overlap):
        super().__init__(
            f"level tracking lost between nu={nu_lo:.6g} and nu={nu_hi:.6g}: "
            f"weakest overlap {overlap:.3f} after maximum bisection"
        )
        self.nu_lo = nu_lo
        self.nu_hi = nu_hi
        self.overlap = overlap


@dataclass(frozen=True)
class LevelTrace:
    """Rotating-frame energies of every dressed level along nu_grid.

    energies[i, l] belongs to labels[l]; overlaps[i] is the weakest
    eigenvector overlap accepted while matching step i-1 -> i (1.0 for the
    anchor point).
    """

    nu_grid: np.ndarray
    energies: np.ndarray
    labels: List[str]
    overlaps: np.ndarray
    params: SystemParams

    def column(self, label: str) -> np.ndarray:
        try:
            return self.energies[:, self.labels.index(label)]
        except ValueError:
            raise ValueError(f"label {label!r} not tracked; have {self.labels}") from None


@dataclass(frozen=True)
class GapResult:
    nu_star: float
    gap_min: float
    width_at_twice: float
    interval: Tuple[float, float]


def _greedy_match(prev_states: np.ndarray, states: np.ndarray) -> Tuple[np.ndarray, float]:
    """Permutation mapping previous columns to new ones by largest overlap."""
    ov = np.abs(prev_states.conj().T @ states)
    d = ov.shape[0]
    perm = np.full(d, -1)
    used_i = np.zeros(d, bool)
    used_j = np.zeros(d, bool)
    flat = np.argsort(ov, axis=None)[::-1]
    accepted = []
    for f in flat:
        i, j = divmod(int(f), d)
        if used_i[i] or used_j[j]:
            continue
        perm[i] = j
        accepted.append(ov[i, j])
        used_i[i] = True
        used_j[j] = True
        if used_i.all():
            break
    return perm, float(min(accepted))


def trace_levels(params: SystemParams, nu_grid: Sequence[float],
                 max_bisections: int = 12) -> LevelTrace:
    """Track all dressed levels over an ascending drive grid starting at 0."""
    grid = np.asarray(nu_grid, dtype=float)
    if grid.size < 1 or grid[0] != 0.0:
        raise ValueError("nu grid must start at 0")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("nu grid must be strictly ascending")

    ops = build_operators(build_space(params.n_max))

    def eig_at(nu):
        return diagonalize_h(build_h_system(params.with_nu(nu), ops))

    anchor = eig_at(0.0)
    refs = jc_reference_levels(params) + [truncation_level(params)]
    ref_sorted = sorted(refs, key=lambda l: l.energy_rot)
    labels = [l.label for l in ref_sorted]   # matches ascending eigh order

    d = anchor.space.dim
    energies = np.empty((grid.size, d))
    overlaps = np.empty(grid.size)
    energies[0] = anchor.energies
    overlaps[0] = 1.0

    prev = anchor
    for i in range(1, grid.size):
        nxt = eig_at(grid[i])
        perm, conf = _match_with_bisection(eig_at, grid[i - 1], prev, grid[i], nxt,
                                           max_bisections)
        energies[i] = nxt.energies[perm]
        overlaps[i] = conf
        # carry the permuted frame forward so labels stay attached
        prev = _permuted(nxt, perm)
    return LevelTrace(nu_grid=grid, energies=energies, labels=labels,
                      overlaps=overlaps, params=params)


def _permuted(eig, perm):
    from .dissipators import EigenSystem
    e = np.ascontiguousarray(eig.energies[perm])
    s = np.ascontiguousarray(eig.states[:, perm])
    e.flags.writeable = False
    s.flags.writeable = False
    return EigenSystem(energies=e, states=s, space=eig.space)


def _match_with_bisection(eig_at, nu_lo, eig_lo, nu_hi, eig_hi, depth):
    perm, conf = _greedy_match(eig_lo.states, eig_hi.states)
    if conf >= 0.5:
        return perm, conf
    if depth <= 0:
        raise TrackingError(nu_lo, nu_hi, conf)
    nu_mid = 0.5 * (nu_lo + nu_hi)
    eig_mid = eig_at(nu_mid)
    p1, c1 = _match_with_bisection(eig_at, nu_lo, eig_lo, nu_mid, eig_mid, depth - 1)
    mid_perm = _permuted(eig_mid, p1)
    p2, c2 = _match_with_bisection(eig_at, nu_mid, mid_perm, nu_hi, eig_hi, depth - 1)
    return p2[p1], min(c1, c2)


def min_gap(trace: LevelTrace, label_i: str, label_j: str) -> GapResult:
    """Smallest |E_i - E_j| along the trace, with parabolic refinement,
    and the length of the nu interval where the gap stays below twice it.
    """
    gi = trace.column(label_i)
    gj = trace.column(label_j)
    nus = trace.nu_grid
    gap = np.abs(gi - gj)
    k = int(np.argmin(gap))
    nu_star, gap_min = float(nus[k]), float(gap[k])
    if 0 < k < len(nus) - 1:
        # parabola through the three bracketing points; vertex clamped to the cell
        y0, y1, y2 = gap[k - 1], gap[k], gap[k + 1]
        denom = y0 + y2 - 2 * y1
        if denom > 0:
            h = 0.5 * (nus[k + 1] - nus[k - 1])
            off = float(np.clip(h * (y0 - y2) / (2 * denom), -h, h))
            nu_star = float(nus[k] + off)
            gap_min = float(max(y1 - (y2 - y0) ** 2 / (8 * denom), 0.0))

    threshold = 2.0 * gap_min
    below = gap <= threshold
    width = 0.0
    lo = hi = nu_star
    segments = []
    i = 0
    n = len(nus)
    while i < n:
        if not below[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and below[j + 1]:
            j += 1
        start = nus[i]
        end = nus[j]
        # linear interpolation of the boundary crossings
        if i > 0 and gap[i - 1] != gap[i]:
            t = (gap[i - 1] - threshold) / (gap[i - 1] - gap[i])
            start = nus[i - 1] + t * (nus[i] - nus[i - 1])
        if j + 1 < n and gap[j + 1] != gap[j]:
            t = (gap[j] - threshold) / (gap[j] - gap[j + 1])
            end = nus[j] + t * (nus[j + 1] - nus[j])
        segments.append((start, end))
        i = j + 1
    for start, end in segments:
        width += end - start
        if start <= nu_star <= end:
            lo, hi = start, end
    return GapResult(nu_star=nu_star, gap_min=gap_min,
                     width_at_twice=float(width), interval=(float(lo), float(hi)))


def write_levels_csv(path, trace: LevelTrace) -> None:
    """Header nu,E_GS,E_LP1,E_UP1,... in manifold order."""
    order = ["GS"]
    n = 1
    while f"LP{n}" in trace.labels:
        order += [f"LP{n}", f"UP{n}"]
        n += 1
    if "TOP" in trace.labels:
        order.append("TOP")
    cols = [trace.column(lbl) for lbl in order]
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(["nu"] + [f"E_{lbl}" for lbl in order])
        for i, nu in enumerate(trace.nu_grid):
            wr.writerow([fmt(nu)] + [fmt(c[i]) for c in cols])
