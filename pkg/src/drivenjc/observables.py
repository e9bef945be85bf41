"""Stationary observables: excitation number, reservoir fluxes, the
incoherent emission spectrum via the quantum regression theorem, and the
eigenstate transition graph.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy.linalg import schur, solve_triangular

from .csvio import fmt
from .dissipators import ChannelSet, EigenSystem
from .liouvillian import Superoperator, unvec, vec
from .model import SystemParams
from .operators import DensityMatrix, OperatorSet, expectation


class UndefinedWidthError(ValueError):
    pass


@dataclass(frozen=True)
class Spectrum:
    """Incoherent cavity emission spectrum on a lab-frame frequency grid.

    Normalization: the trapezoid integral equals
    2*pi*(<a^dag a> - |<a>|^2) when the grid spans all decaying features.
    """

    freqs: np.ndarray
    values: np.ndarray
    params: SystemParams


@dataclass(frozen=True)
class TransitionGraph:
    """Dissipative transition fluxes between dressed states.

    populations are diag(U^dag rho U) clamped at zero; edges carry
    (from k, to j, kind, rate*|A_jk|^2, flux).  coherence_drift[j] is the
    population drift at node j supplied by dressed-basis coherences; at
    stationarity (in - out) + coherence_drift = 0 node by node.
    """

    populations: np.ndarray
    edges: List[Tuple[int, int, str, float, float]]
    coherence_drift: np.ndarray


def excitation_number(rho_st: DensityMatrix, ops: OperatorSet) -> float:
    """n_st = Tr(a^dag a rho)."""
    val = expectation(ops.n_phot, rho_st).real
    if val < -1e-10:
        raise ValueError(f"negative excitation number {val}")
    return float(val)


def emission_flux(rho_st: DensityMatrix, channels: ChannelSet) -> Tuple[float, float]:
    """Photon and energy flow through the cavity channels.

    photon_rate = sum Gamma * Tr(A rho A^dag) over cavity channels;
    energy_flux weights each term by the channel's lab-frame frequency.
    """
    if rho_st.space.dim != channels.eig.space.dim:
        raise ValueError("state and channel set live on different spaces")
    from .dissipators import channel_trace

    U = channels.eig.states
    rho_eig = U.conj().T @ rho_st.matrix @ U
    photon_rate = 0.0
    energy_flux = 0.0
    for ch in channels.of_kind("cavity"):
        if ch.rate == 0.0:
            continue
        t = channel_trace(ch, rho_eig)
        photon_rate += ch.rate * t
        energy_flux += ch.rate * ch.lab_freq * t
    return float(photon_rate), float(energy_flux)


def default_spectrum_grid(params: SystemParams, core_halfwidth: float = 0.08,
                          core_step: float = 1e-4, tail_halfwidth: float = 2.0,
                          tail_points: int = 70) -> np.ndarray:
    """Lab-frame grid: dense core around the drive plus geometric tails.

    The far tails carry the Lorentzian 1/x^2 weight needed for the spectrum
    sum rule to close at the half-percent level.
    """
    w = params.omega
    core = np.arange(w - core_halfwidth, w + core_halfwidth + 0.5 * core_step, core_step)
    tail = np.geomspace(core_halfwidth * 1.05, tail_halfwidth, tail_points)
    return np.unique(np.concatenate([w - tail[::-1], core, w + tail]))


def emission_spectrum(L: Superoperator, rho_st: DensityMatrix, ops: OperatorSet,
                      params: SystemParams, freq_grid: Sequence[float]) -> Spectrum:
    """Incoherent spectrum S(w_s) = 2 Re Tr[da * X(w_s)] with
    (L + i(w_s - omega) Id) vec(X) = -vec(rho_st da^dag), da = a - <a>.

    The stationary mode of L is deflated (rank-one shift along
    vec(rho_st) vec(I)^dag) so the elastic point w_s = omega is regular;
    the coherent delta peak is excluded by using the fluctuation operator.
    One complex Schur factorization serves every frequency point.
    """
    freqs = np.asarray(freq_grid, dtype=float)
    if freqs.size == 0:
        raise ValueError("empty frequency grid")
    d = L.dim
    if rho_st.space.dim != d or ops.space.dim != d:
        raise ValueError("dimension mismatch between generator, state and operators")
    a = ops.a.matrix
    a_mean = np.trace(rho_st.matrix @ a)
    da = a - a_mean * np.eye(d)
    rhs = -vec(rho_st.matrix @ da.conj().T)

    # deflate the zero mode; scale the shift to the generator norm
    shift = max(np.linalg.norm(L.matrix, 1) / (d * d), 1e-6)
    defl = L.matrix + shift * np.outer(vec(rho_st.matrix), vec(np.eye(d)).conj())
    T, Q = schur(defl, output="complex")
    qrhs = Q.conj().T @ rhs
    tdiag = np.diagonal(T)
    tnorm = np.abs(tdiag).max()

    da_vec_left = vec(da.conj().T).conj()   # Tr(da X) = vec(da^dag)^dag vec(X)
    eye = np.eye(d * d)
    values = np.empty_like(freqs)
    for i, ws in enumerate(freqs):
        theta = 1j * (ws - params.omega)
        if np.abs(tdiag + theta).min() < 1e-14 * max(tnorm, 1.0):
            raise ValueError(f"shifted system singular at omega_s = {ws}")
        z = solve_triangular(T + theta * eye, qrhs, lower=False)
        values[i] = 2.0 * (da_vec_left @ (Q @ z)).real
    return Spectrum(freqs=freqs, values=values, params=params)


def spectrum_sum_rule_gap(s: Spectrum, rho_st: DensityMatrix, ops: OperatorSet) -> float:
    """Relative deviation of trapz(S)/(2 pi) from <a^dag a> - |<a>|^2."""
    lhs = np.trapezoid(s.values, s.freqs) / (2 * np.pi)
    a_mean = np.trace(rho_st.matrix @ ops.a.matrix)
    rhs = (expectation(ops.n_phot, rho_st).real - abs(a_mean) ** 2)
    return float(abs(lhs - rhs) / abs(rhs))


def spectral_width(s: Spectrum) -> float:
    """Equivalent width: integral divided by the maximum.

    Robust for multi-peaked spectra where a half-maximum width is
    ill-defined.
    """
    if s.values.size == 0:
        raise UndefinedWidthError("empty spectrum")
    peak = float(s.values.max())
    if peak <= 0.0:
        raise UndefinedWidthError("spectrum has no positive values")
    return float(np.trapezoid(s.values, s.freqs) / peak)


def transition_graph(rho_st: DensityMatrix, channels: ChannelSet,
                     eig: EigenSystem) -> TransitionGraph:
    """Typed dissipative fluxes between dressed states.

    Edge flux uses the zero-clamped populations; the residual balance at
    each node is carried by the dressed-basis coherences, returned as
    coherence_drift for the conservation check.
    """
    if channels.eig is not eig and not np.array_equal(channels.eig.states, eig.states):
        raise ValueError("channel set was built from a different eigen system")
    U = eig.states
    d = eig.space.dim
    rho_eig = U.conj().T @ rho_st.matrix @ U
    pops = np.maximum(np.real(np.diag(rho_eig)), 0.0)
    edges = []
    for ch in channels.channels:
        if ch.rate == 0.0:
            continue
        for j, k, v in zip(ch.j_idx, ch.k_idx, ch.amplitudes):
            if j == k:
                continue
            w = ch.rate * abs(v) ** 2
            if w == 0.0:
                continue
            edges.append((int(k), int(j), ch.kind, float(w), float(w * pops[k])))
    # dissipator applied to the coherence-only part, diagonal entries
    coh = rho_eig - np.diag(pops)
    drift = np.zeros(d)
    for ch in channels.channels:
        if ch.rate == 0.0:
            continue
        a_eig = np.zeros((d, d), complex)
        a_eig[ch.j_idx, ch.k_idx] = ch.amplitudes
        ada = a_eig.conj().T @ a_eig
        term = ch.rate * (a_eig @ coh @ a_eig.conj().T
                          - 0.5 * (ada @ coh + coh @ ada))
        drift += np.real(np.diag(term))
    return TransitionGraph(populations=pops, edges=edges, coherence_drift=drift)


def write_spectrum_csv(path, s: Spectrum) -> None:
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(["omega_s", "S"])
        for w, v in zip(s.freqs, s.values):
            wr.writerow([fmt(w), fmt(v)])


def write_graph_csv(path, g: TransitionGraph) -> None:
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(["from", "to", "kind", "rate", "flux"])
        for k, j, kind, rate, flux in g.edges:
            wr.writerow([k, j, kind, fmt(rate), fmt(flux)])
