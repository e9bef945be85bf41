"""Global-basis jump channels: Bohr-frequency-resolved components of the
cavity, emitter and dephasing couplings with thermal detailed-balance rates.

Construction
------------
The system Hamiltonian is diagonalized and each bare jump operator
A in {a, sigma, sigma^dag sigma} is decomposed over eigenstate pairs,
A_jk = <j|A|k>.  A pair (j, k) carries the Bohr frequency
w = eps_k - eps_j (energy released by the transition k -> j).  Pairs are
grouped into clusters:

* all pairs with w == 0 exactly (the operator diagonals, plus exact
  degeneracies) form one reserved "elastic" cluster;
* the remaining pairs are grouped into fixed frequency bins of width
  min(delta_secular, QD_CAP), never mixing signs of w.

The cap keeps the inelastic constellation resolved: letting the grouping
width approach the dressed-level spacing collapses the decomposition toward
the local (single-jump) form and erases the frequency structure the global
approach exists to capture.  Below the cap delta_secular acts literally.

Each cluster becomes one JumpChannel whose operator is the sum of its
components mapped back to the product basis; summed over channels the
original operator is recovered exactly (completeness).

Rates
-----
Cavity and emitter channels couple to optical-frequency reservoirs
(lab frequency omega + w ~ omega0), which are thermally empty at any
temperature of interest; they take the bare rates gamma_a / gamma_D.
Dephasing channels exchange quanta at the rotating-frame Bohr frequency
itself and carry thermal factors with n(x) = 1/(exp(x/T) - 1):

* "bose":   gamma_ph * (n(|w|)+1) downward, gamma_ph * n(|w|) upward;
* "ohmic":  the same factors weighted by |w| / (2*Omega_R), which removes
  the T/|w| divergence of the flat-bath factors at small Bohr frequencies
  while agreeing with "bose" exactly at |w| = 2*Omega_R (the undriven
  intra-manifold line).

Both choices satisfy Gamma_up/Gamma_down = exp(-|w|/T) exactly.  The
elastic cluster takes gamma_ph (policy "bare") or gamma_ph * T/(2*Omega_R)
(policy "scaled", the w -> 0 limit of the ohmic rates).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import List

import numpy as np
from scipy.linalg import eigh

from .model import SystemParams
from .operators import Operator, OperatorSet, SpaceConfig, _frozen

# Grouping width cap: genuine degeneracies merge, the inelastic constellation
# stays resolved.  See module docstring.
QD_CAP = 1e-6


@dataclass(frozen=True)
class EigenSystem:
    """Sorted eigendecomposition of the system Hamiltonian.

    energies ascend; states' columns are the eigenvectors with the phase
    fixed so the largest-magnitude entry of each column is real positive.
    """

    energies: np.ndarray
    states: np.ndarray
    space: SpaceConfig


@dataclass(frozen=True)
class JumpChannel:
    """One Bohr-frequency cluster of a decomposed jump operator.

    j_idx, k_idx, amplitudes hold the eigenbasis components
    A_jk |j><k|; `op` maps them back to the product basis on demand.
    """

    kind: str                 # "cavity" | "molecule" | "dephasing"
    bohr_freq: float          # |amp|^2-weighted mean of eps_k - eps_j (0 for elastic)
    lab_freq: float
    rate: float
    j_idx: np.ndarray
    k_idx: np.ndarray
    amplitudes: np.ndarray
    basis: np.ndarray         # eigenvector matrix of the parent EigenSystem
    space: SpaceConfig
    elastic: bool = False

    @property
    def op(self) -> Operator:
        """Channel operator in the product basis."""
        U = self.basis
        d = self.space.dim
        m = np.zeros((d, d), complex)
        m[self.j_idx, self.k_idx] = self.amplitudes
        return Operator(_frozen(U @ m @ U.conj().T), self.space)

    @property
    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class ChannelSet:
    channels: List[JumpChannel]
    eig: EigenSystem
    params: SystemParams

    def of_kind(self, kind: str) -> List[JumpChannel]:
        return [c for c in self.channels if c.kind == kind]


def diagonalize_h(h: Operator, herm_tol: float = 1e-12) -> EigenSystem:
    """Eigendecomposition with deterministic ordering and phase convention."""
    m = h.matrix
    asym = np.abs(m - m.conj().T).max()
    if asym > herm_tol:
        raise ValueError(f"matrix not Hermitian: max |H - H^dag| = {asym:.3e}")
    energies, states = eigh(m)
    order = np.argsort(energies, kind="stable")
    energies = energies[order]
    states = states[:, order]
    # phase: largest-magnitude entry of each column real and positive
    idx = np.argmax(np.abs(states), axis=0)
    lead = states[idx, np.arange(states.shape[1])]
    phase = np.where(np.abs(lead) > 0, lead / np.where(np.abs(lead) > 0, np.abs(lead), 1.0), 1.0)
    states = states / phase[None, :]
    energies = np.ascontiguousarray(energies)
    states = np.ascontiguousarray(states)
    energies.flags.writeable = False
    states.flags.writeable = False
    return EigenSystem(energies=energies, states=states, space=h.space)


def _nbar(x: float, T: float) -> float:
    """Thermal occupation 1/(exp(x/T)-1) for x > 0; exactly 0 at T = 0."""
    if T == 0.0:
        return 0.0
    z = x / T
    if z > 700.0:
        return 0.0
    return 1.0 / np.expm1(z)


def _dephasing_rate(wbar: float, params: SystemParams) -> float:
    base = params.gamma_ph
    w_ref = 2.0 * params.Omega_R
    x = abs(wbar)
    occ = _nbar(x, params.temperature)
    thermal = occ + 1.0 if wbar > 0 else occ
    if params.thermal_factor_policy == "ohmic" and w_ref > 0:
        return base * (x / w_ref) * thermal
    return base * thermal


def _elastic_rate(kind: str, base: float, params: SystemParams) -> float:
    if kind != "dephasing":
        return base
    if params.elastic_rate_policy == "scaled":
        w_ref = 2.0 * params.Omega_R
        return base * params.temperature / w_ref if w_ref > 0 else base
    return base


def decompose_channels(params: SystemParams, eig: EigenSystem, ops: OperatorSet) -> ChannelSet:
    """Split a, sigma and sigma^dag sigma into Bohr-frequency channels."""
    if params.delta_secular < 0:
        raise ValueError("delta_secular must be >= 0")
    if eig.space.dim != ops.space.dim:
        raise ValueError("eigen system and operator set dimensions differ")
    width = min(params.delta_secular, QD_CAP)
    channels: List[JumpChannel] = []
    bases = (
        (ops.a.matrix, params.gamma_a, "cavity"),
        (ops.sigma.matrix, params.gamma_D, "molecule"),
        (ops.sigma_dag.matrix @ ops.sigma.matrix, params.gamma_ph, "dephasing"),
    )
    for A, base_rate, kind in bases:
        channels.extend(_decompose_one(A, base_rate, kind, params, eig, width))
    return ChannelSet(channels=channels, eig=eig, params=params)


def _decompose_one(A, base_rate, kind, params, eig, width) -> List[JumpChannel]:
    U = eig.states
    energies = eig.energies
    d = eig.space.dim
    At = U.conj().T @ A @ U
    jj, kk = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    jj = jj.ravel()
    kk = kk.ravel()
    w = energies[kk] - energies[jj]
    amps = At.ravel()
    weight = np.abs(amps) ** 2

    # bin key: 0 reserved for exact zeros; otherwise signed with |key| >= 1
    if width > 0:
        key = np.rint(np.abs(w) / width).astype(np.int64)
        key = np.maximum(key, 1)
    else:
        # zero grouping width: each distinct |w| value its own cluster
        _, key = np.unique(np.abs(w), return_inverse=True)
        key = key.astype(np.int64) + 1
    key = np.where(w == 0.0, 0, key * np.sign(w).astype(np.int64))

    out = []
    for kval in np.unique(key):
        sel = np.nonzero(key == kval)[0]
        elastic = kval == 0
        tot = weight[sel].sum()
        if elastic:
            wbar = 0.0
        elif tot > 0.0:
            wbar = float((weight[sel] * w[sel]).sum() / tot)
        else:
            wbar = float(w[sel[0]])
        if kind == "dephasing":
            rate = _elastic_rate(kind, base_rate, params) if elastic \
                else _dephasing_rate(wbar, params)
            lab = abs(wbar)
        else:
            rate = base_rate
            lab = params.omega + wbar
        out.append(JumpChannel(
            kind=kind, bohr_freq=wbar, lab_freq=lab, rate=float(rate),
            j_idx=jj[sel], k_idx=kk[sel], amplitudes=amps[sel],
            basis=U, space=eig.space, elastic=bool(elastic),
        ))
    return out


def channel_trace(channel: JumpChannel, rho_eig: np.ndarray) -> float:
    """Tr(A rho A^dag) evaluated from eigenbasis data.

    rho_eig is the density matrix rotated into the channel's eigenbasis.
    """
    j, k, v = channel.j_idx, channel.k_idx, channel.amplitudes
    same_j = j[:, None] == j[None, :]
    val = (v[:, None] * v[None, :].conj() * rho_eig[k[:, None], k[None, :]] * same_j).sum()
    return float(val.real)


def write_channels_csv(path, channels: ChannelSet) -> None:
    """Dump kind, bohr_freq, lab_freq, rate, frobenius_norm per channel."""
    from .csvio import fmt
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(["kind", "bohr_freq", "lab_freq", "rate", "frobenius_norm"])
        for c in channels.channels:
            wr.writerow([c.kind, fmt(c.bohr_freq), fmt(c.lab_freq),
                         fmt(c.rate), fmt(c.frobenius_norm)])
