"""Master-equation generator, stationary state and time propagation.

Vectorization convention (column stacking): entry (j, k) of rho maps to flat
index k*D + j, so vec(A rho B) = (B^T kron A) vec(rho).  All superoperator
matrices in this package act on the product basis.

The generator is assembled in the eigenbasis of the system Hamiltonian,
where the coherent part is diagonal and each jump channel touches only its
member index pairs, and is then rotated to the product basis with
W = conj(U) kron U applied as four D^5 tensor contractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np
from scipy.linalg import expm, lu_factor, lu_solve
from scipy.linalg import lapack as _lapack

from .dissipators import ChannelSet, EigenSystem, JumpChannel, decompose_channels, diagonalize_h
from .model import SystemParams, build_h_system
from .operators import (DensityMatrix, Operator, SpaceConfig,
                        build_operators, build_space, density_matrix)


class DegenerateSteadyStateError(RuntimeError):
    """The generator kernel is (numerically) more than one-dimensional."""

    def __init__(self, sv_smallest, sv_second):
        super().__init__(
            f"steady state not unique: two smallest singular values "
            f"{sv_smallest:.3e}, {sv_second:.3e}"
        )
        self.sv_smallest = sv_smallest
        self.sv_second = sv_second


class PropagationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Superoperator:
    matrix: np.ndarray
    space: SpaceConfig

    @property
    def dim(self) -> int:
        return self.space.dim

    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix))


@dataclass(frozen=True)
class SteadyState:
    rho: DensityMatrix
    residual: float
    min_eigenvalue: float
    method: str          # "constrained-solve" | "nullspace-svd"


def vec(m: np.ndarray) -> np.ndarray:
    return m.reshape(-1, order="F")


def unvec(v: np.ndarray) -> np.ndarray:
    d = int(round(np.sqrt(v.size)))
    return v.reshape((d, d), order="F")


def _kron_unitary_conj(U: np.ndarray, X: np.ndarray) -> np.ndarray:
    """(conj(U) kron U) @ X without forming the Kronecker product."""
    d = U.shape[0]
    X4 = X.reshape(d, d, -1)
    t = np.tensordot(U, X4, axes=(1, 1))          # rows of the r-index
    t = np.tensordot(U.conj(), t, axes=(1, 1))    # rows of the c-index
    return t.reshape(d * d, -1)


def _eig_to_product(L_eig: np.ndarray, U: np.ndarray) -> np.ndarray:
    """W L_eig W^dag with W = conj(U) kron U."""
    WL = _kron_unitary_conj(U, L_eig)
    return _kron_unitary_conj(U, WL.conj().T).conj().T


def _assemble_eigenbasis(energies: np.ndarray, channels: Iterable[JumpChannel],
                         include_h: bool = True) -> np.ndarray:
    d = len(energies)
    L = np.zeros((d * d, d * d), complex)
    if include_h:
        cidx, ridx = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
        diag = -1j * (energies[ridx].ravel() - energies[cidx].ravel())
        L[np.arange(d * d), np.arange(d * d)] = diag
    K = np.zeros((d, d), complex)
    for ch in channels:
        rate = ch.rate
        if rate == 0.0 or ch.j_idx.size == 0:
            continue
        j, k, v = ch.j_idx, ch.k_idx, ch.amplitudes
        # vec index f = c*D + r; A rho A^dag sets r = j_p, c = j_q, m = k_p, n = k_q
        rows = (j[None, :] * d + j[:, None]).ravel()
        cols = (k[None, :] * d + k[:, None]).ravel()
        vals = (rate * (v[:, None] * v[None, :].conj())).ravel()
        np.add.at(L, (rows, cols), vals)
        a_eig = np.zeros((d, d), complex)
        a_eig[j, k] = v
        K += rate * (a_eig.conj().T @ a_eig)
    eye = np.eye(d)
    L -= 0.5 * (np.kron(eye, K) + np.kron(K.T, eye))
    return L


def liouvillian_matrix(eig: EigenSystem, channels: Iterable[JumpChannel],
                       include_h: bool = True) -> Superoperator:
    """Product-basis generator from an eigen system and a channel list.

    With include_h=False only the dissipative part is assembled (used by
    the dual-route observable checks).
    """
    L_eig = _assemble_eigenbasis(eig.energies, channels, include_h=include_h)
    L = _eig_to_product(L_eig, eig.states)
    L = np.ascontiguousarray(L)
    L.flags.writeable = False
    return Superoperator(matrix=L, space=eig.space)


def assemble_liouvillian(params: SystemParams) -> Tuple[Superoperator, ChannelSet, EigenSystem]:
    """Full pipeline: Hamiltonian -> eigenbasis -> channels -> generator."""
    ops = build_operators(build_space(params.n_max))
    h = build_h_system(params, ops)
    eig = diagonalize_h(h)
    chans = decompose_channels(params, eig, ops)
    L = liouvillian_matrix(eig, chans.channels)
    return L, chans, eig


def master_rhs(h: Operator, channels: Iterable[JumpChannel], rho: np.ndarray) -> np.ndarray:
    """Direct dense evaluation of the master-equation right-hand side.

    -i[H, rho] + sum_ch Gamma (A rho A^dag - {A^dag A, rho}/2), computed from
    the channel operators in the product basis.  Independent of the
    vectorized assembly; used as its oracle.
    """
    out = -1j * (h.matrix @ rho - rho @ h.matrix)
    for ch in channels:
        if ch.rate == 0.0:
            continue
        A = ch.op.matrix
        AdA = A.conj().T @ A
        out = out + ch.rate * (A @ rho @ A.conj().T - 0.5 * (AdA @ rho + rho @ AdA))
    return out


def steady_state(L: Superoperator, method: str = "auto") -> SteadyState:
    """Stationary density matrix of the generator.

    The primary path replaces the first row of L with the trace constraint
    vec(I)^dag and solves against a unit right-hand side; if that system is
    ill-conditioned (reciprocal condition < 1e-14) the smallest right
    singular vector is used instead.  method forces "constrained" or "svd".
    """
    d = L.dim
    m = L.matrix
    if method not in ("auto", "constrained", "svd"):
        raise ValueError(f"unknown steady-state method {method!r}")

    if method in ("auto", "constrained"):
        sys_m = np.array(m)
        sys_m[0, :] = vec(np.eye(d)).conj()
        rhs = np.zeros(d * d, complex)
        rhs[0] = 1.0
        anorm = np.linalg.norm(sys_m, 1)
        lu, piv = lu_factor(sys_m)
        gecon = _lapack.get_lapack_funcs("gecon", (sys_m,))
        rcond, info = gecon(lu, anorm, norm="1")
        if rcond > 1e-14 or method == "constrained":
            x = lu_solve((lu, piv), rhs)
            return _finish_steady(L, x, "constrained-solve")
        # fall through to SVD on bad conditioning

    _, s, vh = np.linalg.svd(m)
    if s[-2] < 1e-12 * s[0]:
        raise DegenerateSteadyStateError(s[-1], s[-2])
    x = vh[-1].conj()
    tr = np.trace(unvec(x))
    if abs(tr) < 1e-14:
        raise DegenerateSteadyStateError(s[-1], s[-2])
    x = x / tr
    return _finish_steady(L, x, "nullspace-svd")


def _finish_steady(L: Superoperator, x: np.ndarray, how: str) -> SteadyState:
    rho = unvec(x)
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    residual = float(np.linalg.norm(L.matrix @ vec(rho)))
    dm = density_matrix(rho, L.space)
    return SteadyState(rho=dm, residual=residual,
                       min_eigenvalue=dm.min_eigenvalue, method=how)


def propagate(L: Superoperator, rho0: DensityMatrix, t_final: float) -> DensityMatrix:
    """exp(L t_final) applied to rho0, via scaling-and-squaring.

    The matrix exponential (Pade 13 with adaptive squaring depth) keeps the
    local error at machine level, far below the 1e-9 contract; the trace is
    checked to 1e-9 afterwards.  Serves as the independent long-time oracle
    for steady_state.
    """
    if t_final <= 0:
        raise ValueError(f"t_final must be positive, got {t_final}")
    if rho0.space.dim != L.dim:
        raise ValueError("initial state dimension does not match the generator")
    if not np.all(np.isfinite(L.matrix)):
        raise PropagationError("generator contains non-finite entries")
    prop = expm(L.matrix * t_final)
    y = prop @ vec(rho0.matrix)
    if not np.all(np.isfinite(y)):
        raise PropagationError(
            f"propagation to t={t_final} overflowed; |L|~{np.linalg.norm(L.matrix):.3e}"
        )
    rho = unvec(y)
    rho = 0.5 * (rho + rho.conj().T)
    drift = abs(np.trace(rho).real - 1.0)
    if drift > 1e-9:
        raise PropagationError(f"trace drifted by {drift:.3e} (> 1e-9) during propagation")
    return density_matrix(rho / np.trace(rho).real, rho0.space)
