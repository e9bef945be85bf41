"""Truncated cavity-emitter Hilbert space and its elementary operators.

Basis convention (fixed, used everywhere in the package): state index
i = 2*n + s with photon number n = 0..n_max slow and emitter level
s in {0 = ground, 1 = excited} fast.  Photon truncation therefore occupies
the trailing 2x2 block of every operator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _frozen(m: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(m, dtype=complex)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class SpaceConfig:
    """Truncated Fock (x) two-level space: D = 2*(n_max+1)."""

    n_max: int
    dim: int


@dataclass(frozen=True)
class Operator:
    """Dense complex matrix acting on a SpaceConfig."""

    matrix: np.ndarray
    space: SpaceConfig

    def __post_init__(self):
        m = self.matrix
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"operator matrix must be square, got shape {m.shape}")
        if m.shape[0] != self.space.dim:
            raise ValueError(
                f"operator dimension {m.shape[0]} does not match space dim {self.space.dim}"
            )

    @property
    def dag(self) -> "Operator":
        return Operator(_frozen(self.matrix.conj().T), self.space)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, (numerically) positive matrix on a SpaceConfig."""

    matrix: np.ndarray
    space: SpaceConfig

    HERM_TOL = 1e-12
    TRACE_TOL = 1e-10
    PSD_TOL = -1e-8

    def __post_init__(self):
        m = self.matrix
        if m.shape != (self.space.dim, self.space.dim):
            raise ValueError(f"density matrix shape {m.shape} does not match space")
        herm = np.abs(m - m.conj().T).max()
        if herm > self.HERM_TOL:
            raise ValueError(f"density matrix not Hermitian: max asymmetry {herm:.3e}")
        tr = np.trace(m)
        if abs(tr - 1.0) > self.TRACE_TOL:
            raise ValueError(f"density matrix trace {tr} not 1 within {self.TRACE_TOL}")
        lo = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min())
        if lo < self.PSD_TOL:
            raise ValueError(f"density matrix has eigenvalue {lo:.3e} below {self.PSD_TOL}")

    @property
    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix).min())


@dataclass(frozen=True)
class OperatorSet:
    """The ladder and emitter operators of the truncated space."""

    a: Operator
    a_dag: Operator
    sigma: Operator
    sigma_dag: Operator
    n_phot: Operator
    n_mol: Operator
    n_tot: Operator

    @property
    def space(self) -> SpaceConfig:
        return self.a.space


def build_space(n_max: int) -> SpaceConfig:
    """Configure the truncated space; n_max >= 1."""
    if not isinstance(n_max, (int, np.integer)) or isinstance(n_max, bool):
        raise ValueError(f"n_max must be an integer, got {n_max!r}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    return SpaceConfig(n_max=int(n_max), dim=2 * (int(n_max) + 1))


def build_operators(space: SpaceConfig) -> OperatorSet:
    """Construct a, a^dag, sigma, sigma^dag and the number operators.

    a acts as a|n,s> = sqrt(n)|n-1,s>; sigma|n,e> = |n,g>, sigma|n,g> = 0.
    n_phot is formed as the exact matrix product a_dag @ a (not rebuilt from
    a diagonal), so the algebraic identities hold bit-exactly.
    """
    n_max = space.n_max
    a_fock = np.zeros((n_max + 1, n_max + 1))
    for n in range(1, n_max + 1):
        a_fock[n - 1, n] = np.sqrt(n)
    eye2 = np.eye(2)
    # emitter lowering operator in the (g, e) ordering: sigma|e> = |g>
    sigma_2 = np.array([[0.0, 1.0], [0.0, 0.0]])

    a = np.kron(a_fock, eye2).astype(complex)
    sigma = np.kron(np.eye(n_max + 1), sigma_2).astype(complex)
    a_dag = a.conj().T
    sigma_dag = sigma.conj().T
    n_phot = a_dag @ a
    n_mol = sigma_dag @ sigma
    n_tot = n_phot + n_mol

    wrap = lambda m: Operator(_frozen(m), space)
    return OperatorSet(
        a=wrap(a),
        a_dag=wrap(a_dag),
        sigma=wrap(sigma),
        sigma_dag=wrap(sigma_dag),
        n_phot=wrap(n_phot),
        n_mol=wrap(n_mol),
        n_tot=wrap(n_tot),
    )


def expectation(op: Operator, rho: DensityMatrix) -> complex:
    """Tr(rho @ op); real within 1e-12 for Hermitian op and valid rho."""
    if op.space.dim != rho.space.dim:
        raise ValueError(
            f"operator dim {op.space.dim} does not match state dim {rho.space.dim}"
        )
    return complex(np.trace(rho.matrix @ op.matrix))


def density_matrix(matrix: np.ndarray, space: SpaceConfig) -> DensityMatrix:
    """Wrap and validate a raw matrix as a DensityMatrix."""
    return DensityMatrix(_frozen(matrix), space)


def trace_distance(rho: DensityMatrix, other: DensityMatrix) -> float:
    """(1/2) * trace norm of the difference."""
    diff = rho.matrix - other.matrix
    return 0.5 * float(np.abs(np.linalg.eigvalsh(0.5 * (diff + diff.conj().T))).sum())
