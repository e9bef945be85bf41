"""Physical parameters and the rotating-frame Hamiltonian.

Units: hbar = omega0 = 1 throughout; every frequency, rate and energy below
is a dimensionless multiple of the cavity frequency.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List

import numpy as np

from .operators import Operator, OperatorSet, SpaceConfig, _frozen

ELASTIC_POLICIES = ("bare", "scaled")
THERMAL_POLICIES = ("ohmic", "bose")


@dataclass(frozen=True)
class SystemParams:
    """All knobs of the driven cavity-emitter model.

    Defaults are the strong-coupling working point used throughout the test
    suite: gamma_a = 1e-3, gamma_D = 1e-5, gamma_ph = 5e-3, T = 0.02,
    Omega_R = 0.01, omega = 1.0101, n_max = 14.

    delta_secular sets the Bohr-frequency width below which jump components
    are merged into one channel.  For channel construction an internal cap
    (see dissipators.QD_CAP) keeps the inelastic constellation resolved;
    values below the cap act literally.

    thermal_factor_policy selects how temperature enters inelastic dephasing
    channels: "ohmic" weights the bath by |w|/(2*Omega_R) (divergence-free at
    small Bohr frequencies), "bose" applies the flat-bath occupation factors
    n(w)+1 / n(w) directly.  Both obey detailed balance exactly and coincide
    at |w| = 2*Omega_R.
    """

    omega0: float = 1.0
    omega: float = 1.0101
    Omega_R: float = 0.01
    nu: float = 0.0
    gamma_a: float = 1e-3
    gamma_D: float = 1e-5
    gamma_ph: float = 5e-3
    temperature: float = 0.02
    n_max: int = 14
    delta_secular: float = 5e-3
    elastic_rate_policy: str = "bare"
    thermal_factor_policy: str = "ohmic"

    def __post_init__(self):
        if self.omega0 != 1.0:
            raise ValueError("omega0 is the unit of all quantities and must be 1.0")
        for name in ("gamma_a", "gamma_D", "gamma_ph", "temperature", "Omega_R"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)}")
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")
        if self.delta_secular < 0:
            raise ValueError(f"delta_secular must be >= 0, got {self.delta_secular}")
        if self.elastic_rate_policy not in ELASTIC_POLICIES:
            raise ValueError(f"elastic_rate_policy must be one of {ELASTIC_POLICIES}")
        if self.thermal_factor_policy not in THERMAL_POLICIES:
            raise ValueError(f"thermal_factor_policy must be one of {THERMAL_POLICIES}")

    @property
    def delta(self) -> float:
        """Drive detuning omega0 - omega (exact by construction)."""
        return self.omega0 - self.omega

    def with_nu(self, nu: float) -> "SystemParams":
        return replace(self, nu=float(nu))


@dataclass(frozen=True)
class JcLevel:
    """One undriven polariton level, rotating- and lab-frame energies."""

    label: str          # "GS", "LPn" or "UPn"
    manifold: int       # excitation number n (0 for GS)
    energy_rot: float
    energy_lab: float


def build_h_system(params: SystemParams, ops: OperatorSet) -> Operator:
    """Rotating-frame Hamiltonian
    H = delta*(n_phot + n_mol) + Omega_R*(a^dag sigma + a sigma^dag) + nu*(a^dag + a).
    """
    if ops.space.n_max != params.n_max:
        raise ValueError(
            f"operator set built for n_max={ops.space.n_max}, params have {params.n_max}"
        )
    d = params.delta
    h = (
        d * ops.n_phot.matrix
        + d * ops.n_mol.matrix
        + params.Omega_R * (ops.a_dag.matrix @ ops.sigma.matrix
                            + ops.a.matrix @ ops.sigma_dag.matrix)
        + params.nu * (ops.a_dag.matrix + ops.a.matrix)
    )
    return Operator(_frozen(h), ops.space)


def jc_reference_levels(params: SystemParams) -> List[JcLevel]:
    """Undriven (nu = 0) polariton ladder of the truncated space.

    Rotating frame: GS at 0; LPn at n*delta - sqrt(n)*Omega_R and UPn at
    n*delta + sqrt(n)*Omega_R for n = 1..n_max.  Lab frame adds n*omega per
    excitation.  The drive amplitude in `params` is ignored.
    """
    d = params.delta
    w = params.omega
    out = [JcLevel("GS", 0, 0.0, 0.0)]
    for n in range(1, params.n_max + 1):
        split = np.sqrt(n) * params.Omega_R
        lp = n * d - split
        up = n * d + split
        out.append(JcLevel(f"LP{n}", n, lp, lp + n * w))
        out.append(JcLevel(f"UP{n}", n, up, up + n * w))
    return out


def truncation_level(params: SystemParams) -> JcLevel:
    """The single bare |n_max, e> state left over by the photon cutoff.

    It closes the (n_max+1)-excitation manifold on its own (its partner
    |n_max+1, g> is truncated away) and is an exact eigenstate at nu = 0.
    """
    n = params.n_max + 1
    e_rot = n * params.delta
    return JcLevel("TOP", n, e_rot, e_rot + n * params.omega)
