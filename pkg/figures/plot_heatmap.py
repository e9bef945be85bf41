#!/usr/bin/env python3
"""Excitation-number heat map over drive amplitude and frequency from a
2-d map CSV.  The vertical axis is the detuning from the first upper
polariton, omega - omega_ref."""

import argparse

import numpy as np

from common import SWEEP_HEADER, floats, new_figure, read_csv, run, save_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="inputs", required=True, help="map CSV")
    ap.add_argument("--out", required=True)
    ap.add_argument("--title", default=None)
    ap.add_argument("--omega-ref", dest="omega_ref", type=float, default=1.01,
                    help="reference frequency subtracted on the vertical axis")
    ns = ap.parse_args()

    _, cols = read_csv(ns.inputs, expected_header=SWEEP_HEADER)
    nu = np.array(floats(cols["nu"]))
    omega = np.array(floats(cols["omega"]))
    n_st = np.array(floats(cols["n_st"]))
    nus = np.unique(nu)
    omegas = np.unique(omega)
    if len(nus) * len(omegas) != len(nu):
        raise ValueError("map CSV is not a full Cartesian grid")
    grid = np.full((len(omegas), len(nus)), np.nan)
    oi = np.searchsorted(omegas, omega)
    ni = np.searchsorted(nus, nu)
    grid[oi, ni] = n_st

    fig, ax = new_figure(ns.title)
    det = omegas - ns.omega_ref
    mesh = ax.pcolormesh(nus, det, grid, shading="nearest", cmap="magma")
    fig.colorbar(mesh, ax=ax, label="n_st")
    ax.set_xlabel("ν/ω₀")
    ax.set_ylabel("(ω − ω_ref)/ω₀")
    save_svg(fig, ns.out)


if __name__ == "__main__":
    run(main)
