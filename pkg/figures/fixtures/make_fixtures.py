#!/usr/bin/env python3
"""Regenerate the synthetic fixture CSVs used by the figure-script tests.

The numbers are made up; only the schemas match the simulator's outputs.
"""

import csv
import os

import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))


def fmt(x):
    return f"{float(x):.17g}"


def lorentz(x, x0, w):
    return w ** 2 / ((x - x0) ** 2 + w ** 2)


def write(path, header, rows):
    with open(os.path.join(HERE, path), "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(header)
        wr.writerows(rows)


def sweep_rows(nu, omega, n_st):
    return [[fmt(v), fmt(omega), fmt(n), fmt(1e-3 * n), fmt(1e-3 * n * omega),
             "", 14, fmt(1e-14), "ok"] for v, n in zip(nu, n_st)]


def main():
    header = ["nu", "omega", "n_st", "photon_rate", "energy_flux",
              "spectral_width", "n_max_used", "residual", "status"]

    # three-peak sweep
    nu = np.arange(0.0, 0.012 + 5e-5, 1e-4)
    n_st = (36.0 * nu + 0.9 * lorentz(nu, 2.8e-3, 4e-4)
            + 0.5 * lorentz(nu, 4.9e-3, 5e-4) + 0.7 * lorentz(nu, 9.2e-3, 6e-4))
    write("fixture_sweep.csv", header, sweep_rows(nu, 1.0101, n_st))

    # spectra at three drive amplitudes
    w = np.arange(0.97, 1.05, 5e-5)
    for label, width, extra in (("4p5e-3", 2.5e-3, 0.0),
                                ("4p9e-3", 4.5e-3, 0.35),
                                ("5p3e-3", 3.0e-3, 0.1)):
        s = (lorentz(w, 0.99, width) + 1.2 * lorentz(w, 1.01, width)
             + extra * lorentz(w, 1.0, 2 * width))
        write(f"fixture_spectrum_{label}.csv", ["omega_s", "S"],
              [[fmt(x), fmt(y)] for x, y in zip(w, s)])

    # level trace with an avoided LP1-UP4 crossing
    nu = np.arange(0.0, 4e-3 + 2.5e-6, 5e-5)
    mean = -0.02025 + 0.12 * nu
    half = np.sqrt((1.5e-4 - 0.059 * nu) ** 2 + (5.5e-5) ** 2)
    rows = []
    for i, v in enumerate(nu):
        gs = 0.45 * v
        lp1 = mean[i] + half[i]
        up4 = mean[i] - half[i]
        up1 = -1e-4 - 0.3 * v
        lp2 = -0.0343 + 0.1 * v
        up2 = -0.0061 - 0.2 * v
        rows.append([fmt(v), fmt(gs), fmt(lp1), fmt(up1), fmt(lp2), fmt(up2), fmt(up4)])
    write("fixture_levels.csv",
          ["nu", "E_GS", "E_LP1", "E_UP1", "E_LP2", "E_UP2", "E_UP4"], rows)

    # small Cartesian map with drifting ridges
    nu = np.arange(0.0, 0.012 + 1e-4, 2e-4)
    omegas = np.round(1.0101 + np.arange(-2e-3, 2.1e-3, 1e-3), 10)
    rows = []
    for om in omegas:
        shift = (om - 1.0101) * 2.0
        n_st = (30.0 * nu + 0.8 * lorentz(nu, 2.8e-3 + shift, 4e-4)
                + 0.5 * lorentz(nu, 4.9e-3 + 1.5 * shift, 5e-4)
                + 0.6 * lorentz(nu, 9.2e-3 + 2.5 * shift, 6e-4))
        rows.extend(sweep_rows(nu, om, n_st))
    write("fixture_map.csv", header, rows)

    # deliberately empty file for the schema-error test
    open(os.path.join(HERE, "fixture_empty.csv"), "w").close()


if __name__ == "__main__":
    main()
