#!/usr/bin/env python3
"""Overlay of emission spectra from one or more spectrum CSVs."""

import argparse
import os

from common import SPECTRUM_HEADER, floats, new_figure, read_csv, run, save_svg

COLORS = ["tab:blue", "tab:red", "tab:green", "tab:orange", "tab:purple"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="inputs", required=True, action="append",
                    help="spectrum CSV (repeatable)")
    ap.add_argument("--label", dest="labels", action="append", default=None,
                    help="legend label per input (repeatable)")
    ap.add_argument("--out", required=True)
    ap.add_argument("--title", default=None)
    ns = ap.parse_args()

    labels = ns.labels or [os.path.splitext(os.path.basename(p))[0] for p in ns.inputs]
    if len(labels) != len(ns.inputs):
        raise ValueError("need one --label per --in")

    fig, ax = new_figure(ns.title)
    for i, (path, label) in enumerate(zip(ns.inputs, labels)):
        _, cols = read_csv(path, expected_header=SPECTRUM_HEADER)
        ax.plot(floats(cols["omega_s"]), floats(cols["S"]),
                color=COLORS[i % len(COLORS)], label=label)
    ax.set_xlabel("ω_s/ω₀")
    ax.set_ylabel("S(ω_s)")
    ax.legend()
    save_svg(fig, ns.out)


if __name__ == "__main__":
    run(main)
