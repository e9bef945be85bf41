#!/usr/bin/env python3
"""Excitation number against drive amplitude from a sweep CSV."""

import argparse

from common import SWEEP_HEADER, floats, new_figure, read_csv, run, save_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="inputs", required=True, help="sweep CSV")
    ap.add_argument("--out", required=True, help="output SVG")
    ap.add_argument("--title", default=None)
    ap.add_argument("--mark-nu", dest="mark_nu", type=float, default=2.8e-3,
                    help="drive amplitude for the dashed reference line")
    ns = ap.parse_args()

    _, cols = read_csv(ns.inputs, expected_header=SWEEP_HEADER)
    nu = floats(cols["nu"])
    n_st = floats(cols["n_st"])

    fig, ax = new_figure(ns.title)
    ax.plot(nu, n_st, color="tab:blue")
    if ns.mark_nu is not None:
        ax.axvline(ns.mark_nu, color="gray", linestyle="--", linewidth=1)
    ax.set_xlabel("ν/ω₀")
    ax.set_ylabel("n_st")
    save_svg(fig, ns.out)


if __name__ == "__main__":
    run(main)
