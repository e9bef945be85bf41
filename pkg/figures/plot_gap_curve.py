#!/usr/bin/env python3
"""Energy difference of a level pair against drive amplitude, from a
levels CSV."""

import argparse

from common import floats, new_figure, read_csv, run, save_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="inputs", required=True, help="levels CSV")
    ap.add_argument("--out", required=True)
    ap.add_argument("--title", default=None)
    ap.add_argument("--pair", default="LP1:UP4", help="e.g. LP1:UP4")
    ns = ap.parse_args()

    a, _, b = ns.pair.partition(":")
    if not b:
        raise ValueError(f"pair must look like LP1:UP4, got {ns.pair!r}")
    _, cols = read_csv(ns.inputs, header_prefix=["nu"])
    for lbl in (a, b):
        if f"E_{lbl}" not in cols:
            raise ValueError(f"label {lbl} not in CSV")
    nu = floats(cols["nu"])
    ea = floats(cols[f"E_{a}"])
    eb = floats(cols[f"E_{b}"])
    gap = [abs(x - y) for x, y in zip(ea, eb)]

    fig, ax = new_figure(ns.title)
    ax.plot(nu, gap, color="tab:blue")
    ax.set_xlabel("ν/ω₀")
    ax.set_ylabel(f"|E_{a} − E_{b}|/ω₀")
    save_svg(fig, ns.out)


if __name__ == "__main__":
    run(main)
