#!/usr/bin/env python3
"""Dressed-level energies against drive amplitude from a levels CSV."""

import argparse

from common import floats, new_figure, read_csv, run, save_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="inputs", required=True, help="levels CSV")
    ap.add_argument("--out", required=True)
    ap.add_argument("--title", default=None)
    ap.add_argument("--labels", default=None,
                    help="comma-separated level labels (default: all)")
    ns = ap.parse_args()

    header, cols = read_csv(ns.inputs, header_prefix=["nu"])
    nu = floats(cols["nu"])
    wanted = ([f"E_{x}" for x in ns.labels.split(",")] if ns.labels
              else [c for c in header if c != "nu"])
    missing = [c for c in wanted if c not in cols]
    if missing:
        raise ValueError(f"labels not in CSV: {missing}")

    fig, ax = new_figure(ns.title)
    for name in wanted:
        emphasis = name in ("E_LP1", "E_UP4")
        ax.plot(nu, floats(cols[name]),
                color="tab:blue" if name == "E_LP1"
                else "tab:red" if name == "E_UP4" else "0.6",
                linewidth=1.6 if emphasis else 0.8,
                label=name[2:] if emphasis else None)
    ax.set_xlabel("ν/ω₀")
    ax.set_ylabel("E/ω₀")
    if any(n in ("E_LP1", "E_UP4") for n in wanted):
        ax.legend()
    save_svg(fig, ns.out)


if __name__ == "__main__":
    run(main)
