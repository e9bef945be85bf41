"""Shared plumbing for the figure scripts: strict CSV schema checks and
deterministic SVG output (fixed hash salt, no timestamps, text kept as text).
"""

import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

SWEEP_HEADER = ["nu", "omega", "n_st", "photon_rate", "energy_flux",
                "spectral_width", "n_max_used", "residual", "status"]
SPECTRUM_HEADER = ["omega_s", "S"]


class SchemaError(ValueError):
    pass


def read_csv(path, expected_header=None, header_prefix=None):
    """Load a CSV as a dict of string columns; validate the header exactly.

    expected_header pins the full header; header_prefix pins the leading
    columns and requires every remaining one to start with 'E_'.
    """
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}")
    if not rows:
        raise SchemaError(f"{path}: empty file, expected header "
                          f"{expected_header or header_prefix}")
    header = rows[0]
    if expected_header is not None and header != expected_header:
        raise SchemaError(
            f"{path}: header mismatch\n  expected: {','.join(expected_header)}\n"
            f"  found:    {','.join(header)}")
    if header_prefix is not None:
        if header[:len(header_prefix)] != header_prefix or any(
                not c.startswith("E_") for c in header[len(header_prefix):]):
            raise SchemaError(
                f"{path}: header mismatch\n  expected: {','.join(header_prefix)},E_*...\n"
                f"  found:    {','.join(header)}")
    if len(rows) < 2:
        raise SchemaError(f"{path}: no data rows")
    cols = {name: [r[i] for r in rows[1:]] for i, name in enumerate(header)}
    return header, cols


def floats(col):
    return [float(x) if x != "" else float("nan") for x in col]


def new_figure(title=None):
    plt.rcParams["svg.hashsalt"] = "figures"
    plt.rcParams["svg.fonttype"] = "none"
    fig, ax = plt.subplots(figsize=(6.0, 3.8))
    if title:
        ax.set_title(title)
    return fig, ax


def save_svg(fig, path):
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def run(main_fn):
    try:
        main_fn()
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        sys.exit(1)
    except SystemExit as exc:  # argparse uses status 2 for usage errors
        sys.exit(0 if exc.code in (0, None) else 1)
    except Exception as exc:  # missing files, bad arguments
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(1)
    sys.exit(0)
