"""Figure-script acceptance: every kind renders from the committed fixtures
with exit 0 and a byte-deterministic SVG body, without the simulator package
installed.  Covers acceptance criterion 12.
"""

import os
import subprocess
import sys

import pytest

HERE = os.path.dirname(os.path.abspath(__file__))
SCRIPTS = os.path.dirname(HERE)
FIX = os.path.join(SCRIPTS, "fixtures")


def _run(script, args):
    return subprocess.run(
        [sys.executable, os.path.join(SCRIPTS, script)] + args,
        capture_output=True, text=True, cwd=SCRIPTS,
    )


def _render_twice(script, args, out_path):
    first = _run(script, args)
    assert first.returncode == 0, first.stderr
    body1 = open(out_path, "rb").read()
    assert len(body1) > 0
    second = _run(script, args)
    assert second.returncode == 0, second.stderr
    body2 = open(out_path, "rb").read()
    assert body1 == body2, "SVG body is not deterministic"
    return body1


CASES = [
    ("plot_sweep_line.py",
     lambda out: ["--in", os.path.join(FIX, "fixture_sweep.csv"), "--out", out]),
    ("plot_spectrum_overlay.py",
     lambda out: ["--in", os.path.join(FIX, "fixture_spectrum_4p5e-3.csv"),
                  "--in", os.path.join(FIX, "fixture_spectrum_4p9e-3.csv"),
                  "--in", os.path.join(FIX, "fixture_spectrum_5p3e-3.csv"),
                  "--label", "low", "--label", "middle", "--label", "high",
                  "--out", out]),
    ("plot_level_trace.py",
     lambda out: ["--in", os.path.join(FIX, "fixture_levels.csv"), "--out", out]),
    ("plot_gap_curve.py",
     lambda out: ["--in", os.path.join(FIX, "fixture_levels.csv"),
                  "--pair", "LP1:UP4", "--out", out]),
    ("plot_heatmap.py",
     lambda out: ["--in", os.path.join(FIX, "fixture_map.csv"), "--out", out]),
]


@pytest.mark.parametrize("script,make_args", CASES, ids=[c[0] for c in CASES])
def test_renders_deterministically(script, make_args, tmp_path):
    out = str(tmp_path / (script.replace(".py", "") + ".svg"))
    body = _render_twice(script, make_args(out), out)
    assert body.startswith(b"<?xml")


def test_sweep_line_axis_labels(tmp_path):
    out = str(tmp_path / "sweep.svg")
    body = _render_twice(
        "plot_sweep_line.py",
        ["--in", os.path.join(FIX, "fixture_sweep.csv"), "--out", out], out)
    text = body.decode("utf-8")
    assert "ν/ω₀" in text
    assert "n_st" in text


def test_spectrum_overlay_has_three_curves(tmp_path):
    out = str(tmp_path / "overlay.svg")
    body = _render_twice("plot_spectrum_overlay.py", CASES[1][1](out), out)
    text = body.decode("utf-8")
    for label in ("low", "middle", "high"):
        assert label in text


def test_empty_csv_fails_with_schema_diff(tmp_path):
    out = str(tmp_path / "x.svg")
    res = _run("plot_sweep_line.py",
               ["--in", os.path.join(FIX, "fixture_empty.csv"), "--out", out])
    assert res.returncode == 1
    assert "schema" in res.stderr.lower() or "expected" in res.stderr.lower()
    assert not os.path.exists(out)


def test_header_mismatch_fails(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("nu,n_st\n0,0\n")
    res = _run("plot_sweep_line.py", ["--in", str(bad), "--out", str(tmp_path / "x.svg")])
    assert res.returncode == 1
    assert "header mismatch" in res.stderr


def test_criterion_12_summary(tmp_path):
    ok = True
    for script, make_args in CASES:
        out = str(tmp_path / (script + ".svg"))
        r1 = _run(script, make_args(out))
        b1 = open(out, "rb").read() if r1.returncode == 0 else b""
        r2 = _run(script, make_args(out))
        b2 = open(out, "rb").read() if r2.returncode == 0 else b"x"
        ok = ok and r1.returncode == 0 and r2.returncode == 0 and b1 == b2
    print(f"\nACCEPTANCE 12 [{'PASS' if ok else 'FAIL'}] figure scripts render "
          f"deterministically from fixtures")
    assert ok
