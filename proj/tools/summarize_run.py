#!/usr/bin/env python3
"""Summarize the CSV/JSON artifacts of an irdecoh run directory.

Reads only the standard library.  Typical use:

    build/irdecoh --config configs/reference.ini --out out all
    python3 tools/summarize_run.py out

Prints the manifest header, per-artifact key numbers, a fitted power law for
the decoherence scan, and small ASCII plots of the photon spectrum and the
off-diagonal decay.
"""

import argparse
import csv
import json
import math
import sys
from pathlib import Path


def read_csv(path):
    """Return (comments, list-of-dict rows with float values)."""
    comments, rows, header = [], [], None
    with open(path, newline="") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                comments.append(line[1:].strip())
                continue
            fields = next(csv.reader([line]))
            if header is None:
                header = fields
                continue
            rows.append({k: float(v) for k, v in zip(header, fields)})
    return comments, rows


def log_fit(xs, ys):
    """Least-squares slope/intercept/R^2 of ys against ln(1/xs)."""
    ls = [math.log(1.0 / x) for x in xs]
    n = len(ls)
    mx, my = sum(ls) / n, sum(ys) / n
    sxx = sum((l - mx) ** 2 for l in ls)
    sxy = sum((l - mx) * (y - my) for l, y in zip(ls, ys))
    syy = sum((y - my) ** 2 for y in ys)
    slope = sxy / sxx
    r2 = 1.0 if syy == 0.0 else (sxy * sxy) / (sxx * syy)
    return slope, my - slope * mx, r2


def bar_plot(labels, values, width=48, unit=""):
    vmax = max(values) if values else 0.0
    for label, v in zip(labels, values):
        n = 0 if vmax <= 0 else round(width * v / vmax)
        print(f"    {label:>12} | {'#' * n}{' ' * (width - n)} {v:.4g}{unit}")


def section(title):
    print(f"\n== {title} " + "=" * max(0, 60 - len(title)))


def show_manifest(run):
    path = run / "manifest.json"
    if not path.exists():
        print(f"note: {path} not found (incomplete run?)")
        return
    m = json.loads(path.read_text())
    section("manifest")
    print(f"  command      : {m.get('command')}")
    print(f"  config_hash  : {m.get('config_hash')}")
    print(f"  threads      : {m.get('threads')}")
    for k, v in sorted(m.get("timings_ms", {}).items()):
        print(f"  timing       : {k:<18} {v:9.1f} ms")
    for w in m.get("warnings", []):
        print(f"  WARNING      : {w}")
    for k, v in m.get("verdicts", {}).items():
        print(f"  verdict      : {k} = {v}")


def show_spectrum(run):
    path = run / "spectrum.csv"
    if not path.exists():
        return
    _, rows = read_csv(path)
    section("photon spectrum")
    total = sum(r["dn"] for r in rows)
    print(f"  bins: {len(rows)}, total n_bar in window: {total:.8g}")
    labels = [f"{r['k_lo']:.1e}" for r in rows]
    bar_plot(labels, [r["dn_dlnk"] for r in rows])
    summary = run / "radiation_summary.csv"
    if summary.exists():
        _, srows = read_csv(summary)
        r = srows[0]
        print(f"  v = {r['v']:.8g}   n_bar = {r['n_bar']:.8g}   "
              f"persistence = {r['vacuum_persistence']:.8g}")
        if r["brf_warning"]:
            print(f"  WARNING: back-reaction ratio {r['brf_ratio']:.3g} > 0.1")


def show_decoherence(run):
    path = run / "decoherence.csv"
    if not path.exists():
        return
    _, rows = read_csv(path)
    section("decoherence scan")
    ks = [r["k_min"] for r in rows]
    off = [r["max_offdiag"] for r in rows]
    pur = [r["purity"] for r in rows]
    slope, _, r2 = log_fit(ks, [math.log(o) for o in off])
    print(f"  max|rho_lm| ~ k_min^{-slope:.5f}   (fit R^2 = {r2:.10f})")
    print(f"  purity: {pur[0]:.8g} (k_min={ks[0]:.1e}) -> {pur[-1]:.8g} "
          f"(k_min={ks[-1]:.1e}), pure-dephasing floor sum|c|^4 = "
          f"{rows[0]['sum_c4']:.8g}")
    bar_plot([f"{k:.1e}" for k in ks], off)


def show_overlap(run):
    path = run / "phase_coefficients.csv"
    if not path.exists():
        return
    _, rows = read_csv(path)
    section("branch-pair phase coefficients")
    print("  pair  theta_l theta_m  opening   delta-coeff      d-coeff")
    for r in rows:
        print(f"  {int(r['pair']):>4}  {r['theta_l']:7.3f} {r['theta_m']:7.3f} "
              f"{r['phi_lm']:8.4f}  {r['delta_coeff']:+.6e}  {r['d_coeff']:+.6e}")


def show_weak(run):
    path = run / "weak_asymmetry.csv"
    if not path.exists():
        return
    _, rows = read_csv(path)
    section("helicity asymmetry sigma_R/sigma_L")
    for r in rows:
        print(f"  sqrt_s {r['sqrt_s']:5.1f}: massless {r['asym_massless']:.3e}  "
              f"config {r['asym_config']:.3e}  m_nu=0.05 {r['asym_massive_nu']:.3e}")


def show_restoration(run):
    path = run / "restoration.csv"
    if not path.exists():
        return
    _, rows = read_csv(path)
    section("restoration Monte Carlo")
    for r in rows:
        exact = 0.5 * (1.0 - math.cos(r["epsilon"]))
        pull = (r["p_hat"] - exact) / r["sigma"] if r["sigma"] > 0 else float("nan")
        print(f"  epsilon {r['epsilon']:5.2f}: p_hat {r['p_hat']:.6e} "
              f"+- {r['sigma']:.1e}   (1-cos eps)/2 = {exact:.6e}   "
              f"pull {pull:+.2f} sigma")
    fit = run / "restoration_fit.csv"
    if fit.exists():
        _, frows = read_csv(fit)
        f = frows[0]
        verdict = "yes" if f["consistent_with_zero"] else "NO"
        print(f"  fit: p ~ eps^{f['exponent']:.4f} +- {f['exponent_err']:.4f}, "
              f"P(0) = {f['p_zero']:g}, consistent with zero: {verdict}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("run_dir", nargs="?", default="out",
                    help="run output directory (default: out)")
    args = ap.parse_args()
    run = Path(args.run_dir)
    if not run.is_dir():
        sys.exit(f"error: {run} is not a directory")
    print(f"run directory: {run}")
    show_manifest(run)
    show_spectrum(run)
    show_overlap(run)
    show_decoherence(run)
    show_weak(run)
    show_restoration(run)
    print()


if __name__ == "__main__":
    main()
