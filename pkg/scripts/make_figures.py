#!/usr/bin/env python3
"""Render the shipped figures (SVG plus the CSV behind each) at full size.

fig1 tracks the lowest levels of both delta=0 branches across the coupling
sweep for all three methods; fig2 is a 2x3 set of per-sector panels
comparing the squeezed 2x2 truncation against the exact levels for two
spin splittings. `--quick` drops the grid resolution for a fast smoke run.
"""

import argparse
import time
from pathlib import Path

from tmtp_rabi.plotting import fig1_specs, fig2_specs, render_figure


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", type=Path, default=Path("figs"))
    ap.add_argument("--jobs", type=int, default=1, help="sweep worker threads")
    ap.add_argument(
        "--quick", action="store_true", help="coarse grid and low cutoff smoke run"
    )
    args = ap.parse_args()

    if args.quick:
        grid = dict(lambda_count=13, cutoff=40)
        specs = fig1_specs(levels=6, **grid) + fig2_specs(levels=4, **grid)
    else:
        specs = fig1_specs() + fig2_specs()

    args.outdir.mkdir(parents=True, exist_ok=True)
    for spec in specs:
        started = time.perf_counter()
        svg_path, csv_path = render_figure(spec, args.outdir, jobs=args.jobs)
        print(f"{spec.name}: {svg_path} {csv_path} ({time.perf_counter() - started:.1f}s)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
