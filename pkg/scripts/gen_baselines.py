#!/usr/bin/env python3
"""Regenerate tests/data/regression_baselines.json.

The baselines pin numbers that the library itself defines (near-collapse
level spacings, figure-sweep error statistics, truncation-limited errors).
They are regression anchors, not external truth: regenerate only after an
intentional change, and review the diff.

Usage: python3 scripts/gen_baselines.py [--out PATH]
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

import numpy as np

from tmtp_rabi import (
    ModelParams,
    SectorKey,
    SpectrumTable,
    SweepConfig,
    accuracy_report,
    exact_sector_spectrum,
    lambda_sweep,
    rwa_energies,
    sgrwa_energies,
)

RESONANT = dict(omega1=1.0, omega2=1.0, j=1.0)

# Pinned figure-reproduction sweep: one sector pair, all three methods, the
# tracking range of the accuracy comparison.
FIG_GRID = dict(lambda_start=0.0, lambda_stop=0.9, lambda_count=31)
FIG_LEVELS = 8
FIG_CUTOFF = 100

COLLAPSE_DELTAS = range(-8, 9)
COLLAPSE_CUTOFF = 400
COLLAPSE_LEVELS = 6


def union_lowest(lam: float, k: int) -> np.ndarray:
    """Lowest k energies over the signed-difference sectors, both branches."""
    p = ModelParams(lam=lam, **RESONANT)
    per_sector = [
        exact_sector_spectrum(p, SectorKey(branch=s, delta=d), COLLAPSE_CUTOFF, k)
        for d in COLLAPSE_DELTAS
        for s in (1, -1)
    ]
    return np.sort(np.concatenate(per_sector))[:k]


def collapse_block() -> dict:
    low_99 = union_lowest(0.99, COLLAPSE_LEVELS)
    low_90 = union_lowest(0.90, COLLAPSE_LEVELS)
    gaps_99 = np.diff(low_99)
    gaps_90 = np.diff(low_90)
    return {
        "lambda": 0.99,
        "levels": COLLAPSE_LEVELS,
        "sector_range": [min(COLLAPSE_DELTAS), max(COLLAPSE_DELTAS)],
        "cutoff": COLLAPSE_CUTOFF,
        "lowest_energies": [float(e) for e in low_99],
        "gaps": [float(g) for g in gaps_99],
        "mean_gap": float(gaps_99.mean()),
        "mean_gap_at_0.9": float(gaps_90.mean()),
    }


def figure_sweep() -> SpectrumTable:
    cfg = SweepConfig(
        params=ModelParams(lam=0.0, **RESONANT),
        sectors=(SectorKey(branch=1, delta=0), SectorKey(branch=-1, delta=0)),
        methods=("exact-sector", "rwa", "sgrwa"),
        cutoff=FIG_CUTOFF,
        block_size=2,
        report_levels=FIG_LEVELS,
        **FIG_GRID,
    )
    return lambda_sweep(cfg)


def mean_errors_by_branch(table: SpectrumTable, lam_max: float, levels) -> dict:
    sub = SpectrumTable(
        records=tuple(r for r in table.records if r.lam <= lam_max + 1e-12)
    )
    report = accuracy_report(sub)
    out: dict[str, dict[str, float]] = {}
    for method in ("sgrwa", "rwa"):
        out[method] = {}
        for s in (1, -1):
            errs = [
                row.mean_abs_err
                for row in report.rows
                if row.method == method and row.branch == s and row.level in levels
            ]
            out[method][f"{s:+d}"] = float(np.mean(errs))
    return out


def max_error_over_grid(table: SpectrumTable, method: str) -> float:
    exact = {
        (r.branch, r.lam, r.level): r.energy
        for r in table.records
        if r.method == "exact-sector"
    }
    errs = [
        abs(r.energy - exact[(r.branch, r.lam, r.level)])
        for r in table.records
        if r.method == method
    ]
    return float(max(errs))


def curve_samples(table: SpectrumTable) -> list[dict]:
    """A few fixed (method, branch, lambda, level) energies as regression pins."""
    wanted_lams = (0.0, 0.3, 0.6, 0.9)
    samples = []
    for method in ("exact-sector", "sgrwa", "rwa"):
        for s in (1, -1):
            for lam in wanted_lams:
                for level in (0, 3, 7):
                    rows = [
                        r
                        for r in table.records
                        if r.method == method
                        and r.branch == s
                        and r.level == level
                        and abs(r.lam - lam) < 1e-12
                    ]
                    if rows:
                        samples.append(
                            {
                                "method": method,
                                "branch": s,
                                "lambda": lam,
                                "level": level,
                                "energy": float(rows[0].energy),
                            }
                        )
    return samples


def rwa_spread_past_collapse() -> float:
    p = ModelParams(lam=0.99, **RESONANT)
    spacings = []
    for s in (1, -1):
        w = rwa_energies(p, SectorKey(branch=s, delta=0), FIG_CUTOFF)[:FIG_LEVELS]
        spacings.extend(np.diff(w))
    return float(np.mean(spacings))


def figure_block() -> dict:
    table = figure_sweep()
    return {
        "grid": FIG_GRID,
        "cutoff": FIG_CUTOFF,
        "levels": FIG_LEVELS,
        "mean_err_levels_1_to_4_lam_le_0.3": mean_errors_by_branch(
            table, 0.3, {1, 2, 3, 4}
        ),
        "ground_mean_err_lam_le_0.3": mean_errors_by_branch(table, 0.3, {0}),
        "max_err_sgrwa_lam_le_0.9": max_error_over_grid(table, "sgrwa"),
        "max_err_rwa_lam_le_0.9": max_error_over_grid(table, "rwa"),
        "rwa_mean_spacing_at_0.99": rwa_spread_past_collapse(),
        "curve_samples": curve_samples(table),
    }


def squeezed_frame_block() -> dict:
    """Truncation-limited matched-cutoff error recorded, never asserted small."""
    p = ModelParams(lam=0.8, **RESONANT)
    sector = SectorKey(branch=-1, delta=2)
    exact = exact_sector_spectrum(p, sector, 100, 10)
    matched = sgrwa_energies(p, sector, 100, 100)[:10]
    converged = sgrwa_energies(p, sector, 200, 200)[:10]
    return {
        "matched_cutoff_100_err_lam_0.8_delta_2": float(
            np.max(np.abs(matched - exact))
        ),
        "converged_cutoff_200_err_lam_0.8_delta_2": float(
            np.max(np.abs(converged - exact))
        ),
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    default_out = Path(__file__).resolve().parent.parent / "tests" / "data" / "regression_baselines.json"
    parser.add_argument("--out", type=Path, default=default_out)
    args = parser.parse_args()

    baselines = {
        "collapse": collapse_block(),
        "figure": figure_block(),
        "squeezed_frame": squeezed_frame_block(),
    }
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(baselines, indent=2, sort_keys=True) + "\n")
    print(f"wrote {args.out}")
    print(f"  collapse mean gap at 0.99: {baselines['collapse']['mean_gap']:.6f}")
    fig = baselines["figure"]
    print(f"  figure max err sgrwa/rwa: {fig['max_err_sgrwa_lam_le_0.9']:.4f} / {fig['max_err_rwa_lam_le_0.9']:.4f}")
    print(f"  matched-cutoff truncation error: {baselines['squeezed_frame']['matched_cutoff_100_err_lam_0.8_delta_2']:.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
