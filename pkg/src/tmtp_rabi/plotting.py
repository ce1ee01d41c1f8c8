"""Deterministic SVG figure emission for sweep tables.

Figure one: the resonant D = 0 spectrum versus coupling, exact against the
two approximations (exact solid black, plain 2x2 truncation dotted green,
squeezed-frame 2x2 truncation dashed blue). Figure two: one panel per
(D, J) combination showing exact and squeezed-frame levels for both spin
branches, with line style keyed to the sign s * c_D multiplying J on the
n = 0 diagonal (solid for +, dashed for -).

Every SVG is written alongside a CSV holding exactly the plotted records.
Output bytes are deterministic: fixed hash salt for element ids, no date
metadata, and canonically ordered tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg", force=True)

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

from .model import ModelParams, SectorKey, sector_parity_sign
from .spectra import SpectrumRecord, SpectrumTable, SweepConfig, lambda_sweep

__all__ = ["FigureSpec", "StyleMap", "fig1_specs", "fig2_specs", "render_figure"]

_RC = {
    "svg.hashsalt": "tmtp-rabi",
    "figure.figsize": (6.0, 4.5),
    "axes.grid": True,
    "grid.alpha": 0.25,
    "font.size": 9,
}


@dataclass(frozen=True)
class StyleMap:
    """Per-method line styling; branch differentiation is handled per figure."""

    exact_color: str = "black"
    exact_linestyle: str = "solid"
    rwa_color: str = "green"
    rwa_linestyle: str = "dotted"
    sgrwa_color: str = "tab:blue"
    sgrwa_linestyle: str = "dashed"
    sgrwa_alt_color: str = "tab:red"


@dataclass(frozen=True)
class FigureSpec:
    name: str
    title: str
    config: SweepConfig
    branch_styling: bool  # True: linestyle keyed to s * c_D (figure-two panels)


def fig1_specs(
    params: ModelParams | None = None,
    lambda_start: float = 0.0,
    lambda_stop: float = 0.99,
    lambda_count: int = 100,
    cutoff: int = 100,
    block_size: int = 2,
    levels: int = 8,
) -> list[FigureSpec]:
    params = params or ModelParams()
    cfg = SweepConfig(
        params=params,
        lambda_start=lambda_start,
        lambda_stop=lambda_stop,
        lambda_count=lambda_count,
        sectors=(SectorKey(+1, 0), SectorKey(-1, 0)),
        methods=("exact-sector", "rwa", "sgrwa"),
        cutoff=cutoff,
        block_size=block_size,
        report_levels=levels,
    )
    title = f"D=0 spectrum, J={params.j:g}, w1=w2={params.omega1:g}"
    return [FigureSpec(name="fig1", title=title, config=cfg, branch_styling=False)]


def fig2_specs(
    js: tuple[float, ...] = (1.0, 0.5),
    deltas: tuple[int, ...] = (0, 1, 2),
    omega1: float = 1.0,
    omega2: float = 1.0,
    lambda_start: float = 0.0,
    lambda_stop: float = 0.99,
    lambda_count: int = 100,
    cutoff: int = 100,
    block_size: int = 2,
    levels: int = 6,
) -> list[FigureSpec]:
    specs = []
    for j in js:
        for delta in deltas:
            cfg = SweepConfig(
                params=ModelParams(omega1=omega1, omega2=omega2, j=j),
                lambda_start=lambda_start,
                lambda_stop=lambda_stop,
                lambda_count=lambda_count,
                sectors=(SectorKey(+1, delta), SectorKey(-1, delta)),
                methods=("exact-sector", "sgrwa"),
                cutoff=cutoff,
                block_size=block_size,
                report_levels=levels,
            )
            specs.append(
                FigureSpec(
                    name=f"fig2_j{j:g}_delta{delta}",
                    title=f"D={delta} spectrum, J={j:g}, w1={omega1:g}, w2={omega2:g}",
                    config=cfg,
                    branch_styling=True,
                )
            )
    return specs


def _curve_style(spec: FigureSpec, styles: StyleMap, rec: SpectrumRecord) -> dict:
    method = "exact" if rec.method.startswith("exact") else rec.method
    color = getattr(styles, f"{method}_color")
    linestyle = getattr(styles, f"{method}_linestyle")
    if spec.branch_styling and rec.branch is not None:
        # key the style to the sign multiplying J on the n = 0 diagonal
        parity = rec.branch * sector_parity_sign(0, rec.delta or 0)
        linestyle = "solid" if parity > 0 else "dashed"
        if method == "sgrwa":
            color = styles.sgrwa_color if parity > 0 else styles.sgrwa_alt_color
    return {"color": color, "linestyle": linestyle, "linewidth": 1.0}


def render_figure(
    spec: FigureSpec,
    outdir: str | Path,
    styles: StyleMap | None = None,
    jobs: int = 1,
) -> tuple[Path, Path]:
    """Sweep, plot, and write <name>.svg plus the backing <name>.csv."""
    styles = styles or StyleMap()
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    table = lambda_sweep(spec.config, jobs=jobs)

    svg_path = outdir / f"{spec.name}.svg"
    csv_path = outdir / f"{spec.name}.csv"
    table.write_csv(csv_path)

    curves: dict[tuple, list[SpectrumRecord]] = {}
    for rec in table.records:
        key = (rec.method, rec.block_size, rec.branch, rec.delta, rec.level)
        curves.setdefault(key, []).append(rec)

    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        seen_labels = set()
        for key in sorted(curves, key=lambda k: (k[0], k[1], k[2] or 0, k[3] or 0, k[4])):
            recs = sorted(curves[key], key=lambda r: r.lam)
            style = _curve_style(spec, styles, recs[0])
            label = recs[0].method
            if label in seen_labels:
                label = None
            else:
                seen_labels.add(recs[0].method)
            ax.plot([r.lam for r in recs], [r.energy for r in recs], label=label, **style)
        ax.set_xlabel("coupling lambda")
        ax.set_ylabel("energy")
        ax.set_title(spec.title)
        ax.legend(loc="upper left", fontsize=8)
        fig.savefig(svg_path, format="svg", metadata={"Date": None})
        plt.close(fig)
    return svg_path, csv_path
