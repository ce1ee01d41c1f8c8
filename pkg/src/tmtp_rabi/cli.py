"""Command-line front end.

Three subcommands:

* ``spectrum``  one parameter point -> CSV (stdout or --out)
* ``figure``    fig1 / fig2 sweeps -> SVG panels plus backing CSVs
* ``verify``    run the named check suite at fast or full level

Exit codes: 0 success, 2 validation problem (bad flag, bad config key),
3 collapse regime (a squeeze method was asked for at lam >= w+),
4 internal numeric failure or failed verification checks.
"""

from __future__ import annotations

import argparse
import configparser
import sys
import time
from pathlib import Path

from .approximants import CollapseRegime, rwa_energies, sgrwa_energies
from .linalg import NumericFailure
from .model import ModelParams, SectorKey
from .plotting import StyleMap, fig1_specs, fig2_specs, render_figure
from .spectra import (
    SpectrumRecord,
    SpectrumTable,
    exact_full_spectrum,
    exact_sector_spectrum,
)
from .verify import format_report, run_checks

__all__ = ["main"]

_SPECTRUM_METHODS = ("exact-sector", "exact-full", "rwa", "sgrwa", "all")
_FULL_N_MAX = 30  # per-mode cutoff for the exact-full cross-check route


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tmtp-rabi",
        description="Spectra of the two-mode two-photon Rabi model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="energies at one parameter point, as CSV")
    sp.add_argument("--omega1", type=float, default=1.0, help="mode-a frequency")
    sp.add_argument("--omega2", type=float, default=1.0, help="mode-b frequency")
    sp.add_argument("--j", type=float, default=1.0, help="half the two-level splitting")
    sp.add_argument("--lambda", dest="lam", type=float, default=0.0, help="coupling strength")
    sp.add_argument("--delta", type=int, default=0, help="photon-number difference")
    sp.add_argument("--branch", choices=("+", "-", "both"), default="both")
    sp.add_argument("--method", choices=_SPECTRUM_METHODS, default="exact-sector")
    sp.add_argument("--cutoff", type=int, default=100, help="sector Fock window")
    sp.add_argument("--block-size", type=int, default=2, help="sgrwa block size")
    sp.add_argument("--levels", type=int, default=10, help="levels per curve")
    sp.add_argument("--out", type=Path, default=None, help="CSV path (default stdout)")
    sp.set_defaults(fn=cmd_spectrum)

    fig = sub.add_parser("figure", help="render a figure family (SVG + CSV)")
    fig.add_argument("figure", choices=("fig1", "fig2"))
    fig.add_argument("--config", type=Path, default=None, help="INI config file")
    fig.add_argument("--outdir", type=Path, default=None, help="output directory")
    fig.add_argument("--jobs", type=int, default=1, help="sweep worker threads")
    fig.set_defaults(fn=cmd_figure)

    ver = sub.add_parser("verify", help="run the verification checks")
    ver.add_argument("--level", choices=("fast", "full"), default="fast")
    ver.set_defaults(fn=cmd_verify)
    return parser


def cmd_spectrum(args: argparse.Namespace) -> int:
    params = ModelParams(omega1=args.omega1, omega2=args.omega2, j=args.j, lam=args.lam)
    if args.levels < 1:
        raise ValueError(f"--levels must be >= 1, got {args.levels}")
    branches = {"+": (+1,), "-": (-1,), "both": (+1, -1)}[args.branch]
    methods = _SPECTRUM_METHODS[:-1] if args.method == "all" else (args.method,)

    records: list[SpectrumRecord] = []
    for method in methods:
        if method == "exact-full":
            energies = exact_full_spectrum(params, _FULL_N_MAX, args.levels)
            records.extend(
                SpectrumRecord(method, None, None, 0, params.lam, lvl, float(e))
                for lvl, e in enumerate(energies)
            )
            continue
        for branch in branches:
            sector = SectorKey(branch, args.delta)
            if method == "exact-sector":
                energies = exact_sector_spectrum(params, sector, args.cutoff, args.levels)
                block = 0
            elif method == "rwa":
                energies = rwa_energies(params, sector, args.cutoff)[: args.levels]
                block = 0
            else:
                energies = sgrwa_energies(params, sector, args.cutoff, args.block_size)
                energies = energies[: args.levels]
                block = args.block_size
            records.extend(
                SpectrumRecord(method, branch, args.delta, block, params.lam, lvl, float(e))
                for lvl, e in enumerate(energies)
            )

    table = SpectrumTable(records=tuple(records))
    if args.out is None:
        sys.stdout.write(table.to_csv())
    else:
        table.write_csv(args.out)
        print(f"wrote {args.out}", file=sys.stderr)
    return 0


_CONFIG_SCHEMA = {
    "model": {"omega1": float, "omega2": float, "j": float, "js": str},
    "sweep": {
        "lambda_start": float,
        "lambda_stop": float,
        "lambda_count": int,
        "cutoff": int,
        "block_size": int,
        "levels": int,
        "deltas": str,
    },
    "style": {
        "exact_color": str,
        "exact_linestyle": str,
        "rwa_color": str,
        "rwa_linestyle": str,
        "sgrwa_color": str,
        "sgrwa_linestyle": str,
        "sgrwa_alt_color": str,
    },
    "output": {"outdir": str},
}


def _load_config(path: Path) -> dict[str, dict]:
    """Parse and validate the sectioned key=value figure config."""
    cp = configparser.ConfigParser()
    if not cp.read(path):
        raise ValueError(f"cannot read config file {path}")
    values: dict[str, dict] = {}
    for section in cp.sections():
        if section not in _CONFIG_SCHEMA:
            raise ValueError(
                f"unknown config section [{section}]; valid: {sorted(_CONFIG_SCHEMA)}"
            )
        schema = _CONFIG_SCHEMA[section]
        values[section] = {}
        for key, raw in cp.items(section):
            if key not in schema:
                raise ValueError(
                    f"unknown key {key!r} in [{section}]; valid: {sorted(schema)}"
                )
            try:
                values[section][key] = schema[key](raw)
            except ValueError as exc:
                raise ValueError(f"bad value for {key!r} in [{section}]: {raw!r}") from exc
    return values


def _parse_number_list(raw: str, kind, what: str):
    try:
        return tuple(kind(tok.strip()) for tok in raw.split(",") if tok.strip())
    except ValueError as exc:
        raise ValueError(f"bad {what} list: {raw!r}") from exc


def cmd_figure(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config) if args.config else {}
    model = cfg.get("model", {})
    sweep = cfg.get("sweep", {})
    style = StyleMap(**cfg.get("style", {}))
    outdir = args.outdir or Path(cfg.get("output", {}).get("outdir", "figures"))

    common = {
        key: sweep[key]
        for key in ("lambda_start", "lambda_stop", "lambda_count", "cutoff", "block_size", "levels")
        if key in sweep
    }
    if args.figure == "fig1":
        if "js" in model or "deltas" in sweep:
            raise ValueError("'js' and 'deltas' apply to fig2 only")
        params = ModelParams(
            omega1=model.get("omega1", 1.0),
            omega2=model.get("omega2", 1.0),
            j=model.get("j", 1.0),
        )
        specs = fig1_specs(params=params, **common)
    else:
        if "j" in model:
            raise ValueError("fig2 takes a 'js' list, not a single 'j'")
        kwargs = dict(common)
        if "js" in model:
            kwargs["js"] = _parse_number_list(model["js"], float, "js")
        if "deltas" in sweep:
            kwargs["deltas"] = _parse_number_list(sweep["deltas"], int, "deltas")
        specs = fig2_specs(
            omega1=model.get("omega1", 1.0), omega2=model.get("omega2", 1.0), **kwargs
        )

    for spec in specs:
        svg, csv = render_figure(spec, outdir, styles=style, jobs=args.jobs)
        print(f"wrote {svg} and {csv}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    start = time.monotonic()
    results = run_checks(level=args.level)
    elapsed = time.monotonic() - start
    print(format_report(results))
    print(f"elapsed: {elapsed:.1f} s")
    return 0 if all(r.passed for r in results) else 4


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse has already printed the diagnostic
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.fn(args)
    except CollapseRegime as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NumericFailure as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
