"""Exact reference spectra, the coupling-sweep engine, and method comparison.

Spectra come in four flavors, tagged by method name in every record:

* ``exact-full``    dense diagonalization of the full truncated Hamiltonian
                    (both spin blocks, no symmetry reduction); cross-check.
* ``exact-sector``  tridiagonal diagonalization of one (branch, D) sector;
                    the production route, matching the symmetry analysis.
* ``rwa``           2x2 block truncation of the bare sector matrix.
* ``sgrwa``         block truncation in the squeezed frame, any block size.

Truncation policy: hard Fock cutoffs everywhere, and only eigenvalues in the
lowest third of a window are treated as converged, which the spectrum
accessors enforce. Sweeps are deterministic: records are assembled, then
sorted canonically (method, block size, branch, D, lambda, level), so the
CSV bytes do not depend on evaluation order or thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .approximants import CollapseRegime, rwa_energies, sgrwa_energies
from .linalg import eig_sym_dense, eig_sym_tridiag
from .model import ModelParams, SectorKey, build_full_hamiltonian, build_sector_hamiltonian

__all__ = [
    "METHODS",
    "SpectrumRecord",
    "SpectrumTable",
    "SweepConfig",
    "AccuracyRow",
    "AccuracyReport",
    "exact_sector_spectrum",
    "exact_full_spectrum",
    "sector_union_spectrum",
    "lambda_sweep",
    "accuracy_report",
]

METHODS = ("exact-full", "exact-sector", "rwa", "sgrwa")

CSV_HEADER = "method,branch,delta,block_size,lambda,level,energy"


def _fmt(x: float) -> str:
    """Deterministic float serialization: 12 significant digits, trimmed."""
    return format(float(x) + 0.0, ".12g")


@dataclass(frozen=True)
class SpectrumRecord:
    """One (method, sector, coupling, level) -> energy data point.

    branch and delta are None for sector-less methods (exact-full);
    block_size is 0 for everything except sgrwa.
    """

    method: str
    branch: int | None
    delta: int | None
    block_size: int
    lam: float
    level: int
    energy: float

    def sort_key(self):
        branch_key = (0, 0) if self.branch is None else (1, self.branch)
        delta_key = (0, 0) if self.delta is None else (1, self.delta)
        return (self.method, self.block_size, branch_key, delta_key, self.lam, self.level)

    def csv_row(self) -> str:
        branch = "" if self.branch is None else ("+" if self.branch > 0 else "-")
        delta = "" if self.delta is None else str(int(self.delta))
        return ",".join(
            [self.method, branch, delta, str(self.block_size), _fmt(self.lam), str(self.level), _fmt(self.energy)]
        )


@dataclass(frozen=True)
class SpectrumTable:
    """Canonically ordered records plus any sweep warnings (not serialized)."""

    records: tuple[SpectrumRecord, ...]
    warnings: tuple[str, ...] = ()

    def select(self, **criteria) -> list[SpectrumRecord]:
        """Records matching all given field values (field=None matches None)."""
        out = []
        for rec in self.records:
            if all(getattr(rec, name) == value for name, value in criteria.items()):
                out.append(rec)
        return out

    def to_csv(self) -> str:
        rows = sorted(self.records, key=SpectrumRecord.sort_key)
        return "\n".join([CSV_HEADER, *(r.csv_row() for r in rows)]) + "\n"

    def write_csv(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_csv().encode("ascii"))


@dataclass(frozen=True)
class SweepConfig:
    """Grid x sectors x methods description of one sweep.

    params.lam is a placeholder: the sweep overrides it at every grid point.
    cutoff applies to sector methods; full_n_max to exact-full (kept smaller,
    since the full space grows quadratically with the per-mode cutoff).
    """

    params: ModelParams
    lambda_start: float
    lambda_stop: float
    lambda_count: int
    sectors: tuple[SectorKey, ...]
    methods: tuple[str, ...]
    cutoff: int = 100
    block_size: int = 2
    report_levels: int = 10
    full_n_max: int = 30

    def __post_init__(self) -> None:
        if self.lambda_count < 1:
            raise ValueError(f"lambda_count must be >= 1, got {self.lambda_count}")
        if self.lambda_start < 0.0 or self.lambda_stop < self.lambda_start:
            raise ValueError(
                f"need 0 <= lambda_start <= lambda_stop, got "
                f"[{self.lambda_start}, {self.lambda_stop}]"
            )
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise ValueError(f"unknown methods {unknown}; valid: {list(METHODS)}")
        if self.report_levels < 1:
            raise ValueError(f"report_levels must be >= 1, got {self.report_levels}")

    def grid(self) -> np.ndarray:
        if self.lambda_count == 1:
            return np.array([self.lambda_start])
        return np.linspace(self.lambda_start, self.lambda_stop, self.lambda_count)


def exact_sector_spectrum(
    params: ModelParams, sector: SectorKey, cutoff: int, k: int
) -> np.ndarray:
    """Lowest k exact energies of one sector at the given Fock cutoff.

    Rejects k above cutoff/3: higher levels in the window are truncation
    artifacts, not converged eigenvalues.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if 3 * k > cutoff:
        raise ValueError(
            f"k={k} exceeds the trusted third of the window (cutoff={cutoff}); "
            "raise the cutoff"
        )
    t = build_sector_hamiltonian(params, sector, cutoff)
    return eig_sym_tridiag(t)[:k]


def exact_full_spectrum(params: ModelParams, n_max: int, k: int) -> np.ndarray:
    """Lowest k energies of the full truncated Hamiltonian (dense route)."""
    dim = 2 * (n_max + 1) ** 2
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if 3 * k > dim:
        raise ValueError(f"k={k} exceeds the trusted third of dimension {dim}")
    h = build_full_hamiltonian(params, n_max)
    return eig_sym_dense(h.entries.toarray())[:k]


def sector_union_spectrum(params: ModelParams, n_max: int, k: int) -> np.ndarray:
    """Lowest k energies of the union of all sectors at matched truncation.

    Each signed D sector keeps n_max + 1 - |D| pair states, which makes the
    union an exact direct-sum decomposition of the n_max full space: both
    routes see the same finite matrix, so they agree to solver accuracy, not
    merely to truncation accuracy.
    """
    dim = 2 * (n_max + 1) ** 2
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if 3 * k > dim:
        raise ValueError(f"k={k} exceeds the trusted third of dimension {dim}")
    energies = []
    for delta in range(-n_max, n_max + 1):
        cutoff = n_max + 1 - abs(delta)
        for branch in (+1, -1):
            t = build_sector_hamiltonian(params, SectorKey(branch, delta), cutoff)
            energies.append(eig_sym_tridiag(t))
    return np.sort(np.concatenate(energies))[:k]


def _sweep_point(
    cfg: SweepConfig, method: str, sector: SectorKey | None, lam: float
) -> tuple[list[SpectrumRecord], str | None]:
    """Records for one (method, sector, lambda) cell, or a clip marker."""
    point = replace(cfg.params, lam=float(lam))
    k = cfg.report_levels
    if method == "exact-full":
        energies = exact_full_spectrum(point, cfg.full_n_max, k)
        branch = delta = None
        block = 0
    elif method == "exact-sector":
        energies = exact_sector_spectrum(point, sector, cfg.cutoff, k)
        branch, delta, block = sector.branch, sector.delta, 0
    elif method == "rwa":
        energies = rwa_energies(point, sector, cfg.cutoff)[:k]
        branch, delta, block = sector.branch, sector.delta, 0
    elif method == "sgrwa":
        try:
            energies = sgrwa_energies(point, sector, cfg.cutoff, cfg.block_size)[:k]
        except CollapseRegime as exc:
            marker = (
                f"sgrwa branch={sector.branch:+d} delta={sector.delta}: grid point "
                f"lambda={_fmt(lam)} clipped (lambda_c={exc.lambda_c:g})"
            )
            return [], marker
        branch, delta, block = sector.branch, sector.delta, cfg.block_size
    else:  # pragma: no cover - SweepConfig already validated
        raise ValueError(f"unknown method {method!r}")
    records = [
        SpectrumRecord(method, branch, delta, block, float(lam), level, float(e))
        for level, e in enumerate(energies)
    ]
    return records, None


def lambda_sweep(cfg: SweepConfig, jobs: int = 1) -> SpectrumTable:
    """Evaluate the whole grid x methods x sectors product.

    Squeeze-frame grid points at or past the collapse coupling are dropped
    and reported in table.warnings instead of raising. With jobs > 1 the
    cells are evaluated in a thread pool; output is identical either way
    because assembly sorts canonically.
    """
    cells: list[tuple[str, SectorKey | None]] = []
    for method in cfg.methods:
        if method == "exact-full":
            cells.append((method, None))
        else:
            cells.extend((method, sector) for sector in cfg.sectors)
    tasks = [(method, sector, lam) for lam in cfg.grid() for method, sector in cells]

    def run(task):
        method, sector, lam = task
        return _sweep_point(cfg, method, sector, lam)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, tasks))
    else:
        results = [run(t) for t in tasks]

    records: list[SpectrumRecord] = []
    markers: list[str] = []
    for recs, marker in results:
        records.extend(recs)
        if marker is not None:
            markers.append(marker)
    records.sort(key=SpectrumRecord.sort_key)
    return SpectrumTable(records=tuple(records), warnings=tuple(sorted(markers)))


@dataclass(frozen=True)
class AccuracyRow:
    """Error summary of one (method, sector, level) curve against the reference."""

    method: str
    block_size: int
    branch: int | None
    delta: int | None
    level: int
    max_abs_err: float
    mean_abs_err: float
    n_points: int


@dataclass(frozen=True)
class AccuracyReport:
    reference: str
    rows: tuple[AccuracyRow, ...]
    notes: tuple[str, ...] = field(default=())


def accuracy_report(table: SpectrumTable, reference: str = "exact-sector") -> AccuracyReport:
    """Per (method, sector, level) max and mean |E - E_ref| over the grid.

    Every compared point must have a reference partner at the same
    (branch, delta, lambda, level); holes raise. Level-0 rows where the bare
    RWA beats the squeezed-frame method are flagged in notes (that inversion
    is expected and is reported, not treated as an error).
    """
    ref_vals: dict[tuple, float] = {}
    for rec in table.records:
        if rec.method == reference:
            ref_vals[(rec.branch, rec.delta, rec.lam, rec.level)] = rec.energy
    if not ref_vals:
        raise ValueError(f"reference method {reference!r} has no rows in the table")

    groups: dict[tuple, list[float]] = {}
    for rec in table.records:
        if rec.method == reference:
            continue
        ref_key = (rec.branch, rec.delta, rec.lam, rec.level)
        if ref_key not in ref_vals:
            raise ValueError(
                f"no {reference!r} row for branch={rec.branch} delta={rec.delta} "
                f"lambda={rec.lam} level={rec.level}"
            )
        group_key = (rec.method, rec.block_size, rec.branch, rec.delta, rec.level)
        groups.setdefault(group_key, []).append(abs(rec.energy - ref_vals[ref_key]))

    rows = []
    for (method, block, branch, delta, level), errs in groups.items():
        arr = np.asarray(errs)
        rows.append(
            AccuracyRow(
                method=method,
                block_size=block,
                branch=branch,
                delta=delta,
                level=level,
                max_abs_err=float(arr.max()),
                mean_abs_err=float(arr.mean()),
                n_points=arr.size,
            )
        )
    rows.sort(key=lambda r: (r.method, r.block_size, r.branch or 0, r.delta or 0, r.level))

    by_key = {
        (r.method, r.branch, r.delta, r.level): r.mean_abs_err for r in rows
    }
    notes = []
    for r in rows:
        if r.method != "rwa" or r.level != 0:
            continue
        sgrwa_mean = by_key.get(("sgrwa", r.branch, r.delta, 0))
        if sgrwa_mean is not None and r.mean_abs_err < sgrwa_mean:
            branch = "" if r.branch is None else f"{r.branch:+d}"
            notes.append(
                f"ground level, branch {branch}, delta {r.delta}: plain rwa mean error "
                f"{r.mean_abs_err:.3e} < sgrwa {sgrwa_mean:.3e} (known inversion)"
            )
    return AccuracyReport(reference=reference, rows=tuple(rows), notes=tuple(sorted(notes)))
