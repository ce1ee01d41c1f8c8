"""Squeezed-frame and rotating-wave approximations for sector spectra.

Branch s restricted to a fixed-D sector is treated in two steps. First a
two-mode squeeze S(2 s alpha) with tanh(2 alpha) = lam / w+ absorbs the pair
coupling into a renormalized ladder frequency wtilde = sqrt(w+^2 - lam^2)
plus a constant offset wtilde - w+ + w- D; what remains of the two-level
term is the parity operator dressed by the squeeze itself. Second, the
transformed matrix is truncated to consecutive diagonal blocks (block size 1
gives closed-form energies, block size equal to the cutoff gives back the
exact sector problem). The plain RWA baseline skips the squeeze and blocks
the bare sector matrix in 2x2 steps.

Matrix-element conventions (fixed once against the matrix-exponential
oracle; the checkerboard and transpose identities below pin them uniquely):
with eta = tanh(2 s alpha) = s lam / w+, the tanh of the FULL operator
argument, and kappa = (|D| + 1) / 2,

    S(2 s alpha)[m, n] = (-1)^m  eta^|m-n|  (1 - eta^2)^kappa
                         exp(log_gamma_ratio(lo, hi, 2 kappa))
                         P_lo^{(|D|, |m-n|)}(2 eta^2 - 1),

where lo = min(m, n) and hi = max(m, n). The row-index sign placement makes

    S(-theta) = S(theta)^T        and        S[n, m] = (-1)^{m+n} S[m, n]

exact, so the one formula with signed eta covers both branches. At lam = 0
the matrix is the identity. The collapse line lam = w+ (where wtilde -> 0)
is a typed error, never NaN propagation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import eig_sym_dense, expm_antisymmetric
from .model import ModelParams, SectorKey, build_sector_hamiltonian, sector_parity_sign
from .specialfuncs import jacobi_sequence, log_gamma_ratio

__all__ = [
    "CollapseRegime",
    "SqueezeFrame",
    "SqueezeMatrix",
    "collapse_point",
    "squeeze_frame",
    "squeeze_elements_closed",
    "squeeze_elements_oracle",
    "sgrwa_diag_energy",
    "sgrwa_energies",
    "rwa_energies",
]


class CollapseRegime(Exception):
    """Raised when lam >= w+ and the discrete squeezed frame ceases to exist."""

    def __init__(self, lam: float, lambda_c: float):
        self.lam = lam
        self.lambda_c = lambda_c
        super().__init__(
            f"no squeeze frame at lambda={lam:g}: spectral collapse at lambda_c={lambda_c:g}"
        )


def collapse_point(params: ModelParams) -> float:
    """Coupling at which the squeezed ladder frequency reaches zero (= w+)."""
    return params.omega_plus


@dataclass(frozen=True)
class SqueezeFrame:
    """Derived squeeze quantities for one (params, D) combination.

    alpha solves tanh(2 alpha) = lam / w+; eta stores tanh(alpha) itself.
    offset is the sector constant wtilde - w+ + w- D (signed D), re-added to
    approximate energies so they share an axis with the exact ones.
    """

    delta: int
    alpha: float
    eta: float
    kappa: float
    omega_tilde: float
    offset: float


def squeeze_frame(params: ModelParams, delta: int) -> SqueezeFrame:
    """Build the squeeze frame; raises CollapseRegime when lam >= w+."""
    w_plus = params.omega_plus
    if params.lam >= w_plus:
        raise CollapseRegime(params.lam, w_plus)
    alpha = 0.5 * math.atanh(params.lam / w_plus)
    omega_tilde = math.sqrt((w_plus - params.lam) * (w_plus + params.lam))
    offset = omega_tilde - w_plus + params.omega_minus * delta
    return SqueezeFrame(
        delta=int(delta),
        alpha=alpha,
        eta=math.tanh(alpha),
        kappa=0.5 * (abs(delta) + 1),
        omega_tilde=omega_tilde,
        offset=offset,
    )


@dataclass(frozen=True)
class SqueezeMatrix:
    """Window of squeezing-operator matrix elements in one |D| sector."""

    delta: int
    size: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        a = np.asarray(self.entries, dtype=float)
        object.__setattr__(self, "entries", a)
        if a.shape != (self.size, self.size):
            raise ValueError(f"entries shape {a.shape} does not match size {self.size}")
        if not np.all(np.isfinite(a)):
            raise ValueError("squeeze matrix entries must be finite")


def _check_sector_args(frame: SqueezeFrame, delta: int, sign: int) -> None:
    if abs(delta) != abs(frame.delta):
        raise ValueError(
            f"frame was built for |D|={abs(frame.delta)}, got delta={delta}"
        )
    if sign not in (+1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")


def squeeze_elements_closed(
    frame: SqueezeFrame, delta: int, size: int, sign: int = +1
) -> SqueezeMatrix:
    """Closed-form size x size window of S(2 * sign * alpha) in the |D| sector.

    Evaluated diagonal by diagonal: along |m - n| = d every entry shares the
    Jacobi exponent pair (|D|, d), so one upward recurrence per diagonal
    covers all degrees.
    """
    _check_sector_args(frame, delta, sign)
    if size < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    adelta = abs(delta)
    two_kappa = float(adelta + 1)
    kappa = 0.5 * two_kappa
    eta = sign * math.tanh(2.0 * frame.alpha)
    x = 2.0 * eta * eta - 1.0
    sech_pow = (1.0 - eta * eta) ** kappa

    entries = np.empty((size, size))
    for d in range(size):
        jac = jacobi_sequence(size - 1 - d, adelta, float(d), x)
        eta_pow = eta**d
        for lo in range(size - d):
            hi = lo + d
            amp = eta_pow * sech_pow * math.exp(log_gamma_ratio(lo, hi, two_kappa)) * jac[lo]
            entries[lo, hi] = amp if lo % 2 == 0 else -amp
            entries[hi, lo] = amp if hi % 2 == 0 else -amp
    return SqueezeMatrix(delta=adelta, size=size, entries=entries)


def squeeze_elements_oracle(
    frame: SqueezeFrame, delta: int, size: int, oracle_cutoff: int, sign: int = +1
) -> SqueezeMatrix:
    """Brute-force window of S(2 * sign * alpha): matrix-exponential route.

    Builds the antisymmetric generator of 2 alpha (ab - a+b+) on the sector
    basis truncated at `oracle_cutoff`, exponentiates, and returns the
    top-left window. The cutoff must be generous relative to the window (at
    least 4x; near-collapse frames need more, which cutoff-doubling tests
    quantify) because squeezing spreads each column over ever higher rungs.
    """
    _check_sector_args(frame, delta, sign)
    if size < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    if oracle_cutoff < 4 * size:
        raise ValueError(
            f"oracle_cutoff must be at least 4*size = {4 * size}, got {oracle_cutoff}"
        )
    adelta = abs(delta)
    theta = sign * 2.0 * frame.alpha
    n = np.arange(oracle_cutoff - 1)
    hop = theta * np.sqrt((n + 1.0) * (n + 1.0 + adelta))
    gen = np.zeros((oracle_cutoff, oracle_cutoff))
    gen[n, n + 1] = hop
    gen[n + 1, n] = -hop
    full = expm_antisymmetric(gen)
    return SqueezeMatrix(delta=adelta, size=size, entries=full[:size, :size].copy())


def _sgrwa_matrix(params: ModelParams, sector: SectorKey, cutoff: int) -> tuple[np.ndarray, float]:
    """Squeezed-frame sector matrix (before blocking) and its energy offset."""
    frame = squeeze_frame(params, sector.delta)
    adelta = abs(sector.delta)
    smat = squeeze_elements_closed(frame, sector.delta, cutoff, sign=sector.branch)
    n = np.arange(cutoff)
    # (-1)^n row sign times the sector parity constant, times s J
    row = np.where(n % 2 == 0, 1.0, -1.0) * sector_parity_sign(0, sector.delta)
    matrix = (sector.branch * params.j) * (row[:, None] * smat.entries)
    matrix[n, n] += frame.omega_tilde * (2.0 * n + adelta)
    return matrix, frame.offset


def _block_eigenvalues(matrix: np.ndarray, block_size: int) -> np.ndarray:
    parts = []
    dim = matrix.shape[0]
    for start in range(0, dim, block_size):
        stop = min(start + block_size, dim)
        block = matrix[start:stop, start:stop]
        parts.append(eig_sym_dense(0.5 * (block + block.T)))
    return np.concatenate(parts)


def sgrwa_diag_energy(params: ModelParams, sector: SectorKey, n: int) -> float:
    """Level-n energy of the diagonal (block size 1) squeezed-frame truncation.

    Closed form: wtilde (2n + |D|) + s J c_D sech^{|D|+1}(2 alpha)
    P_n^{(|D|, 0)}(2 tanh^2(2 alpha) - 1) + offset, the (-1)^n of the parity
    row having cancelled against the (-1)^n inside S[n, n].
    """
    if n < 0:
        raise ValueError(f"level index must be >= 0, got {n}")
    matrix, offset = _sgrwa_matrix(params, sector, n + 1)
    return float(matrix[n, n] + offset)


def sgrwa_energies(
    params: ModelParams, sector: SectorKey, cutoff: int, block_size: int
) -> np.ndarray:
    """Squeezed-frame spectrum with consecutive block_size x block_size blocks.

    Each retained block is symmetrized as (B + B^T)/2 before diagonalizing;
    the sector offset is re-added so the values are comparable with exact
    sector energies. block_size = cutoff reproduces the exact (squeezed-basis
    truncated) sector problem.
    """
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    if not 1 <= block_size <= cutoff:
        raise ValueError(
            f"block_size must lie in [1, cutoff={cutoff}], got {block_size}"
        )
    matrix, offset = _sgrwa_matrix(params, sector, cutoff)
    return np.sort(_block_eigenvalues(matrix, block_size) + offset)


def rwa_energies(params: ModelParams, sector: SectorKey, cutoff: int) -> np.ndarray:
    """Spectrum of the bare sector matrix truncated to consecutive 2x2 blocks.

    No squeeze and no offset; pairs (2k, 2k+1) of the tridiagonal sector
    matrix are diagonalized in closed form (plus a final singleton when the
    cutoff is odd). Well defined at any coupling, including past the
    collapse point, which is exactly why it misses the collapse.
    """
    if cutoff < 2:
        raise ValueError(f"cutoff must be >= 2 for 2x2 truncation, got {cutoff}")
    t = build_sector_hamiltonian(params, sector, cutoff)
    eigs = []
    k = 0
    while k + 1 < cutoff:
        block = np.array(
            [[t.diag[k], t.off[k]], [t.off[k], t.diag[k + 1]]]
        )
        eigs.extend(eig_sym_dense(block))
        k += 2
    if k < cutoff:
        eigs.append(t.diag[k])
    return np.sort(np.asarray(eigs))
