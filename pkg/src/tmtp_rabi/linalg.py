"""Symmetric eigensolvers and the antisymmetric-generator matrix exponential.

Model-agnostic numerical plumbing. Two genuinely independent tridiagonal
routes are kept on purpose: `eig_sym_tridiag` goes through LAPACK's
implicit-shift solver, while `eig_sym_tridiag_bisect` is a self-contained
Sturm-sequence bisection used to cross-check it in the verification suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

__all__ = [
    "NumericFailure",
    "TridiagMatrix",
    "DenseSym",
    "eig_sym_tridiag",
    "eig_sym_tridiag_bisect",
    "sturm_count",
    "eig_sym_dense",
    "expm_antisymmetric",
]


class NumericFailure(RuntimeError):
    """An eigensolver or matrix-function kernel failed to converge or verify."""


@dataclass(frozen=True)
class TridiagMatrix:
    """Real symmetric tridiagonal matrix as (diagonal, off-diagonal) arrays."""

    diag: np.ndarray
    off: np.ndarray

    def __post_init__(self) -> None:
        diag = np.atleast_1d(np.asarray(self.diag, dtype=float))
        off = np.atleast_1d(np.asarray(self.off, dtype=float)) if np.size(self.off) else np.empty(0)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "off", off)
        if diag.ndim != 1 or off.ndim != 1:
            raise ValueError("diag and off must be one-dimensional arrays")
        if diag.size == 0:
            raise ValueError("matrix must be at least 1x1")
        if off.size != diag.size - 1:
            raise ValueError(
                f"off-diagonal length {off.size} does not fit diagonal length {diag.size}"
            )
        if not np.all(np.isfinite(diag)) or not np.all(np.isfinite(off)):
            raise ValueError("matrix entries must be finite")

    @property
    def size(self) -> int:
        return int(self.diag.size)

    def dense(self) -> np.ndarray:
        m = np.diag(self.diag)
        if self.off.size:
            idx = np.arange(self.off.size)
            m[idx, idx + 1] = self.off
            m[idx + 1, idx] = self.off
        return m

    def one_norm(self) -> float:
        return float(np.max(np.abs(self.dense()).sum(axis=0)))


@dataclass(frozen=True)
class DenseSym:
    """Dense real symmetric matrix; construct via `from_lower` to guarantee symmetry."""

    n: int
    entries: np.ndarray

    @classmethod
    def from_lower(cls, lower: np.ndarray) -> "DenseSym":
        """Build from the lower triangle (diagonal included); the upper is mirrored."""
        a = np.asarray(lower, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        tri = np.tril(a)
        full = tri + np.tril(a, -1).T
        return cls(n=a.shape[0], entries=full)

    def __post_init__(self) -> None:
        a = np.asarray(self.entries, dtype=float)
        object.__setattr__(self, "entries", a)
        if a.shape != (self.n, self.n):
            raise ValueError(f"entries shape {a.shape} does not match n={self.n}")
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        if np.max(np.abs(a - a.T), initial=0.0) != 0.0:
            raise ValueError("entries are not exactly symmetric; use from_lower")


def eig_sym_tridiag(t: TridiagMatrix) -> np.ndarray:
    """All eigenvalues of a symmetric tridiagonal matrix, ascending.

    Backed by LAPACK's implicit-shift tridiagonal solver; a non-converged
    factorization surfaces as NumericFailure rather than a silent result.
    """
    if t.size == 1:
        return t.diag.copy()
    try:
        w = scipy.linalg.eigh_tridiagonal(t.diag, t.off, eigvals_only=True)
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(f"tridiagonal eigensolver failed to converge: {exc}") from exc
    return np.sort(w)


def sturm_count(t: TridiagMatrix, x: float) -> int:
    """Number of eigenvalues of `t` strictly below `x`, by Sturm sequence.

    Counts sign changes of the shifted LDL^T pivots; pivots too close to zero
    are nudged to -pivmin so the count stays well defined when `x` lands on
    (a numerical copy of) an eigenvalue.
    """
    d, e = t.diag, t.off
    pivmin = np.finfo(float).tiny
    if e.size:
        pivmin = max(pivmin, float(np.max(e * e)) * np.finfo(float).tiny)
    count = 0
    q = 1.0
    for k in range(t.size):
        e2 = e[k - 1] * e[k - 1] if k > 0 else 0.0
        q = (d[k] - x) - e2 / q
        if abs(q) <= pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


def eig_sym_tridiag_bisect(t: TridiagMatrix, tol: float = 1e-13) -> np.ndarray:
    """All eigenvalues by bisection on Sturm counts. Independent of LAPACK.

    Slower than `eig_sym_tridiag` but self-contained; serves as the
    cross-check route. `tol` is relative to the local eigenvalue scale.
    """
    n = t.size
    radius = np.zeros(n)
    if n > 1:
        radius[:-1] += np.abs(t.off)
        radius[1:] += np.abs(t.off)
    lo = float(np.min(t.diag - radius))
    hi = float(np.max(t.diag + radius))
    pad = 1e-8 * max(1.0, abs(lo), abs(hi))
    lo -= pad
    hi += pad

    eigs = np.empty(n)
    for j in range(n):
        a, b = lo, hi
        while b - a > tol * max(1.0, abs(a), abs(b)):
            mid = 0.5 * (a + b)
            if sturm_count(t, mid) <= j:
                a = mid
            else:
                b = mid
        eigs[j] = 0.5 * (a + b)
    return eigs


def _eig_sym_2x2(m: np.ndarray) -> np.ndarray:
    # closed-form quadratic, written to avoid cancellation in the discriminant
    a, b, c = m[0, 0], m[1, 1], m[0, 1]
    half_trace = 0.5 * (a + b)
    r = np.hypot(0.5 * (a - b), c)
    return np.array([half_trace - r, half_trace + r])


def eig_sym_dense(m: DenseSym | np.ndarray) -> np.ndarray:
    """All eigenvalues of a dense real symmetric matrix, ascending.

    Dimension 1 and 2 use closed forms; larger matrices go through the
    Householder-plus-tridiagonal route of LAPACK (`numpy.linalg.eigvalsh`).
    """
    a = m.entries if isinstance(m, DenseSym) else np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0]])
    if n == 2:
        return _eig_sym_2x2(a)
    try:
        return np.sort(np.linalg.eigvalsh(a))
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(f"dense symmetric eigensolver failed: {exc}") from exc


def expm_antisymmetric(g: np.ndarray, *, atol: float = 1e-14) -> np.ndarray:
    """exp(g) for real antisymmetric g; the result is orthogonal.

    i*g is Hermitian, so exp(g) = V exp(-i w) V^dagger with (w, V) its
    eigensystem; the real part is taken once the imaginary remainder is
    verified negligible. The orthogonality of the result is checked to
    1e-10 in max entry of R^T R - I and failure raises NumericFailure.
    """
    a = np.asarray(g, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a), initial=0.0)))
    skew = float(np.max(np.abs(a + a.T), initial=0.0))
    if skew > atol * scale:
        raise ValueError(f"matrix is not antisymmetric: max |g + g^T| = {skew:.3e}")

    herm = 1j * a
    try:
        w, v = np.linalg.eigh(herm)
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(f"eigendecomposition for expm failed: {exc}") from exc
    r_complex = (v * np.exp(-1j * w)) @ v.conj().T
    r = r_complex.real

    residual = float(np.max(np.abs(r.T @ r - np.eye(a.shape[0]))))
    if residual > 1e-10:
        raise NumericFailure(
            f"expm result failed the orthogonality check: max |R^T R - I| = {residual:.3e}"
        )
    return r
