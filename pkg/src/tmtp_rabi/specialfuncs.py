"""Special-function kernels for the squeezed-frame matrix elements.

Two ingredients: Jacobi polynomials P_n^{(a,b)}(x) by the three-term
recurrence in the degree, and a half-log gamma ratio

    log_gamma_ratio(n, m, 2k) = (1/2) log( n! Gamma(2k+m) / (m! Gamma(2k+n)) )

evaluated entirely in log space so it stays finite far beyond the range
where the factorials themselves overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["JacobiParams", "jacobi_poly", "jacobi_sequence", "log_gamma_ratio"]


@dataclass(frozen=True)
class JacobiParams:
    """Degree n, exponent pair (a, b), and argument x of P_n^{(a,b)}(x).

    The artifact only ever evaluates inside |x| <= 1 (arguments of the form
    2*eta**2 - 1 with |eta| < 1), so that range is enforced here.
    """

    n: int
    a: float
    b: float
    x: float

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"degree must be a nonnegative integer, got {self.n}")
        if self.a <= -1.0 or self.b <= -1.0:
            raise ValueError(f"exponents must exceed -1, got a={self.a}, b={self.b}")
        if not abs(self.x) <= 1.0:
            raise ValueError(f"argument must lie in [-1, 1], got {self.x}")


def jacobi_sequence(n_max: int, a: float, b: float, x: float) -> list[float]:
    """Return [P_0^{(a,b)}(x), ..., P_{n_max}^{(a,b)}(x)] by upward recurrence.

    Forward recurrence in the degree is stable for a, b > -1 and |x| <= 1.
    Degrees 0 and 1 are exact; higher degrees satisfy

        2k (k+a+b) (2k+a+b-2) P_k
            = (2k+a+b-1) [ (2k+a+b)(2k+a+b-2) x + a^2 - b^2 ] P_{k-1}
              - 2 (k+a-1)(k+b-1)(2k+a+b) P_{k-2}.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    values = [1.0]
    if n_max >= 1:
        values.append((a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0)
    for k in range(2, n_max + 1):
        c = 2.0 * k + a + b
        lead = 2.0 * k * (k + a + b) * (c - 2.0)
        mid = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b)
        back = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c
        values.append((mid * values[k - 1] - back * values[k - 2]) / lead)
    return values


def jacobi_poly(params: JacobiParams) -> float:
    """Evaluate a single Jacobi polynomial P_n^{(a,b)}(x)."""
    return jacobi_sequence(params.n, params.a, params.b, params.x)[params.n]


def log_gamma_ratio(n: int, m: int, two_kappa: float) -> float:
    """Half the log of n! Gamma(2k+m) / (m! Gamma(2k+n)), with 2k = two_kappa.

    The two differences are grouped separately so that n == m yields exactly
    0.0 and neither side is ever a huge intermediate.
    """
    if n < 0 or m < 0:
        raise ValueError(f"indices must be nonnegative, got n={n}, m={m}")
    if not two_kappa > 0.0:
        raise ValueError(f"two_kappa must be positive, got {two_kappa}")
    return 0.5 * (
        (math.lgamma(n + 1.0) - math.lgamma(m + 1.0))
        + (math.lgamma(two_kappa + m) - math.lgamma(two_kappa + n))
    )
