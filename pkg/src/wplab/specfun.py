"""Polynomial recurrences and exact combinatorial factors.

The closed-form moment expressions downstream are alternating sums whose
terms are rationals (times a single irrational prefactor).  To keep those
sums from inheriting rounding noise, every combinatorial factor here is
computed in exact integer arithmetic; the public functions convert to float
at the very end, and the ``*_exact`` variants hand back the unrounded value
for callers that combine terms symbolically.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "hermite",
    "hermite_sq_zero",
    "laguerre",
    "chebyshev_t",
    "cheb_series_coef",
    "cheb_series_coef_exact",
    "odd_double_factorial",
    "odd_double_factorial_exact",
    "binomial",
    "binomial_exact",
]


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x) via the three-term recurrence.

    H_{j+1} = 2x H_j - 2j H_{j-1}.  Works elementwise on ndarray input.
    """
    if n < 0:
        raise ValueError("hermite: order must be >= 0")
    h_prev = 1.0 + 0.0 * x
    if n == 0:
        return h_prev
    h = 2.0 * x
    for j in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * j * h_prev
    return h


def hermite_sq_zero(n: int) -> float:
    """H_n(0)^2, exact: zero for odd n, ((2l)!/l!)^2 for n = 2l."""
    if n < 0:
        raise ValueError("hermite_sq_zero: order must be >= 0")
    if n % 2 == 1:
        return 0.0
    half = n // 2
    root = math.factorial(n) // math.factorial(half)
    return float(root * root)


def laguerre(n: int, alpha: int, x):
    """Generalized Laguerre polynomial L_n^(alpha)(x), alpha a non-negative int.

    Recurrence (j+1) L_{j+1} = (2j+1+alpha-x) L_j - (j+alpha) L_{j-1}.
    Works elementwise on ndarray input.
    """
    if n < 0:
        raise ValueError("laguerre: degree must be >= 0")
    if alpha < 0:
        raise ValueError("laguerre: alpha must be >= 0")
    l_prev = 1.0 + 0.0 * x
    if n == 0:
        return l_prev
    l_cur = 1.0 + alpha - x
    for j in range(1, n):
        l_prev, l_cur = l_cur, ((2.0 * j + 1.0 + alpha - x) * l_cur - (j + alpha) * l_prev) / (j + 1.0)
    return l_cur


def laguerre_sweep(nmax: int, alpha: int, x):
    """All of L_0^(alpha)(x) .. L_nmax^(alpha)(x) in one recurrence pass.

    Returns a list of arrays (or floats) indexed by degree.  Shared by the
    grid evaluator, which needs every degree at a fixed alpha anyway.
    """
    if nmax < 0:
        raise ValueError("laguerre_sweep: nmax must be >= 0")
    if alpha < 0:
        raise ValueError("laguerre_sweep: alpha must be >= 0")
    out = [1.0 + 0.0 * x]
    if nmax == 0:
        return out
    out.append(1.0 + alpha - x)
    for j in range(1, nmax):
        out.append(((2.0 * j + 1.0 + alpha - x) * out[j] - (j + alpha) * out[j - 1]) / (j + 1.0))
    return out


def chebyshev_t(n: int, x):
    """Chebyshev polynomial of the first kind T_n(x) by recurrence."""
    if n < 0:
        raise ValueError("chebyshev_t: order must be >= 0")
    t_prev = 1.0 + 0.0 * x
    if n == 0:
        return t_prev
    t_cur = 1.0 * x
    for _ in range(1, n):
        t_prev, t_cur = t_cur, 2.0 * x * t_cur - t_prev
    return t_cur


def cheb_series_coef_exact(m: int, s: int) -> Fraction:
    """Coefficient (m-s-1)! / (s! (m-2s)!) from the T_m power-series expansion.

    At s = 0 this reduces to 1/m, which is exactly the conventional value of
    the (1/s)C^{s-1}_{m-s-1} factor there; no special casing is needed.
    """
    if m < 1:
        raise ValueError("cheb_series_coef: m must be >= 1")
    if s < 0 or 2 * s > m:
        raise ValueError("cheb_series_coef: need 0 <= s <= m//2")
    return Fraction(math.factorial(m - s - 1), math.factorial(s) * math.factorial(m - 2 * s))


def cheb_series_coef(m: int, s: int) -> float:
    return float(cheb_series_coef_exact(m, s))


def odd_double_factorial_exact(j: int) -> int:
    """|2j-1|!! as an exact integer; j = 0 gives |-1|!! = 1."""
    if j < 0:
        raise ValueError("odd_double_factorial: j must be >= 0")
    out = 1
    for odd in range(1, 2 * j, 2):
        out *= odd
    return out


def odd_double_factorial(j: int) -> float:
    return float(odd_double_factorial_exact(j))


def binomial_exact(n: int, k: int) -> int:
    """C_n^k, zero outside 0 <= k <= n."""
    if k < 0 or k > n or n < 0:
        return 0
    return math.comb(n, k)


def binomial(n: int, k: int) -> float:
    return float(binomial_exact(n, k))
