"""Closed-form conditional moments of the Weyl kernels.

Three routes are implemented:

* ``moment_I_direct``   -- momentum moments I^l_{n,k}(x) as a finite triple sum
                           with Chebyshev series coefficients and odd double
                           factorials;
* ``moment_I_laguerre`` -- the same moments through a Laguerre expansion
                           against a table of Gaussian half-line coefficients
                           (``GTable``); kept independent of the direct route
                           above the shared n = k branch so the two can vouch
                           for each other;
* ``moment_J``          -- position moments J^r_{n,k}(p), which vanish
                           identically when |n-k| + r is odd.

Every sum is assembled from exact rationals and rounded once per collected
power, so the heavy cancellation between alternating terms happens in exact
arithmetic, not in floats.  The residual evaluation error is a few ulp.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .model import OscillatorFrame
from .specfun import (
    binomial_exact,
    cheb_series_coef_exact,
    laguerre_sweep,
    odd_double_factorial_exact,
)

__all__ = [
    "GTable",
    "MomentRangeError",
    "g_coefficient",
    "default_gtable",
    "moment_I_direct",
    "moment_I_laguerre",
    "moment_J",
    "PAIR_ORDER_CAP",
]

SQRT_PI = math.sqrt(math.pi)

# Beyond this combined order the alternating sums outgrow what is worth
# supporting; callers truncate their density-matrix sums accordingly.
PAIR_ORDER_CAP = 40


class MomentRangeError(ValueError):
    """Requested kernel indices outside the supported range."""


def _check_indices(n: int, k: int, power: int, what: str) -> None:
    if n < 0 or k < 0:
        raise MomentRangeError(f"{what}: indices must be >= 0")
    if power < 0:
        raise MomentRangeError(f"{what}: moment order must be >= 0")
    if n + k > PAIR_ORDER_CAP:
        raise MomentRangeError(f"{what}: n + k = {n + k} exceeds the supported cap {PAIR_ORDER_CAP}")


def _hermite_sq_zero_exact(lam: int) -> int:
    if lam % 2 == 1:
        return 0
    root = math.factorial(lam) // math.factorial(lam // 2)
    return root * root


class GTable:
    """Half-line Gaussian coefficients G_lambda^{2 beta}, exact inside.

    G_lambda^{2 beta} = integral_0^inf t^{2 beta} e^{-t^2} L_lambda(2 t^2) dt.
    Base column: G_lambda^0 = (-1)^lambda sqrt(pi) H_lambda(0)^2 / (2^{lambda+1} lambda!).
    Column step:  G_lambda^{2 beta} = (beta + lambda - 1/2) G_lambda^{2(beta-1)}
                                      - lambda G_{lambda-1}^{2(beta-1)}.
    Every entry is sqrt(pi) times a rational; the rationals are stored exactly
    and rounded only on read-out.  The table grows on demand up to a hard cap.
    """

    CAP = 64

    def __init__(self, max_lambda: int = 8, max_beta: int = 8, perturb: float = 0.0):
        if max_lambda < 0 or max_beta < 0:
            raise ValueError("GTable: bounds must be >= 0")
        if max_lambda > self.CAP or max_beta > self.CAP:
            raise ValueError(f"GTable: bounds exceed the hard cap {self.CAP}")
        self.perturb = float(perturb)
        self._rows: list[list[Fraction]] = []
        self._build(max_lambda, max_beta)

    def _build(self, max_lambda: int, max_beta: int) -> None:
        rows = []
        for lam in range(max_lambda + 1):
            row = [Fraction((-1) ** lam * _hermite_sq_zero_exact(lam), 2 ** (lam + 1) * math.factorial(lam))]
            for beta in range(1, max_beta + 1):
                val = Fraction(2 * (beta + lam) - 1, 2) * row[beta - 1]
                if lam > 0:
                    val -= lam * rows[lam - 1][beta - 1]
                row.append(val)
            rows.append(row)
        self._rows = rows

    @property
    def max_lambda(self) -> int:
        return len(self._rows) - 1

    @property
    def max_beta(self) -> int:
        return len(self._rows[0]) - 1

    def _ensure(self, lam: int, beta: int) -> None:
        if lam < 0 or beta < 0:
            raise ValueError("GTable: indices must be >= 0")
        if lam > self.CAP or beta > self.CAP:
            raise ValueError(f"GTable: index beyond the hard cap {self.CAP}")
        if lam > self.max_lambda or beta > self.max_beta:
            self._build(max(lam, self.max_lambda), max(beta, self.max_beta))

    def exact(self, lam: int, beta: int) -> Fraction:
        """Rational part of G_lambda^{2 beta} (the sqrt(pi) is factored out)."""
        self._ensure(lam, beta)
        return self._rows[lam][beta]

    def value(self, lam: int, beta: int) -> float:
        return float(self.exact(lam, beta)) * SQRT_PI + self.perturb


_DEFAULT_GTABLE = GTable()


def default_gtable() -> GTable:
    return _DEFAULT_GTABLE


def g_coefficient(table: GTable, lam: int, beta: int) -> float:
    """G_lambda^{2 beta} read from a table (grown on demand)."""
    return table.value(lam, beta)


# ---------------------------------------------------------------------------
# coefficient tables: dimensionless shapes
#
# I^l_{n,k}(x) = (m hbar omega)^{l + 1/2} / hbar * F_{n,k,l}(xbar)
# J^r_{n,k}(p) = 1 / (hbar kappa^{r+1})    * H_{n,k,r}(pbar)
#
# F and H are exp(-t^2) times polynomials with same-parity exponents; the
# tables below hold (prefactor, exponents desc, coefficients).
# ---------------------------------------------------------------------------


def _collect(terms: dict[int, Fraction]) -> tuple[tuple[int, ...], tuple[float, ...]]:
    exps = tuple(sorted((e for e, c in terms.items() if c != 0), reverse=True))
    return exps, tuple(float(terms[e]) for e in exps)


@lru_cache(maxsize=None)
def _i_diag_table(n: int, ell: int) -> tuple[float, tuple[int, ...], tuple[float, ...]]:
    # shared n = k branch of both I routes
    terms: dict[int, Fraction] = {}
    for lam in range(n + 1):
        for s in range(lam + 1):
            c = Fraction(
                (-1) ** (lam + n)
                * binomial_exact(n, lam)
                * binomial_exact(lam, s)
                * odd_double_factorial_exact(ell + s),
                math.factorial(lam),
            ) * Fraction(2) ** (lam - ell - s)
            exp = 2 * (lam - s)
            terms[exp] = terms.get(exp, Fraction(0)) + c
    exps, coefs = _collect(terms)
    return 1.0 / SQRT_PI, exps, coefs


@lru_cache(maxsize=None)
def _i_offdiag_table(n: int, k: int, ell: int) -> tuple[float, tuple[int, ...], tuple[float, ...]]:
    lo, hi = min(n, k), max(n, k)
    ad = hi - lo
    terms: dict[int, Fraction] = {}
    for lam in range(lo + 1):
        cnl = binomial_exact(n, lam) * binomial_exact(k, lam) * math.factorial(lam)
        for s in range(ad // 2 + 1):
            cheb = cheb_series_coef_exact(ad, s)
            for mu in range(lo - lam + s + 1):
                c = (
                    Fraction((-1) ** (lam + s))
                    * cnl
                    * cheb
                    * binomial_exact(lo - lam + s, mu)
                    * odd_double_factorial_exact(ell + mu)
                    / Fraction(2) ** (lam + 2 * s + ell + mu + 1)
                )
                exp = n + k - 2 * (lam + mu)
                assert exp >= 0, "negative xbar exponent: term bookkeeping is broken"
                terms[exp] = terms.get(exp, Fraction(0)) + c
    exps, coefs = _collect(terms)
    pref = ad * math.sqrt(float(Fraction(2 ** (3 * hi - lo), math.factorial(n) * math.factorial(k)))) / SQRT_PI
    return pref, exps, coefs


def _eval_shape(pref: float, exps: tuple[int, ...], coefs: tuple[float, ...], t: float) -> float:
    # scalar path: exactly rounded sum of the already-exact coefficients
    total = math.fsum(c * t**e for e, c in zip(exps, coefs))
    return pref * total * math.exp(-t * t)


def _eval_shape_array(pref: float, exps: tuple[int, ...], coefs: tuple[float, ...], t: np.ndarray) -> np.ndarray:
    if not exps:
        return np.zeros_like(t)
    acc = np.zeros_like(t)
    prev = exps[0]
    # generalized Horner; exponent gaps need not be uniform once pair tables
    # of different |n-k| parity have been combined
    for e, c in zip(exps, coefs):
        if prev != e:
            acc = acc * t ** (prev - e)
        acc = acc + c
        prev = e
    return pref * acc * t ** exps[-1] * np.exp(-t * t)


def moment_I_direct(frame: OscillatorFrame, n: int, k: int, ell: int, x: float) -> float:
    """I^l_{n,k}(x) = integral p^{2l} w_{n,k}(x, p) dp, direct triple-sum route."""
    _check_indices(n, k, ell, "moment_I_direct")
    if n == k:
        pref, exps, coefs = _i_diag_table(n, ell)
    else:
        pref, exps, coefs = _i_offdiag_table(n, k, ell)
    scale = (frame.mass * frame.hbar * frame.omega) ** (ell + 0.5) / frame.hbar
    return scale * _eval_shape(pref, exps, coefs, frame.xbar(x))


@lru_cache(maxsize=None)
def _i_laguerre_rows(n: int, k: int, ell: int) -> tuple[float, int, tuple[tuple[tuple[int, ...], tuple[float, ...]], ...]]:
    return _i_laguerre_rows_for(n, k, ell, _DEFAULT_GTABLE)


def _i_laguerre_rows_for(n: int, k: int, ell: int, table: GTable):
    lo, hi = min(n, k), max(n, k)
    ad = hi - lo
    pref = (
        (-1.0) ** lo
        * math.sqrt(float(Fraction(2**ad * math.factorial(lo), math.factorial(hi))))
        / math.pi
        * 2.0**ad
        * ad
    )
    # E_mu = sum_s (-1)^s 4^{-s} chebc(ad, s) C_s^mu, shared by every lambda row
    emu = []
    for mu in range(ad // 2 + 1):
        acc = Fraction(0)
        for s in range(mu, ad // 2 + 1):
            acc += Fraction((-1) ** s) * cheb_series_coef_exact(ad, s) * binomial_exact(s, mu) / Fraction(4) ** s
        emu.append(acc)
    rows = []
    for lam in range(lo + 1):
        exps: list[int] = []
        coefs: list[float] = []
        for mu in range(ad // 2 + 1):
            if emu[mu] == 0:
                continue
            if table.perturb:
                # fault-injection path: read the (offset) float values
                c = float(emu[mu]) * table.value(lam, ell + mu)
            else:
                c = float(emu[mu] * table.exact(lam, ell + mu)) * SQRT_PI
            if c != 0.0:
                exps.append(ad - 2 * mu)
                coefs.append(c)
        rows.append((tuple(exps), tuple(coefs)))
    return pref, ad, tuple(rows)


def moment_I_laguerre(frame: OscillatorFrame, n: int, k: int, ell: int, x: float,
                      table: GTable | None = None) -> float:
    """I^l_{n,k}(x) through the Laguerre-expansion route.

    The n = k branch coincides with the direct expression and is shared; the
    off-diagonal branch contracts Laguerre polynomials of 2 xbar^2 against
    GTable columns and is independent of the direct route.
    """
    _check_indices(n, k, ell, "moment_I_laguerre")
    if n == k:
        pref, exps, coefs = _i_diag_table(n, ell)
        scale = (frame.mass * frame.hbar * frame.omega) ** (ell + 0.5) / frame.hbar
        return scale * _eval_shape(pref, exps, coefs, frame.xbar(x))
    if table is None:
        pref, ad, rows = _i_laguerre_rows(n, k, ell)
    else:
        pref, ad, rows = _i_laguerre_rows_for(n, k, ell, table)
    xb = frame.xbar(x)
    lo = min(n, k)
    lag = laguerre_sweep(lo, ad - 1, 2.0 * xb * xb)
    total = math.fsum(
        lag[lo - lam] * math.fsum(c * xb**e for e, c in zip(exps, coefs))
        for lam, (exps, coefs) in enumerate(rows)
    )
    scale = (frame.mass * frame.hbar * frame.omega) ** (ell + 0.5) / frame.hbar
    return scale * pref * total * math.exp(-xb * xb)


@lru_cache(maxsize=None)
def _j_diag_table(n: int, ell: int) -> tuple[float, tuple[int, ...], tuple[float, ...]]:
    lead = Fraction(2**n * math.factorial(n))
    terms: dict[int, Fraction] = {}
    for lam in range(n + 1):
        for mu in range(n - lam + 1):
            c = lead * Fraction(
                (-1) ** lam * odd_double_factorial_exact(ell + mu) * binomial_exact(n - lam, mu),
                2 ** (lam + ell + mu) * math.factorial(lam) * math.factorial(n - lam) ** 2,
            )
            exp = 2 * (n - lam - mu)
            terms[exp] = terms.get(exp, Fraction(0)) + c
    exps, coefs = _collect(terms)
    return 1.0 / SQRT_PI, exps, coefs


@lru_cache(maxsize=None)
def _j_offdiag_table(n: int, k: int, r: int) -> tuple[float, tuple[int, ...], tuple[float, ...]]:
    lo, hi = min(n, k), max(n, k)
    ad = hi - lo
    nu = (ad + r) // 2
    terms: dict[int, Fraction] = {}
    for lam in range(lo + 1):
        cnl = binomial_exact(n, lam) * binomial_exact(k, lam) * math.factorial(lam)
        for s in range(ad // 2 + 1):
            cheb = cheb_series_coef_exact(ad, s)
            assert nu - s >= 0, "negative double-factorial argument"
            for mu in range(lo + s - lam + 1):
                c = (
                    Fraction((-1) ** (lam + s))
                    * cnl
                    * cheb
                    * odd_double_factorial_exact(nu + mu - s)
                    * binomial_exact(lo + s - lam, mu)
                    / Fraction(2) ** (lam + s + mu + nu)
                )
                exp = 2 * (lo + s - lam - mu)
                assert exp >= 0, "negative pbar exponent: term bookkeeping is broken"
                terms[exp] = terms.get(exp, Fraction(0)) + c
    exps, coefs = _collect(terms)
    pref = ad * math.sqrt(float(Fraction(2 ** (3 * hi - lo), math.factorial(n) * math.factorial(k))) / math.pi) / 2.0
    return pref, exps, coefs


def moment_J(frame: OscillatorFrame, n: int, k: int, r: int, p: float) -> float:
    """J^r_{n,k}(p) = Re integral x^r w_{n,k}(x, p) dx.

    Exactly zero whenever |n-k| + r is odd (the x-parity of the kernel kills
    the real part); that case returns without touching any table.
    """
    _check_indices(n, k, r, "moment_J")
    if (abs(n - k) + r) % 2 == 1:
        return 0.0
    if n == k:
        pref, exps, coefs = _j_diag_table(n, r // 2)
    else:
        pref, exps, coefs = _j_offdiag_table(n, k, r)
    scale = 1.0 / (frame.hbar * frame.kappa ** (r + 1))
    return scale * _eval_shape(pref, exps, coefs, frame.pbar(p))


# array-evaluation hooks for the profile engine ------------------------------

def i_shape_table(n: int, k: int, ell: int):
    """(pref, exps, coefs) with I = (m hbar w)^{l+1/2}/hbar * shape(xbar)."""
    _check_indices(n, k, ell, "i_shape_table")
    return _i_diag_table(n, ell) if n == k else _i_offdiag_table(n, k, ell)


def j_shape_table(n: int, k: int, r: int):
    """(pref, exps, coefs) with J = shape(pbar)/(hbar kappa^{r+1}); None if parity kills it."""
    _check_indices(n, k, r, "j_shape_table")
    if (abs(n - k) + r) % 2 == 1:
        return None
    return _j_diag_table(n, r // 2) if n == k else _j_offdiag_table(n, k, r)


def eval_shape_array(table, t: np.ndarray) -> np.ndarray:
    pref, exps, coefs = table
    return _eval_shape_array(pref, exps, coefs, np.asarray(t, dtype=float))
