"""Weyl kernels and Wigner functions over the oscillator basis.

Two independent kernel evaluations are kept side by side on purpose:
``kernel_w`` uses the closed Laguerre form and is the production route, while
``kernel_w_reference`` expands the finite polynomial form directly and is
reserved for cross-checks and quadrature oracles.  They share no code beyond
the frame scalings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.interpolate import CubicSpline

from .model import DensityMatrix, OscillatorFrame
from .specfun import laguerre

__all__ = [
    "PhasePoint",
    "WignerField",
    "NegativityInterval",
    "kernel_w",
    "kernel_w_reference",
    "wigner_value",
    "wigner_grid",
    "wigner_slice",
    "negativity_intervals",
    "default_negativity_tol",
]


@dataclass(frozen=True)
class PhasePoint:
    """Phase-space point; the dimensionless picture lives on z = xbar + i pbar."""

    x: float
    p: float

    def eps(self, frame: OscillatorFrame) -> float:
        """Dimensionless energy variable: |z|^2 / 2."""
        xb, pb = frame.xbar(self.x), frame.pbar(self.p)
        return 0.5 * (xb * xb + pb * pb)

    def modz(self, frame: OscillatorFrame) -> float:
        xb, pb = frame.xbar(self.x), frame.pbar(self.p)
        return math.hypot(xb, pb)

    def phi(self, frame: OscillatorFrame) -> float:
        """Full-range polar angle atan2(pbar, xbar)."""
        return math.atan2(frame.pbar(self.p), frame.xbar(self.x))


@lru_cache(maxsize=None)
def _ratio_sqrt(k: int, d: int) -> float:
    """sqrt(2^d k!/(k+d)!) with the rational formed exactly first."""
    return math.sqrt(float(Fraction(2**d * math.factorial(k), math.factorial(k + d))))


def kernel_w(frame: OscillatorFrame, n: int, k: int, point: PhasePoint) -> complex:
    """Weyl-operator matrix element w_{n,k}(x, p), Laguerre closed form.

    w_{n,k} = ((-1)^min / pi hbar) sqrt(2^|d| min!/max!) e^{-|z|^2} |z|^|d|
              L_min^(|d|)(2|z|^2) e^{i (n-k) phi},  d = n - k.
    The angular factor is folded in as z^d (conjugate for d < 0), which is
    exactly |z|^|d| e^{i d phi} and behaves correctly at z = 0.
    """
    if n < 0 or k < 0:
        raise ValueError("kernel_w: indices must be >= 0")
    d = n - k
    mn, ad = min(n, k), abs(d)
    xb, pb = frame.xbar(point.x), frame.pbar(point.p)
    u = 2.0 * (xb * xb + pb * pb)
    amp = (-1.0) ** mn * _ratio_sqrt(mn, ad) / (math.pi * frame.hbar)
    rad = amp * math.exp(-0.5 * u) * laguerre(mn, ad, u)
    z = complex(xb, pb)
    zfac = z**d if d >= 0 else z.conjugate() ** ad
    return rad * zfac


@lru_cache(maxsize=None)
def _reference_coeffs(n: int, k: int) -> tuple[float, ...]:
    # 1/(2^s s! (k-s)! (n-s)!) for s = 0..min(n,k), exact before rounding
    return tuple(
        float(Fraction(1, 2**s * math.factorial(s) * math.factorial(k - s) * math.factorial(n - s)))
        for s in range(min(n, k) + 1)
    )


def kernel_w_reference(frame: OscillatorFrame, n: int, k: int, point: PhasePoint) -> complex:
    """Independent kernel route: finite polynomial expansion.

    w_{n,k} = ((-1)^n / pi hbar) e^{-xb^2-pb^2} P_{n,k},
    P_{n,k} = sqrt(2^{n+k} n! k!) sum_s z1^{n-s} z2^{k-s} / (2^s s!(k-s)!(n-s)!),
    with z1 = -xb - i pb and z2 = xb - i pb.
    """
    if n < 0 or k < 0:
        raise ValueError("kernel_w_reference: indices must be >= 0")
    xb, pb = frame.xbar(point.x), frame.pbar(point.p)
    z1 = complex(-xb, -pb)
    z2 = complex(xb, -pb)
    poly = 0.0 + 0.0j
    for s, c in enumerate(_reference_coeffs(n, k)):
        poly += c * z1 ** (n - s) * z2 ** (k - s)
    root = math.sqrt(float(Fraction(2 ** (n + k) * math.factorial(n) * math.factorial(k))))
    pref = (-1.0) ** n / (math.pi * frame.hbar) * math.exp(-(xb * xb + pb * pb))
    return pref * root * poly


def _rho_array(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.rho
    return np.asarray(rho, dtype=float)


def wigner_value(frame: OscillatorFrame, rho, point: PhasePoint) -> float:
    """W(x, p) = sum_{k,n} rho_{k,n} w_{n,k}; Hermitian pairs combined once."""
    r = _rho_array(rho)
    size = r.shape[0]
    total = 0.0
    for k in range(size):
        if r[k, k] != 0.0:
            total += r[k, k] * kernel_w(frame, k, k, point).real
        for n in range(k + 1, size):
            if r[k, n] != 0.0:
                total += 2.0 * r[k, n] * kernel_w(frame, n, k, point).real
    return total


def _wigner_on_arrays(frame: OscillatorFrame, rho: np.ndarray, xs, ps) -> np.ndarray:
    """Vectorized W over broadcastable coordinate arrays.

    Works diagonal by diagonal in d = n - k: one Laguerre recurrence sweep per
    diagonal serves every pair on it, and the angular factor enters as
    2 Re(z^d) once per diagonal.
    """
    xb = np.asarray(frame.xbar(xs), dtype=float)
    pb = np.asarray(frame.pbar(ps), dtype=float)
    u = 2.0 * (xb * xb + pb * pb)
    z = xb + 1j * pb
    size = rho.shape[0]
    acc = np.zeros(np.broadcast(xb, pb).shape)
    zd = None
    for d in range(size):
        if d > 0:
            zd = z.copy() if zd is None else zd * z
        weights = np.array([(-1.0) ** k * _ratio_sqrt(k, d) * rho[k, k + d] for k in range(size - d)])
        if not weights.any():
            continue
        lag_prev = np.ones_like(u)
        ssum = weights[0] * lag_prev
        if size - d > 1:
            lag_cur = 1.0 + d - u
            ssum = ssum + weights[1] * lag_cur
            for j in range(1, size - d - 1):
                lag_prev, lag_cur = lag_cur, ((2.0 * j + 1.0 + d - u) * lag_cur - (j + d) * lag_prev) / (j + 1.0)
                ssum = ssum + weights[j + 1] * lag_cur
        acc += ssum if d == 0 else 2.0 * ssum * zd.real
    return acc * np.exp(-0.5 * u) / (math.pi * frame.hbar)


@dataclass(frozen=True)
class WignerField:
    """W sampled on a rectangular grid; values[i, j] = W(xs[i], ps[j])."""

    xs: np.ndarray
    ps: np.ndarray
    values: np.ndarray

    def integral(self) -> float:
        return float(np.trapezoid(np.trapezoid(self.values, self.ps, axis=1), self.xs))

    def min_value(self) -> float:
        return float(self.values.min())

    def negative_cell_count(self, tol: float) -> int:
        return int(np.count_nonzero(self.values < -tol))


def wigner_grid(frame: OscillatorFrame, rho, xs, ps) -> WignerField:
    r = _rho_array(rho)
    xs = np.asarray(xs, dtype=float)
    ps = np.asarray(ps, dtype=float)
    values = _wigner_on_arrays(frame, r, xs[:, None], ps[None, :])
    return WignerField(xs=xs, ps=ps, values=values)


def wigner_slice(frame: OscillatorFrame, rho, axis: str, coords) -> np.ndarray:
    """W along one axis with the other coordinate held at zero."""
    r = _rho_array(rho)
    coords = np.asarray(coords, dtype=float)
    if axis == "x":
        return _wigner_on_arrays(frame, r, coords, np.zeros_like(coords))
    if axis == "p":
        return _wigner_on_arrays(frame, r, np.zeros_like(coords), coords)
    raise ValueError("wigner_slice: axis must be 'x' or 'p'")


def default_negativity_tol(frame: OscillatorFrame) -> float:
    """Negativity threshold: 1e-9 of the global Wigner bound 1/(pi hbar)."""
    return 1e-9 / (math.pi * frame.hbar)


@dataclass(frozen=True)
class NegativityInterval:
    """Maximal region along one axis where W drops below -tol."""

    axis: str
    lo: float
    hi: float
    min_value: float

    def contains(self, coord: float) -> bool:
        return self.lo <= coord <= self.hi


def _bisect_crossing(spline, a: float, b: float, target: float) -> float:
    """Bisection between samples of opposite sign until |spline| <= target."""
    fa = float(spline(a))
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = float(spline(mid))
        if abs(fm) <= target or b - a <= 1e-15 * max(abs(a), abs(b), 1.0):
            return mid
        if (fa >= 0.0) == (fm >= 0.0):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)


def negativity_intervals(axis: str, coords, values, tol: float) -> list[NegativityInterval]:
    """Maximal intervals with W < -tol; endpoints refined to |W| <= tol/10.

    Endpoint refinement bisects a cubic spline through the samples.  A run
    that touches the sampled window edge is clamped there.  Runs separated
    only by sub-threshold negative samples expand to the same zero crossings
    and are merged.
    """
    if axis not in ("x", "p"):
        raise ValueError("negativity_intervals: axis must be 'x' or 'p'")
    if tol <= 0.0:
        raise ValueError("negativity_intervals: tol must be positive")
    coords = np.asarray(coords, dtype=float)
    values = np.asarray(values, dtype=float)
    if coords.ndim != 1 or coords.shape != values.shape or coords.size < 4:
        raise ValueError("negativity_intervals: need matching 1-D sample arrays (>= 4 points)")
    spline = CubicSpline(coords, values)
    below = values < -tol
    intervals: list[NegativityInterval] = []
    i = 0
    npts = coords.size
    while i < npts:
        if not below[i]:
            i += 1
            continue
        j = i
        while j + 1 < npts and below[j + 1]:
            j += 1
        # expand left to the nearest non-negative sample
        left = i
        while left > 0 and values[left] < 0.0:
            left -= 1
        if values[left] >= 0.0:
            lo = _bisect_crossing(spline, coords[left], coords[left + 1], tol / 10.0)
        else:
            lo = coords[0]
        right = j
        while right < npts - 1 and values[right] < 0.0:
            right += 1
        if values[right] >= 0.0:
            hi = _bisect_crossing(spline, coords[right - 1], coords[right], tol / 10.0)
        else:
            hi = coords[-1]
        inside = (coords >= lo) & (coords <= hi)
        min_value = float(values[inside].min()) if inside.any() else float(values[i:j + 1].min())
        if intervals and math.isclose(intervals[-1].lo, lo, rel_tol=0.0, abs_tol=1e-12) \
                and math.isclose(intervals[-1].hi, hi, rel_tol=0.0, abs_tol=1e-12):
            merged = NegativityInterval(axis, lo, hi, min(intervals[-1].min_value, min_value))
            intervals[-1] = merged
        else:
            intervals.append(NegativityInterval(axis=axis, lo=lo, hi=hi, min_value=min_value))
        i = j + 1
    return intervals
