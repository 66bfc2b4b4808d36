"""Average-energy profiles, their poles, and the negativity co-location report.

The conditional average energy along x is

    <E>_{s,x}(x) = (1/2m) sum rho I^1 / sum rho I^0 + U(x),

and along p

    <E>_{s,p}(p) = p^2/2m + sum_r a_r <x^r>_{s,p},   <x^r> = sum rho J^r / sum rho J^0.

The denominators are probability marginals; their zeros (or, for states of
mixed parity along p, their deep quasi-zeros) are the energy-function poles
this module locates.  Far from the state the closed-form marginals are
evaluated as alternating sums whose cancellation noise (~1e-9 of the peak)
exceeds the true density; pole detection therefore demands both a deep dip
and genuine prominence on both sides, and flags windows whose edges have
dropped below the resolvable floor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .model import DensityMatrix, OscillatorFrame, PolynomialPotential
from .moments import (
    PAIR_ORDER_CAP,
    eval_shape_array,
    i_shape_table,
    j_shape_table,
    moment_I_direct,
    moment_J,
)
from .specfun import laguerre
from .wigner import NegativityInterval, default_negativity_tol, negativity_intervals, wigner_grid, wigner_slice

__all__ = [
    "DenominatorNearZero",
    "EnergyProfile",
    "HarmonicCoeffSet",
    "AxisReport",
    "conditional_p_moment",
    "average_energy_x",
    "conditional_x_moment",
    "average_energy_p",
    "sample_energy_profile",
    "find_poles",
    "harmonic_coefficients",
    "harmonic_avg_energy_x",
    "harmonic_avg_energy_p",
    "wigner_energy_integral",
    "pole_negativity_report",
]

HARMONIC_S_CAP = 24


class DenominatorNearZero(ArithmeticError):
    """Conditional-moment denominator vanished at the queried coordinate.

    Signals an energy-function pole, not a failure; callers sampling profiles
    catch it and record a gap.
    """

    def __init__(self, coordinate: float, denominator: float, tolerance: float):
        super().__init__(
            f"marginal density {denominator:.3e} at coordinate {coordinate!r} "
            f"is below the tolerance {tolerance:.3e}"
        )
        self.coordinate = coordinate
        self.denominator = denominator
        self.tolerance = tolerance


def _rho_array(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.rho
    return np.asarray(rho, dtype=float)


def significant_pairs(rho, cutoff: float = 0.0, order_cap: int = PAIR_ORDER_CAP):
    """Upper-triangle (n, k <= n, weight) with Hermitian double counting folded in.

    Pairs with n + k beyond the moment-table cap are dropped; the largest
    dropped weight is returned so callers can judge the truncation.
    """
    r = _rho_array(rho)
    size = r.shape[0]
    top = float(np.max(np.abs(r))) if size else 0.0
    out = []
    dropped = 0.0
    for n in range(size):
        for k in range(n + 1):
            w = (1.0 if n == k else 2.0) * r[n, k]
            if w == 0.0:
                continue
            if n + k > order_cap:
                dropped = max(dropped, abs(w))
                continue
            if abs(w) <= cutoff * top:
                continue
            out.append((n, k, w))
    return out, dropped


def _combine(tables_weights) -> tuple[tuple[int, ...], tuple[float, ...]]:
    acc: dict[int, float] = {}
    for (pref, exps, coefs), w in tables_weights:
        for e, c in zip(exps, coefs):
            acc[e] = acc.get(e, 0.0) + w * pref * c
    exps = tuple(sorted(acc, reverse=True))
    return exps, tuple(acc[e] for e in exps)


class _ProfileEngine:
    """Combined-coefficient evaluator for one state and axis.

    Collapses the pair sums into a single polynomial-times-Gaussian per needed
    moment order, so sampling and pole refinement share one cheap callable.
    """

    def __init__(self, frame: OscillatorFrame, rho, potential: PolynomialPotential,
                 axis: str, pair_cutoff: float = 0.0, order_cap: int = PAIR_ORDER_CAP):
        if axis not in ("x", "p"):
            raise ValueError("profile axis must be 'x' or 'p'")
        self.frame = frame
        self.potential = potential
        self.axis = axis
        pairs, self.dropped_weight = significant_pairs(rho, pair_cutoff, order_cap)
        self.pair_count = len(pairs)
        if axis == "x":
            self._den_tab = _combine(((i_shape_table(n, k, 0), w) for n, k, w in pairs))
            self._kin_tab = _combine(((i_shape_table(n, k, 1), w) for n, k, w in pairs))
        else:
            self._den_tab = _combine(
                ((t, w) for n, k, w in pairs if (t := j_shape_table(n, k, 0)) is not None))
            self._mom_tabs = {}
            for r in range(1, potential.degree + 1):
                if potential.coeffs[r] == 0.0:
                    continue
                self._mom_tabs[r] = _combine(
                    ((t, w) for n, k, w in pairs if (t := j_shape_table(n, k, r)) is not None))

    def den(self, coord):
        """Marginal density: Q1(x) = |Psi|^2 or R1(p) = |Psi-tilde|^2."""
        fr = self.frame
        if self.axis == "x":
            return fr.kappa * eval_shape_array((1.0, *self._den_tab), np.asarray(fr.xbar(coord), dtype=float))
        return eval_shape_array((1.0, *self._den_tab), np.asarray(fr.pbar(coord), dtype=float)) / (fr.hbar * fr.kappa)

    def num(self, coord):
        """Energy-density numerator: <E> = num / den away from gaps."""
        fr = self.frame
        c = np.asarray(coord, dtype=float)
        if self.axis == "x":
            kin = (fr.mass * fr.hbar * fr.omega) ** 1.5 / fr.hbar / (2.0 * fr.mass) \
                * eval_shape_array((1.0, *self._kin_tab), fr.xbar(c))
            return kin + self.potential(c) * self.den(c)
        pb = fr.pbar(c)
        total = (c * c / (2.0 * fr.mass) + self.potential.coeffs[0]) * self.den(c)
        for r, tab in self._mom_tabs.items():
            total = total + self.potential.coeffs[r] / (fr.hbar * fr.kappa ** (r + 1)) \
                * eval_shape_array((1.0, *tab), pb)
        return total

    def den_scalar(self, coord: float) -> float:
        return float(self.den(np.float64(coord)))

    def num_scalar(self, coord: float) -> float:
        return float(self.num(np.float64(coord)))


@dataclass(frozen=True)
class EnergyProfile:
    """Sampled <E> along one axis with the marginal density and pole list.

    values[i] * denominators[i] = numerators[i] wherever is_gap[i] is false;
    gap samples hold nan in values.
    """

    axis: str
    state_index: int
    coords: np.ndarray
    values: np.ndarray
    numerators: np.ndarray
    denominators: np.ndarray
    is_gap: np.ndarray
    poles: tuple[float, ...]
    diagnostics: dict = field(default_factory=dict)


def _denominator_scale(frame: OscillatorFrame, axis: str) -> float:
    # peak scale of the respective marginal for a ground-state-like profile
    if axis == "x":
        return frame.kappa / math.sqrt(math.pi)
    return 1.0 / (frame.hbar * frame.kappa * math.sqrt(math.pi))


def conditional_p_moment(frame: OscillatorFrame, rho, ell: int, x: float,
                         denom_tol: float | None = None) -> tuple[float, float]:
    """<p^{2l}>_{s,x}(x) and the marginal it divides by."""
    pairs, _ = significant_pairs(rho)
    den = math.fsum(w * moment_I_direct(frame, n, k, 0, x) for n, k, w in pairs)
    if denom_tol is None:
        denom_tol = 1e-9 * _denominator_scale(frame, "x")
    if abs(den) < denom_tol:
        raise DenominatorNearZero(x, den, denom_tol)
    num = math.fsum(w * moment_I_direct(frame, n, k, ell, x) for n, k, w in pairs)
    return num / den, den


def average_energy_x(frame: OscillatorFrame, rho, potential: PolynomialPotential, x: float,
                     denom_tol: float | None = None) -> float:
    """<E>_{s,x}(x); raises DenominatorNearZero on a pole."""
    p2, _ = conditional_p_moment(frame, rho, 1, x, denom_tol)
    return p2 / (2.0 * frame.mass) + float(potential(x))


def conditional_x_moment(frame: OscillatorFrame, rho, r: int, p: float,
                         denom_tol: float | None = None) -> tuple[float, float]:
    """<x^r>_{s,p}(p) and the momentum marginal it divides by."""
    pairs, _ = significant_pairs(rho)
    den = math.fsum(w * moment_J(frame, n, k, 0, p) for n, k, w in pairs)
    if denom_tol is None:
        denom_tol = 1e-9 * _denominator_scale(frame, "p")
    if abs(den) < denom_tol:
        raise DenominatorNearZero(p, den, denom_tol)
    num = math.fsum(w * moment_J(frame, n, k, r, p) for n, k, w in pairs)
    return num / den, den


def average_energy_p(frame: OscillatorFrame, rho, potential: PolynomialPotential, p: float,
                     denom_tol: float | None = None) -> float:
    """<E>_{s,p}(p) = p^2/2m + sum_r a_r <x^r>_{s,p}(p)."""
    total = p * p / (2.0 * frame.mass) + potential.coeffs[0]
    for r in range(1, potential.degree + 1):
        if potential.coeffs[r] == 0.0:
            continue
        xr, _ = conditional_x_moment(frame, rho, r, p, denom_tol)
        total += potential.coeffs[r] * xr
    return total


def find_poles(frame: OscillatorFrame, rho, potential: PolynomialPotential, axis: str,
               window: tuple[float, float], samples: int = 2001,
               quasi_zero_frac: float = 0.05, prominence_frac: float = 1e-3,
               prominence_radius_frac: float = 0.05, denom_rel_tol: float = 1e-9,
               num_factor: float = 1e3, _engine: _ProfileEngine | None = None) -> list[float]:
    """Energy-function poles: deep denominator dips with real structure around them.

    Candidates are sign changes of the marginal (refined by root bracketing)
    and local minima of its magnitude (refined by bounded minimization to
    1e-10 of the window).  A candidate is accepted as a pole only if

    * the refined |denominator| is below ``quasi_zero_frac`` of the window
      maximum (x-axis zeros are exact; momentum marginals of mixed-parity
      states only dip, to a few 1e-3 of the peak, hence the loose default),
    * the sampled marginal recovers above ``prominence_frac`` of the maximum
      on both sides within the prominence radius (rejects cancellation-noise
      wiggles in the far tail, which sit orders of magnitude below the peak),
    * and the numerator exceeds ``num_factor`` times the denominator
      tolerance there, so the ratio genuinely diverges.
    """
    lo, hi = window
    if not hi > lo:
        raise ValueError("find_poles: empty window")
    if samples < 16:
        raise ValueError("find_poles: too few samples")
    engine = _engine if _engine is not None else _ProfileEngine(frame, rho, potential, axis)
    ts = np.linspace(lo, hi, samples)
    den = np.asarray(engine.den(ts), dtype=float)
    aden = np.abs(den)
    scale = float(aden.max())
    if scale == 0.0:
        return []
    width = hi - lo
    xatol = 1e-10 * width

    candidates: list[float] = []
    sign = np.sign(den)
    for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
        candidates.append(float(brentq(engine.den_scalar, ts[i], ts[i + 1], xtol=xatol)))
    interior = np.nonzero((aden[1:-1] < aden[:-2]) & (aden[1:-1] <= aden[2:]))[0] + 1
    for i in interior:
        res = minimize_scalar(lambda t: abs(engine.den_scalar(t)),
                              bounds=(ts[i - 1], ts[i + 1]), method="bounded",
                              options={"xatol": xatol})
        candidates.append(float(res.x))

    # cluster duplicates from the two detectors
    candidates.sort()
    clustered: list[float] = []
    cluster_radius = max(2.0 * width / (samples - 1), 1e-9 * width)
    for c in candidates:
        if clustered and c - clustered[-1] <= cluster_radius:
            if abs(engine.den_scalar(c)) < abs(engine.den_scalar(clustered[-1])):
                clustered[-1] = c
        else:
            clustered.append(c)

    radius = prominence_radius_frac * width
    num_floor = num_factor * denom_rel_tol * scale * frame.hbar * frame.omega
    poles: list[float] = []
    for c in clustered:
        if abs(engine.den_scalar(c)) > quasi_zero_frac * scale:
            continue
        left = aden[(ts >= c - radius) & (ts < c)]
        right = aden[(ts > c) & (ts <= c + radius)]
        if left.size == 0 or right.size == 0:
            continue
        if left.max() < prominence_frac * scale or right.max() < prominence_frac * scale:
            continue
        if abs(engine.num_scalar(c)) < num_floor:
            continue
        poles.append(c)
    return poles


def sample_energy_profile(frame: OscillatorFrame, rho, potential: PolynomialPotential,
                          axis: str, window: tuple[float, float], samples: int = 2001,
                          state_index: int = -1, denom_rel_tol: float = 1e-9,
                          locate_poles: bool = True) -> EnergyProfile:
    """Sample <E> along an axis; gap samples are where the marginal is unresolvable."""
    engine = _ProfileEngine(frame, rho, potential, axis)
    ts = np.linspace(window[0], window[1], samples)
    den = np.asarray(engine.den(ts), dtype=float)
    num = np.asarray(engine.num(ts), dtype=float)
    scale = float(np.abs(den).max())
    gap_tol = denom_rel_tol * scale
    is_gap = np.abs(den) < gap_tol
    values = np.full_like(den, np.nan)
    np.divide(num, den, out=values, where=~is_gap)
    poles = tuple(find_poles(frame, rho, potential, axis, window, samples,
                             denom_rel_tol=denom_rel_tol, _engine=engine)) if locate_poles else ()
    diagnostics = {
        "edge_density_low": [bool(abs(den[0]) < 10.0 * gap_tol), bool(abs(den[-1]) < 10.0 * gap_tol)],
        "dropped_pair_weight": engine.dropped_weight,
        "denominator_scale": scale,
    }
    return EnergyProfile(axis=axis, state_index=state_index, coords=ts, values=values,
                         numerators=num, denominators=den, is_gap=is_gap, poles=poles,
                         diagnostics=diagnostics)


# harmonic closed forms -----------------------------------------------------


def _h2_exact(n: int) -> int:
    if n % 2 == 1:
        return 0
    root = math.factorial(n) // math.factorial(n // 2)
    return root * root


@dataclass(frozen=True)
class HarmonicCoeffSet:
    """Laguerre-series coefficients of the harmonic conditional-moment ratio."""

    s: int
    c: tuple[float, ...]
    cbar: tuple[float, ...]


def harmonic_coefficients(s: int) -> HarmonicCoeffSet:
    """C_k and Cbar_k for the harmonic closed-form profiles.

    C_k = (-1)^k sum_{j=0}^k g_j [H^2_{k-j}(0) + 2(k-j) H^2_{k-j-1}(0)] / (2^{k-j} (k-j)!)
    with g_0 = 1/2 and g_j = 1 otherwise; Cbar flips the sign of the second
    bracket term.  The half weight at j = 0 is forced by agreement with the
    general moment machinery (checked to machine precision for s <= 3).
    """
    if s < 0:
        raise ValueError("harmonic_coefficients: s must be >= 0")
    if s > HARMONIC_S_CAP:
        raise ValueError(f"harmonic_coefficients: s beyond supported cap {HARMONIC_S_CAP}")
    cs, cbars = [], []
    for k in range(s + 1):
        tot = Fraction(0)
        totb = Fraction(0)
        for j in range(k + 1):
            g = Fraction(1, 2) if j == 0 else Fraction(1)
            a = _h2_exact(k - j)
            b = 2 * (k - j) * _h2_exact(k - j - 1) if k - j >= 1 else 0
            denom = 2 ** (k - j) * math.factorial(k - j)
            tot += g * Fraction(a + b, denom)
            totb += g * Fraction(a - b, denom)
        cs.append(float((-1) ** k * tot))
        cbars.append(float((-1) ** k * totb))
    return HarmonicCoeffSet(s=s, c=tuple(cs), cbar=tuple(cbars))


def _harmonic_ratio(coeffs: HarmonicCoeffSet, arg: float) -> tuple[float, float]:
    s = coeffs.s
    num = math.fsum(coeffs.c[k] * float(laguerre(s - k, 0, arg)) for k in range(s + 1))
    den = math.fsum(coeffs.cbar[k] * float(laguerre(s - k, 0, arg)) for k in range(s + 1))
    return num, den


def harmonic_avg_energy_x(frame: OscillatorFrame, s: int, x: float) -> float:
    """Closed-form harmonic <E>_{s,x}(x); infinite at its poles."""
    coeffs = harmonic_coefficients(s)
    sx2 = frame.hbar / (2.0 * frame.mass * frame.omega)
    num, den = _harmonic_ratio(coeffs, x * x / sx2)
    # <v^2>/(2 sv^2) = num/(2 den); scaled by hbar omega / 2
    return 0.5 * frame.hbar * frame.omega * (0.5 * num / den + 0.5 * x * x / sx2)


def harmonic_avg_energy_p(frame: OscillatorFrame, s: int, p: float) -> float:
    """Closed-form harmonic <E>_{s,p}(p), the momentum-side mirror."""
    coeffs = harmonic_coefficients(s)
    sv2 = frame.hbar * frame.omega / (2.0 * frame.mass)
    v = p / frame.mass
    num, den = _harmonic_ratio(coeffs, v * v / sv2)
    return 0.5 * frame.hbar * frame.omega * (0.5 * v * v / sv2 + 0.5 * num / den)


def wigner_energy_integral(frame: OscillatorFrame, rho, potential: PolynomialPotential,
                           x_window: tuple[float, float] = (-6.5, 9.0),
                           p_window: tuple[float, float] = (-7.0, 7.0),
                           nx: int = 1001, np_: int = 901) -> float:
    """Phase-plane integral of W(x,p) E(x,p); equals the state energy.

    Evaluated through the Wigner grid rather than the moment tables, so the
    full basis contributes regardless of the moment-order cap.
    """
    xs = np.linspace(x_window[0], x_window[1], nx)
    ps = np.linspace(p_window[0], p_window[1], np_)
    f = wigner_grid(frame, rho, xs, ps)
    e = (ps * ps / (2.0 * frame.mass))[None, :] + potential(xs)[:, None]
    return float(np.trapezoid(np.trapezoid(f.values * e, ps, axis=1), xs))


# pole vs negativity --------------------------------------------------------


@dataclass(frozen=True)
class AxisReport:
    """Poles and Wigner negativity intervals along one axis, matched up.

    ``intervals`` carries only resolvable negativity; detections whose depth
    is below ``depth_floor`` times the slice maximum (basis-truncation
    artifacts in the far tail) are listed separately in ``faint_intervals``.
    ``pairs`` maps each pole to the index of the interval containing it, or
    None; ``bijection`` is true when the matching is one-to-one and onto.
    """

    axis: str
    state_index: int
    poles: tuple[float, ...]
    intervals: tuple[NegativityInterval, ...]
    faint_intervals: tuple[NegativityInterval, ...]
    pairs: tuple[tuple[float, int | None], ...]
    unmatched_intervals: tuple[int, ...]
    bijection: bool


def pole_negativity_report(frame: OscillatorFrame, rho, potential: PolynomialPotential,
                           axis: str, window: tuple[float, float], samples: int = 2001,
                           tol: float | None = None, depth_floor: float = 1e-6,
                           state_index: int = -1, denom_rel_tol: float = 1e-9) -> AxisReport:
    """Locate poles and negativity intervals on one axis and pair them off."""
    if tol is None:
        tol = default_negativity_tol(frame)
    poles = tuple(find_poles(frame, rho, potential, axis, window, samples,
                             denom_rel_tol=denom_rel_tol))
    coords = np.linspace(window[0], window[1], samples)
    wvals = wigner_slice(frame, rho, axis, coords)
    detected = negativity_intervals(axis, coords, wvals, tol)
    floor = depth_floor * float(np.max(np.abs(wvals)))
    intervals = tuple(iv for iv in detected if abs(iv.min_value) >= floor)
    faint = tuple(iv for iv in detected if abs(iv.min_value) < floor)
    pairs = []
    used: set[int] = set()
    for pole in poles:
        hit = None
        for idx, iv in enumerate(intervals):
            if iv.lo < pole < iv.hi:
                hit = idx
                used.add(idx)
                break
        pairs.append((pole, hit))
    unmatched = tuple(i for i in range(len(intervals)) if i not in used)
    bijection = (
        len(poles) == len(intervals)
        and all(h is not None for _, h in pairs)
        and len(used) == len(intervals)
    )
    return AxisReport(axis=axis, state_index=state_index, poles=poles, intervals=intervals,
                      faint_intervals=faint, pairs=tuple(pairs), unmatched_intervals=unmatched,
                      bijection=bijection)
