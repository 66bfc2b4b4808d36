"""Independent numerical oracles: adaptive quadrature and a grid eigensolver.

Everything here deliberately avoids the closed-form moment code.  The
quadrature integrands call ``kernel_w_reference`` (the finite polynomial
expansion), never the production Laguerre kernel, so a bug in one route
cannot certify itself through the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.linalg import eigh_tridiagonal

from .model import OscillatorFrame, PolynomialPotential
from .wigner import PhasePoint, kernel_w_reference

__all__ = [
    "QuadratureSpec",
    "QuadratureError",
    "quad_moment_I",
    "quad_moment_J",
    "quad_gaussian_moment",
    "finite_difference_spectrum",
]


class QuadratureError(RuntimeError):
    """Adaptive quadrature could not reach the requested tolerance."""

    def __init__(self, message: str, value: float, estimate: float):
        super().__init__(message)
        self.value = value
        self.estimate = estimate


@dataclass(frozen=True)
class QuadratureSpec:
    """Integration window (in units of the frame's length/momentum scale) and
    tolerances for the adaptive Gauss-Kronrod rule."""

    half_width: float = 10.0
    abs_tol: float = 1e-12
    rel_tol: float = 1e-9
    max_subdivisions: int = 200

    def __post_init__(self):
        if self.half_width < 8.0:
            raise ValueError("QuadratureSpec: half_width below 8 risks truncating the Gaussian tails")
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("QuadratureSpec: tolerances must be positive")
        if self.max_subdivisions < 10:
            raise ValueError("QuadratureSpec: max_subdivisions too small")


def _checked_quad(fn, lo: float, hi: float, spec: QuadratureSpec, what: str) -> float:
    value, estimate = quad(fn, lo, hi, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                           limit=spec.max_subdivisions)
    if estimate > spec.abs_tol + spec.rel_tol * abs(value):
        raise QuadratureError(f"{what}: error estimate {estimate:.3e} above tolerance",
                              value=value, estimate=estimate)
    return value


def quad_moment_I(frame: OscillatorFrame, n: int, k: int, ell: int, x: float,
                  spec: QuadratureSpec = QuadratureSpec()) -> float:
    """integral p^{2l} w_{n,k}(x, p) dp by adaptive quadrature on the reference kernel."""
    half = spec.half_width * frame.pscale

    def integrand(p: float) -> float:
        return p ** (2 * ell) * kernel_w_reference(frame, n, k, PhasePoint(x, p)).real

    return _checked_quad(integrand, -half, half, spec, f"quad_moment_I({n},{k},{ell})")


def quad_moment_J(frame: OscillatorFrame, n: int, k: int, r: int, p: float,
                  spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Re integral x^r w_{n,k}(x, p) dx by adaptive quadrature on the reference kernel."""
    half = spec.half_width / frame.kappa

    def integrand(x: float) -> float:
        return x**r * kernel_w_reference(frame, n, k, PhasePoint(x, p)).real

    return _checked_quad(integrand, -half, half, spec, f"quad_moment_J({n},{k},{r})")


def quad_gaussian_moment(j: int, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """integral_0^inf t^{2j} e^{-t^2} dt, the half-line Gaussian moment."""
    if j < 0:
        raise ValueError("quad_gaussian_moment: j must be >= 0")
    return _checked_quad(lambda t: t ** (2 * j) * math.exp(-t * t), 0.0, spec.half_width,
                         spec, f"quad_gaussian_moment({j})")


def finite_difference_spectrum(frame: OscillatorFrame, potential: PolynomialPotential,
                               domain: tuple[float, float], points: int, count: int) -> np.ndarray:
    """Lowest eigenvalues of -hbar^2/2m d^2/dx^2 + U on a uniform Dirichlet grid.

    Three-point stencil; the hard walls sit at the domain ends, so for
    metastable potentials the caller must keep the walls inside the barrier
    or the box fills with spurious outer-region states.
    """
    if points < 2000:
        raise ValueError("finite_difference_spectrum: need at least 2000 interior points")
    if count < 1:
        raise ValueError("finite_difference_spectrum: count must be >= 1")
    lo, hi = domain
    if not hi > lo:
        raise ValueError("finite_difference_spectrum: empty domain")
    xs = np.linspace(lo, hi, points + 2)[1:-1]
    dx = xs[1] - xs[0]
    t = frame.hbar**2 / (2.0 * frame.mass * dx * dx)
    diag = 2.0 * t + potential(xs)
    off = np.full(points - 1, -t)
    evals = eigh_tridiagonal(diag, off, select="i", select_range=(0, count - 1),
                             eigvals_only=True)
    return np.asarray(evals)
