"""Oscillator frame, polynomial potentials, and the spectral eigensolver.

States are expanded over the harmonic-oscillator eigenbasis of a reference
frame (m, omega, hbar).  The Hamiltonian for an arbitrary polynomial
potential is assembled from powers of the tridiagonal position matrix; the
powers are computed in an enlarged working basis and cropped, so every
retained matrix element is exact up to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "OscillatorFrame",
    "PolynomialPotential",
    "SpectralBasis",
    "EigenState",
    "DensityMatrix",
    "EigensolverError",
    "build_position_matrix",
    "build_hamiltonian",
    "solve_eigenstates",
    "density_matrix",
    "oscillator_eigenfunction",
    "eigenfunction_table",
    "state_wavefunction",
]


class EigensolverError(RuntimeError):
    """Eigensolver failed to converge or left a large off-diagonal residual."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class OscillatorFrame:
    """Reference harmonic frame.  kappa = sqrt(m omega / hbar) maps x to the
    dimensionless xbar = kappa x; pscale = sqrt(m hbar omega) maps p to pbar."""

    mass: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.mass > 0 and self.omega > 0 and self.hbar > 0):
            raise ValueError("OscillatorFrame: mass, omega, hbar must all be positive")

    @property
    def kappa(self) -> float:
        return math.sqrt(self.mass * self.omega / self.hbar)

    @property
    def pscale(self) -> float:
        return math.sqrt(self.mass * self.hbar * self.omega)

    def xbar(self, x):
        return self.kappa * x

    def pbar(self, p):
        return p / self.pscale


@dataclass(frozen=True)
class PolynomialPotential:
    """U(x) = sum_n a_n x^n with a_N != 0, N >= 1.  Evaluation is Horner."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        if len(self.coeffs) < 2:
            raise ValueError("PolynomialPotential: degree must be >= 1")
        if self.coeffs[-1] == 0.0:
            raise ValueError("PolynomialPotential: leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", tuple(float(a) for a in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0.0 * x + self.coeffs[-1]
        for a in reversed(self.coeffs[:-1]):
            acc = acc * x + a
        return acc

    @classmethod
    def harmonic(cls, frame: OscillatorFrame) -> "PolynomialPotential":
        return cls((0.0, 0.0, 0.5 * frame.mass * frame.omega**2))


@dataclass(frozen=True)
class SpectralBasis:
    """Truncated oscillator basis |0> .. |K-1> in a given frame."""

    size: int
    frame: OscillatorFrame = field(default_factory=OscillatorFrame)

    def __post_init__(self):
        if self.size < 2:
            raise ValueError("SpectralBasis: size must be >= 2")


@dataclass(frozen=True)
class EigenState:
    """Eigenvector over the spectral basis.  Coefficients are real, unit norm,
    and sign-fixed so the largest-magnitude coefficient is positive."""

    index: int
    energy: float
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        norm = float(c @ c)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"EigenState: norm^2 = {norm!r} deviates from 1 beyond 1e-12")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def dominant_index(self) -> int:
        return int(np.argmax(np.abs(self.coeffs)))


@dataclass(frozen=True)
class DensityMatrix:
    """Real symmetric rho with unit trace; rank one for the pure states here."""

    rho: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.rho, dtype=float)
        if r.ndim != 2 or r.shape[0] != r.shape[1]:
            raise ValueError("DensityMatrix: expected a square matrix")
        if not np.array_equal(r, r.T):
            raise ValueError("DensityMatrix: matrix must be exactly symmetric")
        tr = float(np.trace(r))
        if abs(tr - 1.0) > 1e-12:
            raise ValueError(f"DensityMatrix: trace = {tr!r} deviates from 1 beyond 1e-12")
        r = r.copy()
        r.flags.writeable = False
        object.__setattr__(self, "rho", r)

    @property
    def size(self) -> int:
        return self.rho.shape[0]


def build_position_matrix(basis: SpectralBasis) -> np.ndarray:
    """Tridiagonal <n|x|k> in the oscillator basis: X[n, n+1] = sqrt((n+1)/2)/kappa."""
    k = basis.size
    off = np.sqrt(np.arange(1, k) / 2.0) / basis.frame.kappa
    x = np.zeros((k, k))
    idx = np.arange(k - 1)
    x[idx, idx + 1] = off
    x[idx + 1, idx] = off
    return x


def build_hamiltonian(basis: SpectralBasis, potential: PolynomialPotential) -> np.ndarray:
    """H = p^2/2m + U(x) over the truncated basis.

    p^2/2m is written as hbar omega (n + 1/2) minus the frame's harmonic term,
    so only position-matrix powers are needed.  Powers are formed in a working
    basis enlarged by the potential degree and cropped back, which keeps every
    retained element exact (x^n only couples states at most n apart).
    """
    k = basis.size
    deg = potential.degree
    if k < deg + 2:
        raise ValueError("build_hamiltonian: basis size must be >= potential degree + 2")
    fr = basis.frame
    work = SpectralBasis(k + deg, fr)
    xw = build_position_matrix(work)

    h = np.zeros((k, k))
    np.fill_diagonal(h, fr.hbar * fr.omega * (np.arange(k) + 0.5))
    h += potential.coeffs[0] * np.eye(k)

    power = np.eye(k + deg)
    for n in range(1, deg + 1):
        power = power @ xw
        coef = potential.coeffs[n]
        if n == 2:
            coef -= 0.5 * fr.mass * fr.omega**2
        if coef != 0.0:
            h += coef * power[:k, :k]
    if deg < 2:
        h -= 0.5 * fr.mass * fr.omega**2 * (xw @ xw)[:k, :k]
    return 0.5 * (h + h.T)


def solve_eigenstates(h: np.ndarray, count: int | None = None) -> list[EigenState]:
    """Lowest eigenpairs of a real symmetric H, ascending, deterministic signs.

    Degenerate pairs (within 1e-12 of the spectral scale) are ordered by the
    index of their dominant basis coefficient so reruns are reproducible.
    """
    h = np.asarray(h, dtype=float)
    k = h.shape[0]
    if count is None:
        count = k
    if not 0 < count <= k:
        raise ValueError("solve_eigenstates: count out of range")
    try:
        evals, evecs = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver did not converge: {exc}") from exc

    scale = float(np.max(np.abs(h)))
    residual = float(np.max(np.abs(h @ evecs - evecs * evals)))
    if residual > 1e-10 * max(scale, 1.0) * k:
        raise EigensolverError("eigensolver residual too large", residual=residual)

    states = []
    for s in range(k):
        c = evecs[:, s]
        dom = int(np.argmax(np.abs(c)))
        if c[dom] < 0:
            c = -c
        states.append((float(evals[s]), dom, c))
    tol = 1e-12 * max(1.0, float(np.max(np.abs(evals))))
    states.sort(key=lambda t: (t[0], t[1]))
    # stable reorder inside near-degenerate clusters only
    ordered: list[tuple[float, int, np.ndarray]] = []
    i = 0
    while i < k:
        j = i
        while j + 1 < k and states[j + 1][0] - states[i][0] <= tol:
            j += 1
        cluster = sorted(states[i : j + 1], key=lambda t: t[1])
        ordered.extend(cluster)
        i = j + 1
    return [EigenState(index=s, energy=e, coeffs=c) for s, (e, _, c) in enumerate(ordered[:count])]


def density_matrix(state: EigenState) -> DensityMatrix:
    """Pure-state rho = c c^T; the outer product is exactly symmetric."""
    return DensityMatrix(np.outer(state.coeffs, state.coeffs))


def oscillator_eigenfunction(frame: OscillatorFrame, n: int, x):
    """Harmonic eigenfunction psi_n(x) through the normalized Hermite-function
    recurrence (no factorial overflow for large n)."""
    if n < 0:
        raise ValueError("oscillator_eigenfunction: n must be >= 0")
    xb = frame.xbar(x)
    f_prev = math.pi ** (-0.25) * np.exp(-0.5 * xb * xb) * math.sqrt(frame.kappa)
    if n == 0:
        return f_prev
    f_cur = math.sqrt(2.0) * xb * f_prev
    for j in range(1, n):
        f_prev, f_cur = f_cur, (math.sqrt(2.0 / (j + 1.0)) * xb * f_cur
                                - math.sqrt(j / (j + 1.0)) * f_prev)
    return f_cur


def eigenfunction_table(frame: OscillatorFrame, nmax: int, x) -> np.ndarray:
    """psi_0(x) .. psi_nmax(x) stacked as rows, one recurrence pass."""
    xb = np.asarray(frame.xbar(x), dtype=float)
    out = np.empty((nmax + 1,) + xb.shape)
    out[0] = math.pi ** (-0.25) * np.exp(-0.5 * xb * xb) * math.sqrt(frame.kappa)
    if nmax >= 1:
        out[1] = math.sqrt(2.0) * xb * out[0]
    for j in range(1, nmax):
        out[j + 1] = math.sqrt(2.0 / (j + 1.0)) * xb * out[j] - math.sqrt(j / (j + 1.0)) * out[j - 1]
    return out


def state_wavefunction(frame: OscillatorFrame, state: EigenState, x) -> np.ndarray:
    """Psi_s(x) = sum_k c_k psi_k(x)."""
    table = eigenfunction_table(frame, len(state.coeffs) - 1, x)
    return np.tensordot(state.coeffs, table, axes=1)
