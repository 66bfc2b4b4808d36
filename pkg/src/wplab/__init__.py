"""Wigner functions, closed-form conditional moments, and average-energy
profiles for one-dimensional quantum oscillators with polynomial potentials.

The library solves the stationary problem in a truncated harmonic-oscillator
basis, evaluates the phase-space quasi-probability density and its
negativity domains, computes the conditional moments that build
coordinate- and momentum-conditioned average energies in closed form, and
locates the poles of those energy profiles — the zeros of the state's
marginal densities — so they can be matched against the negativity domains.
"""

from .config import ConfigError, RunConfig, apply_overrides, load_config
from .energy import (AxisReport, DenominatorNearZero, EnergyProfile,
                     average_energy_p, average_energy_x, conditional_p_moment,
                     conditional_x_moment, find_poles, harmonic_avg_energy_p,
                     harmonic_avg_energy_x, harmonic_coefficients,
                     pole_negativity_report, sample_energy_profile,
                     significant_pairs, wigner_energy_integral)
from .model import (DensityMatrix, EigenState, EigensolverError,
                    OscillatorFrame, PolynomialPotential, SpectralBasis,
                    build_hamiltonian, build_position_matrix, density_matrix,
                    eigenfunction_table, oscillator_eigenfunction,
                    solve_eigenstates, state_wavefunction)
from .moments import (GTable, MomentRangeError, default_gtable, g_coefficient,
                      moment_I_direct, moment_I_laguerre, moment_J)
from .oracle import (QuadratureError, QuadratureSpec,
                     finite_difference_spectrum, quad_gaussian_moment,
                     quad_moment_I, quad_moment_J)
from .wigner import (NegativityInterval, PhasePoint, WignerField,
                     default_negativity_tol, kernel_w, kernel_w_reference,
                     negativity_intervals, wigner_grid, wigner_slice,
                     wigner_value)

__version__ = "0.1.0"

__all__ = [
    "AxisReport",
    "ConfigError",
    "DenominatorNearZero",
    "DensityMatrix",
    "EigenState",
    "EigensolverError",
    "EnergyProfile",
    "GTable",
    "MomentRangeError",
    "NegativityInterval",
    "OscillatorFrame",
    "PhasePoint",
    "PolynomialPotential",
    "QuadratureError",
    "QuadratureSpec",
    "RunConfig",
    "SpectralBasis",
    "WignerField",
    "apply_overrides",
    "average_energy_p",
    "average_energy_x",
    "build_hamiltonian",
    "build_position_matrix",
    "conditional_p_moment",
    "conditional_x_moment",
    "default_gtable",
    "default_negativity_tol",
    "density_matrix",
    "eigenfunction_table",
    "find_poles",
    "finite_difference_spectrum",
    "g_coefficient",
    "harmonic_avg_energy_p",
    "harmonic_avg_energy_x",
    "harmonic_coefficients",
    "kernel_w",
    "kernel_w_reference",
    "load_config",
    "moment_I_direct",
    "moment_I_laguerre",
    "moment_J",
    "negativity_intervals",
    "oscillator_eigenfunction",
    "pole_negativity_report",
    "quad_gaussian_moment",
    "quad_moment_I",
    "quad_moment_J",
    "sample_energy_profile",
    "significant_pairs",
    "solve_eigenstates",
    "state_wavefunction",
    "wigner_energy_integral",
    "wigner_grid",
    "wigner_slice",
    "wigner_value",
    "__version__",
]
