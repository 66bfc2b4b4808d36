"""Frame, potentials, spectral eigensolver, and wavefunction synthesis."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wplab import (DensityMatrix, EigenState, OscillatorFrame,
                   PolynomialPotential, SpectralBasis, build_hamiltonian,
                   build_position_matrix, density_matrix,
                   eigenfunction_table, finite_difference_spectrum,
                   oscillator_eigenfunction, solve_eigenstates,
                   state_wavefunction)

# benchmark eigenvalues of U = 2x^2 - 0.2x^3 in the unit frame, K = 40;
# stable to 7e-13 against K = 50 (see scripts/basis_convergence.py)
CUBIC_ENERGIES = (0.9965158298, 2.9772362572, 4.9378460853, 6.8773128551)


class TestFrame:
    def test_unit_frame_scales(self):
        fr = OscillatorFrame()
        assert fr.kappa == 1.0
        assert fr.pscale == 1.0
        assert fr.xbar(1.7) == 1.7
        assert fr.pbar(-0.3) == -0.3

    def test_general_frame_scales(self):
        fr = OscillatorFrame(mass=2.0, omega=3.0, hbar=0.5)
        assert fr.kappa == pytest.approx(math.sqrt(2.0 * 3.0 / 0.5))
        assert fr.pscale == pytest.approx(math.sqrt(2.0 * 0.5 * 3.0))

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            OscillatorFrame(mass=0.0)
        with pytest.raises(ValueError):
            OscillatorFrame(hbar=-1.0)


class TestPotential:
    def test_horner_matches_direct(self):
        pot = PolynomialPotential((1.0, -0.5, 2.0, -0.2))
        xs = np.linspace(-3.0, 3.0, 11)
        expect = 1.0 - 0.5 * xs + 2.0 * xs**2 - 0.2 * xs**3
        assert np.allclose(pot(xs), expect, rtol=1e-14, atol=1e-14)
        assert pot.degree == 3

    def test_harmonic_constructor(self):
        fr = OscillatorFrame(mass=2.0, omega=1.5, hbar=1.0)
        pot = PolynomialPotential.harmonic(fr)
        assert pot(1.0) == pytest.approx(0.5 * 2.0 * 1.5**2)

    def test_rejects_degenerate(self):
        with pytest.raises(ValueError):
            PolynomialPotential((1.0,))
        with pytest.raises(ValueError):
            PolynomialPotential((1.0, 2.0, 0.0))


class TestPositionMatrix:
    def test_tridiagonal_entries(self):
        fr = OscillatorFrame()
        x = build_position_matrix(SpectralBasis(size=5, frame=fr))
        assert x[0, 1] == pytest.approx(math.sqrt(0.5))
        assert x[3, 4] == pytest.approx(math.sqrt(2.0))
        assert np.allclose(x, x.T)
        assert np.count_nonzero(np.triu(x, 2)) == 0

    def test_frame_scaling(self):
        fr = OscillatorFrame(mass=4.0, omega=1.0, hbar=1.0)
        x = build_position_matrix(SpectralBasis(size=3, frame=fr))
        assert x[0, 1] == pytest.approx(math.sqrt(0.5) / 2.0)


class TestEigensolve:
    def test_harmonic_spectrum_exact(self, unit_frame, harmonic_states):
        for s, st_ in enumerate(harmonic_states):
            assert st_.energy == pytest.approx(s + 0.5, abs=1e-12)
            # eigenvectors of the harmonic Hamiltonian are basis vectors
            assert st_.dominant_index == s
            assert abs(st_.coeffs[s]) == pytest.approx(1.0, abs=1e-10)

    def test_cubic_benchmark_energies(self, cubic_states):
        for st_, expect in zip(cubic_states, CUBIC_ENERGIES):
            assert st_.energy == pytest.approx(expect, abs=5e-10)

    def test_cubic_energies_strictly_increasing(self, cubic_states):
        energies = [st_.energy for st_ in cubic_states]
        assert all(b > a for a, b in zip(energies, energies[1:]))

    def test_sign_convention(self, cubic_states):
        for st_ in cubic_states:
            assert st_.coeffs[st_.dominant_index] > 0.0

    def test_count_bounds(self, unit_frame):
        basis = SpectralBasis(size=6, frame=unit_frame)
        h = build_hamiltonian(basis, PolynomialPotential.harmonic(unit_frame))
        states = solve_eigenstates(h, count=3)
        assert len(states) == 3
        with pytest.raises(ValueError):
            solve_eigenstates(h, count=7)

    def test_basis_too_small_for_degree(self, unit_frame):
        basis = SpectralBasis(size=3, frame=unit_frame)
        with pytest.raises(ValueError):
            build_hamiltonian(basis, PolynomialPotential((0.0, 0.0, 2.0, -0.2)))

    @given(st.integers(min_value=0, max_value=2026))
    @settings(max_examples=10, deadline=None)
    def test_quartic_spectrum_deterministic(self, seed):
        # same inputs, same floating-point path, identical output
        fr = OscillatorFrame()
        pot = PolynomialPotential((0.0, 0.0, 0.5, 0.0, 0.1))
        h = build_hamiltonian(SpectralBasis(size=20, frame=fr), pot)
        a = solve_eigenstates(h, count=3)
        b = solve_eigenstates(h.copy(), count=3)
        for sa, sb in zip(a, b):
            assert sa.energy == sb.energy
            assert np.array_equal(sa.coeffs, sb.coeffs)


class TestFiniteDifferenceOracle:
    def test_harmonic_agreement(self, unit_frame):
        pot = PolynomialPotential.harmonic(unit_frame)
        evals = finite_difference_spectrum(unit_frame, pot, (-10.0, 10.0),
                                           points=6000, count=3)
        for s, e in enumerate(evals):
            # three-point-stencil discretization error ~ dx^2, growing with s
            assert e == pytest.approx(s + 0.5, abs=1e-5)

    def test_cubic_agreement(self, unit_frame, cubic_potential, cubic_states):
        # walls must stay inside the barrier: the potential is unbounded
        # below past x ~ 6.7, so a wide box fills with outer-region states
        evals = finite_difference_spectrum(unit_frame, cubic_potential,
                                           (-8.0, 6.0), points=8000, count=3)
        for st_, e in zip(cubic_states, evals):
            assert e == pytest.approx(st_.energy, abs=1e-5)

    def test_rejects_small_grids(self, unit_frame, cubic_potential):
        with pytest.raises(ValueError):
            finite_difference_spectrum(unit_frame, cubic_potential,
                                       (-8.0, 6.0), points=100, count=2)


class TestStateObjects:
    def test_eigenstate_norm_enforced(self):
        with pytest.raises(ValueError):
            EigenState(index=0, energy=1.0, coeffs=np.array([1.0, 1.0]))

    def test_eigenstate_readonly(self, cubic_states):
        with pytest.raises(ValueError):
            cubic_states[0].coeffs[0] = 2.0

    def test_density_matrix_from_state(self, cubic_states):
        rho = density_matrix(cubic_states[2])
        assert rho.size == 40
        assert float(np.trace(rho.rho)) == pytest.approx(1.0, abs=1e-12)
        # rank one: rho^2 = rho
        assert np.allclose(rho.rho @ rho.rho, rho.rho, atol=1e-12)

    def test_density_matrix_rejects_asymmetric(self):
        bad = np.array([[1.0, 0.1], [0.0, 0.0]])
        with pytest.raises(ValueError):
            DensityMatrix(bad)

    def test_density_matrix_rejects_traceless(self):
        with pytest.raises(ValueError):
            DensityMatrix(np.diag([0.5, 0.4]))


class TestWavefunctions:
    def test_ground_state_gaussian(self, unit_frame):
        xs = np.linspace(-3.0, 3.0, 61)
        psi = oscillator_eigenfunction(unit_frame, 0, xs)
        expect = math.pi ** -0.25 * np.exp(-0.5 * xs**2)
        assert np.allclose(psi, expect, rtol=1e-13, atol=1e-14)

    def test_orthonormality_by_trapezoid(self, unit_frame):
        xs = np.linspace(-10.0, 10.0, 4001)
        table = eigenfunction_table(unit_frame, 6, xs)
        gram = np.trapezoid(table[:, None, :] * table[None, :, :], xs, axis=2)
        assert np.allclose(gram, np.eye(7), atol=1e-9)

    def test_frame_rescaling_preserves_norm(self):
        fr = OscillatorFrame(mass=3.0, omega=0.7, hbar=2.0)
        xs = np.linspace(-20.0, 20.0, 8001)
        psi = oscillator_eigenfunction(fr, 3, xs)
        assert np.trapezoid(psi * psi, xs) == pytest.approx(1.0, abs=1e-9)

    def test_state_wavefunction_matches_energy(self, unit_frame, cubic_potential,
                                               cubic_states):
        # <psi|H|psi> via the sampled wavefunction reproduces the eigenvalue
        xs = np.linspace(-9.0, 6.5, 12001)
        st_ = cubic_states[1]
        psi = state_wavefunction(unit_frame, st_, xs)
        dx = xs[1] - xs[0]
        dpsi = np.gradient(psi, dx)
        kinetic = 0.5 * np.trapezoid(dpsi * dpsi, xs)
        potential_term = np.trapezoid(cubic_potential(xs) * psi * psi, xs)
        assert kinetic + potential_term == pytest.approx(st_.energy, abs=5e-4)
