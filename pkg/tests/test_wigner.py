"""Phase-space kernel, grid evaluation, and negativity detection."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wplab import (NegativityInterval, OscillatorFrame, PhasePoint,
                   default_negativity_tol, density_matrix, kernel_w,
                   kernel_w_reference, negativity_intervals, wigner_grid,
                   wigner_slice, wigner_value)
from wplab.specfun import laguerre

coord = st.floats(min_value=-3.5, max_value=3.5)


class TestKernel:
    def test_ground_diagonal_gaussian(self, unit_frame):
        pt = PhasePoint(0.7, -0.4)
        expect = math.exp(-(0.7**2 + 0.4**2)) / math.pi
        assert kernel_w(unit_frame, 0, 0, pt).real == pytest.approx(expect, rel=1e-14)
        assert kernel_w(unit_frame, 0, 0, pt).imag == 0.0

    def test_diagonal_laguerre_closed_form(self, unit_frame):
        # w_{n,n} = (-1)^n/(pi hbar) e^{-|z|^2} L_n(2 |z|^2)
        for n in range(6):
            for x, p in ((0.3, 0.1), (1.2, -0.8), (-0.5, 1.7)):
                u = x * x + p * p
                expect = (-1.0) ** n / math.pi * math.exp(-u) * laguerre(n, 0, 2.0 * u)
                got = kernel_w(unit_frame, n, n, PhasePoint(x, p))
                assert got.real == pytest.approx(expect, rel=1e-12, abs=1e-15)
                assert abs(got.imag) < 1e-15

    @given(n=st.integers(0, 10), k=st.integers(0, 10), x=coord, p=coord)
    @settings(max_examples=150, deadline=None)
    def test_two_forms_agree(self, unit_frame, n, k, x, p):
        pt = PhasePoint(x, p)
        a = kernel_w(unit_frame, n, k, pt)
        b = kernel_w_reference(unit_frame, n, k, pt)
        assert abs(a - b) <= 1e-10 * max(1e-6, abs(b))

    @given(n=st.integers(0, 8), k=st.integers(0, 8), x=coord, p=coord)
    @settings(max_examples=80, deadline=None)
    def test_hermiticity(self, unit_frame, n, k, x, p):
        pt = PhasePoint(x, p)
        a = kernel_w(unit_frame, n, k, pt)
        b = kernel_w(unit_frame, k, n, pt)
        assert a == pytest.approx(b.conjugate(), rel=1e-12, abs=1e-16)

    def test_frame_dependence(self):
        # the kernel is a function of the dimensionless coordinates only,
        # times the 1/hbar normalization
        fr1 = OscillatorFrame()
        fr2 = OscillatorFrame(mass=2.0, omega=0.5, hbar=2.0)
        pt1 = PhasePoint(0.9, -0.6)
        x2 = 0.9 / fr2.kappa
        p2 = -0.6 * fr2.pscale
        a = kernel_w(fr1, 3, 1, pt1)
        b = kernel_w(fr2, 3, 1, PhasePoint(x2, p2))
        assert b == pytest.approx(a / 2.0, rel=1e-12)

    def test_orthogonality_integral(self, unit_frame):
        xs = np.linspace(-8.0, 8.0, 401)
        ps = np.linspace(-8.0, 8.0, 401)
        xg = xs[:, None]
        pg = ps[None, :]
        for n, k in ((0, 0), (1, 1), (0, 1), (2, 0), (3, 3), (4, 2)):
            vals = np.empty((len(xs), len(ps)), dtype=complex)
            for i, x in enumerate(xs):
                for j, p in enumerate(ps):
                    vals[i, j] = kernel_w_reference(unit_frame, n, k, PhasePoint(x, p))
            integral = np.trapezoid(np.trapezoid(vals, ps, axis=1), xs)
            assert abs(integral - (1.0 if n == k else 0.0)) < 1e-6


class TestWignerValue:
    def test_matches_explicit_rho_contraction(self, unit_frame, cubic_states):
        rho = density_matrix(cubic_states[2])
        r = rho.rho
        pt = PhasePoint(0.8, -0.9)
        total = 0.0 + 0.0j
        for n in range(r.shape[0]):
            for k in range(r.shape[0]):
                if r[k, n] != 0.0:
                    total += r[k, n] * kernel_w(unit_frame, n, k, pt)
        got = wigner_value(unit_frame, rho, pt)
        assert abs(total.imag) < 1e-14
        assert got == pytest.approx(total.real, rel=1e-11)

    def test_accepts_plain_arrays(self, unit_frame):
        rho = np.zeros((3, 3))
        rho[1, 1] = 1.0
        pt = PhasePoint(0.4, 0.2)
        u = 0.4**2 + 0.2**2
        expect = -1.0 / math.pi * math.exp(-u) * laguerre(1, 0, 2.0 * u)
        assert wigner_value(unit_frame, rho, pt) == pytest.approx(expect, rel=1e-12)

    def test_bounded_by_global_limit(self, unit_frame, cubic_states):
        bound = 1.0 / math.pi + 1e-12
        for st_ in cubic_states:
            rho = density_matrix(st_)
            for x in (-1.0, 0.0, 0.7, 2.2):
                for p in (-1.5, 0.0, 1.1):
                    assert abs(wigner_value(unit_frame, rho, PhasePoint(x, p))) <= bound


class TestGridAndSlices:
    def test_grid_matches_pointwise(self, unit_frame, cubic_states):
        rho = density_matrix(cubic_states[1])
        xs = np.linspace(-1.0, 2.0, 7)
        ps = np.linspace(-1.5, 1.5, 5)
        field = wigner_grid(unit_frame, rho, xs, ps)
        for i, x in enumerate(xs):
            for j, p in enumerate(ps):
                expect = wigner_value(unit_frame, rho, PhasePoint(float(x), float(p)))
                assert field.values[i, j] == pytest.approx(expect, rel=1e-11, abs=1e-14)

    def test_normalization(self, unit_frame, cubic_states):
        xs = np.linspace(-5.0, 7.0, 301)
        ps = np.linspace(-6.0, 6.0, 301)
        for st_ in cubic_states[:2]:
            field = wigner_grid(unit_frame, density_matrix(st_), xs, ps)
            assert field.integral() == pytest.approx(1.0, abs=1e-5)

    def test_slice_matches_grid_row(self, unit_frame, cubic_states):
        rho = density_matrix(cubic_states[3])
        coords = np.linspace(-2.0, 3.0, 41)
        xslice = wigner_slice(unit_frame, rho, "x", coords)
        pslice = wigner_slice(unit_frame, rho, "p", coords)
        for i, c in enumerate(coords):
            assert xslice[i] == pytest.approx(
                wigner_value(unit_frame, rho, PhasePoint(float(c), 0.0)), rel=1e-11, abs=1e-14)
            assert pslice[i] == pytest.approx(
                wigner_value(unit_frame, rho, PhasePoint(0.0, float(c))), rel=1e-11, abs=1e-14)

    def test_harmonic_ground_state_positive(self, unit_frame, harmonic_states):
        field = wigner_grid(unit_frame, density_matrix(harmonic_states[0]),
                            np.linspace(-4.0, 4.0, 101), np.linspace(-4.0, 4.0, 101))
        assert field.min_value() > 0.0
        assert field.negative_cell_count(default_negativity_tol(unit_frame)) == 0


class TestNegativityIntervals:
    def test_synthetic_dip(self):
        xs = np.linspace(-1.0, 1.0, 2001)
        vals = xs**2 - 0.25  # negative on (-0.5, 0.5)
        ivs = negativity_intervals("x", xs, vals, tol=1e-12)
        assert len(ivs) == 1
        assert ivs[0].lo == pytest.approx(-0.5, abs=1e-6)
        assert ivs[0].hi == pytest.approx(0.5, abs=1e-6)
        assert ivs[0].min_value == pytest.approx(-0.25, abs=1e-9)
        assert ivs[0].contains(0.0)
        assert not ivs[0].contains(0.6)

    def test_two_dips_and_tol_behavior(self):
        xs = np.linspace(0.0, 4.0, 4001)
        vals = -np.sin(np.pi * xs) * 0.1  # negative on (0,1) and (2,3)
        ivs = negativity_intervals("x", xs, vals, tol=1e-9)
        assert len(ivs) == 2
        assert ivs[0].lo == pytest.approx(0.0, abs=1e-3)
        assert ivs[0].hi == pytest.approx(1.0, abs=1e-5)
        assert ivs[1].lo == pytest.approx(2.0, abs=1e-5)
        # a tolerance above the dip depth suppresses detection entirely
        assert negativity_intervals("x", xs, vals, tol=0.2) == []

    def test_edge_clamping(self):
        xs = np.linspace(0.0, 1.0, 501)
        vals = -np.ones_like(xs) * 0.3  # negative everywhere
        ivs = negativity_intervals("x", xs, vals, tol=1e-9)
        assert len(ivs) == 1
        assert ivs[0].lo == xs[0]
        assert ivs[0].hi == xs[-1]

    def test_all_positive_empty(self):
        xs = np.linspace(0.0, 1.0, 101)
        assert negativity_intervals("x", xs, np.ones_like(xs), tol=1e-9) == []

    def test_harmonic_excited_state_negativity(self, unit_frame, harmonic_states):
        # state 1 is negative exactly where L_1(2 eps) > 0: |z| < 1/sqrt(2)
        coords = np.linspace(-4.0, 4.0, 4001)
        vals = wigner_slice(unit_frame, density_matrix(harmonic_states[1]), "x", coords)
        ivs = negativity_intervals("x", coords, vals, default_negativity_tol(unit_frame))
        assert len(ivs) == 1
        r = 1.0 / math.sqrt(2.0)
        assert ivs[0].lo == pytest.approx(-r, abs=1e-3)
        assert ivs[0].hi == pytest.approx(r, abs=1e-3)

    def test_cubic_excited_states_have_deep_negativity(self, unit_frame, cubic_states):
        tol = default_negativity_tol(unit_frame)
        for s in (1, 2, 3):
            coords = np.linspace(-3.0, 5.0, 2001)
            vals = wigner_slice(unit_frame, density_matrix(cubic_states[s]), "x", coords)
            ivs = negativity_intervals("x", coords, vals, tol)
            deep = [iv for iv in ivs if abs(iv.min_value) > 0.05 / math.pi]
            assert len(deep) == s
