"""Shared fixtures and the acceptance-summary terminal hook."""

import numpy as np
import pytest

from wplab import (OscillatorFrame, PolynomialPotential, SpectralBasis,
                   build_hamiltonian, solve_eigenstates)

# populated by tests/test_acceptance.py; printed after the run so each
# criterion gets one visible pass/fail line regardless of output capture
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def unit_frame() -> OscillatorFrame:
    return OscillatorFrame(mass=1.0, omega=1.0, hbar=1.0)


@pytest.fixture(scope="session")
def cubic_potential() -> PolynomialPotential:
    return PolynomialPotential((0.0, 0.0, 2.0, -0.2))


@pytest.fixture(scope="session")
def cubic_states(unit_frame, cubic_potential):
    """The default benchmark system solved once per test session."""
    basis = SpectralBasis(size=40, frame=unit_frame)
    h = build_hamiltonian(basis, cubic_potential)
    return solve_eigenstates(h, count=4)


@pytest.fixture(scope="session")
def harmonic_states(unit_frame):
    potential = PolynomialPotential.harmonic(unit_frame)
    basis = SpectralBasis(size=24, frame=unit_frame)
    return solve_eigenstates(build_hamiltonian(basis, potential), count=7)
