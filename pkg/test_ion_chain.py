#!/usr/bin/env python3
"""
Tests for trapped-ion chain equilibria, normal modes and mode couplings.

This script tests:
1. Analytic harmonic equilibria and mode frequencies
2. Symmetry, completeness and local minimality of the solutions
3. Mode-mediated couplings against the inverse Hessian
4. Mode sign patterns
5. Saddles, pinned centers and ill-conditioned spectra
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.ions import (
    equilibrium_positions,
    gradient,
    hessian,
    mode_couplings,
    mode_patterns,
    normal_modes,
    potential,
    trap_terms,
)
from src.models.ions import IonChainSpectrum, TrapSpec
from src.utils.exceptions import IllConditionedError, NotAMinimumError, ValidationError


def harmonic(n, amplitude=0.5, **kwargs):
    return TrapSpec(n_ions=n, amplitude=amplitude, exponent=2.0, **kwargs)


def solved(trap):
    return normal_modes(trap, equilibrium_positions(trap))


def test_two_ions_in_harmonic_trap():
    """V = x^2/2: ions at +-2^(-2/3), omega^2 = {1, 3}."""
    x = equilibrium_positions(harmonic(2))
    np.testing.assert_allclose(x, [-(2 ** (-2 / 3)), 2 ** (-2 / 3)], atol=1e-10)
    spectrum = normal_modes(harmonic(2), x)
    np.testing.assert_allclose(spectrum.frequencies ** 2, [1.0, 3.0], atol=1e-10)


def test_three_ions_in_harmonic_trap():
    x = equilibrium_positions(harmonic(3))
    np.testing.assert_allclose(x, [-(1.25 ** (1 / 3)), 0.0, 1.25 ** (1 / 3)], atol=1e-10)
    assert x[1] == 0.0


@pytest.mark.parametrize("n", range(2, 11))
def test_harmonic_breathing_to_center_of_mass_ratio(n):
    spectrum = solved(harmonic(n))
    assert spectrum.frequencies[0] == pytest.approx(1.0, abs=1e-8)
    assert spectrum.frequencies[1] / spectrum.frequencies[0] == pytest.approx(math.sqrt(3), abs=1e-8)


def test_center_of_mass_frequency_follows_mass():
    spectrum = solved(harmonic(4, amplitude=2.0, mass=4.0))
    assert spectrum.frequencies[0] == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize(
    "trap",
    [
        harmonic(7),
        TrapSpec(n_ions=6, amplitude=0.3, exponent=4.0),
        TrapSpec(n_ions=8, amplitude=100.0, exponent=0.5, softening=1.0),
        TrapSpec(n_ions=5, amplitude=2.0, exponent=1.5, softening=0.5),
    ],
)
def test_equilibrium_properties(trap):
    x = equilibrium_positions(trap)
    assert np.all(np.diff(x) > 0)
    np.testing.assert_allclose(x, -x[::-1], atol=1e-12)
    assert np.max(np.abs(gradient(trap, x))) <= 1e-10


def test_equilibrium_is_a_local_minimum():
    trap = TrapSpec(n_ions=6, amplitude=0.8, exponent=3.0)
    x = equilibrium_positions(trap)
    base = potential(trap, x)
    rng = np.random.default_rng(0)
    for _ in range(50):
        assert potential(trap, x + 1e-4 * rng.normal(size=6)) > base


def test_frequencies_complete_the_trace():
    trap = TrapSpec(n_ions=9, amplitude=1.0, exponent=2.5, mass=2.0)
    spectrum = solved(trap)
    assert np.sum(spectrum.frequencies ** 2) == pytest.approx(np.trace(hessian(trap, spectrum.positions)) / 2.0, rel=1e-10)
    np.testing.assert_allclose(spectrum.mode_matrix.T @ spectrum.mode_matrix, np.eye(9), atol=1e-10)


def test_softened_trap_derivatives():
    trap = TrapSpec(n_ions=2, amplitude=1.3, exponent=0.5, softening=0.7)
    x = np.array([-1.1, 0.0, 0.4, 2.0])
    value, first, second = trap_terms(trap, x)
    step = 1e-6
    up, down = trap_terms(trap, x + step)[0], trap_terms(trap, x - step)[0]
    np.testing.assert_allclose(first, (up - down) / (2 * step), atol=1e-7)
    assert value[1] == 0.0
    assert first[1] == 0.0
    assert second[1] > 0.0


def test_hessian_matches_finite_differences():
    trap = TrapSpec(n_ions=5, amplitude=0.6, exponent=3.0)
    x = np.array([-2.0, -0.9, 0.1, 1.0, 2.3])
    step = 1e-6
    numeric = np.column_stack(
        [(gradient(trap, x + step * e) - gradient(trap, x - step * e)) / (2 * step) for e in np.eye(5)]
    )
    np.testing.assert_allclose(hessian(trap, x), numeric, atol=1e-6)


@pytest.mark.parametrize("seed", range(5))
def test_couplings_are_the_scaled_inverse_hessian(seed):
    rng = np.random.default_rng(seed)
    trap = TrapSpec(
        n_ions=int(rng.choice([4, 6, 8])),
        amplitude=float(rng.uniform(0.2, 3.0)),
        exponent=float(rng.choice([1.5, 2.0, 3.0])),
        force=float(rng.uniform(0.5, 2.0)),
    )
    spectrum = solved(trap)
    couplings = mode_couplings(spectrum, trap.force, trap.mass)
    expected = trap.force ** 2 * np.linalg.inv(hessian(trap, spectrum.positions))
    off = ~np.eye(trap.n_ions, dtype=bool)
    np.testing.assert_allclose(couplings.values[off], expected[off], rtol=1e-8, atol=1e-14)
    assert np.all(np.diag(couplings.values) == 0.0)
    assert np.array_equal(couplings.values, couplings.values.T)


def test_couplings_scale_with_force_squared():
    spectrum = solved(harmonic(5))
    base = mode_couplings(spectrum, 1.0, 1.0).values
    np.testing.assert_allclose(mode_couplings(spectrum, 2.0, 1.0).values, 4.0 * base, rtol=1e-14)


@pytest.mark.parametrize(
    "trap",
    [
        harmonic(7),
        TrapSpec(n_ions=6, amplitude=0.3, exponent=4.0),
        TrapSpec(n_ions=8, amplitude=100.0, exponent=0.5, softening=1.0),
    ],
)
def test_couplings_are_mirror_symmetric(trap):
    values = mode_couplings(solved(trap), 1.0, 1.0).values
    np.testing.assert_allclose(values, values[::-1, ::-1], atol=1e-8)


def test_harmonic_mode_patterns():
    patterns = mode_patterns(solved(harmonic(6))).patterns
    np.testing.assert_array_equal(patterns[0], np.ones(6))
    assert patterns[1][0] == 1
    np.testing.assert_array_equal(patterns[1], -patterns[1][::-1])


def test_largest_component_is_positive():
    spectrum = solved(TrapSpec(n_ions=7, amplitude=1.0, exponent=3.0))
    for column in spectrum.mode_matrix.T:
        lead = int(np.argmax(np.abs(column) >= np.abs(column).max() * (1 - 1e-9)))
        assert column[lead] > 0


def test_pure_sub_linear_trap_has_a_saddle():
    """Two ions in A|x|^0.5: the center-of-mass curvature is negative."""
    with pytest.raises(NotAMinimumError) as info:
        equilibrium_positions(TrapSpec(n_ions=2, amplitude=1.0, exponent=0.5))
    assert info.value.exit_code == 3


def test_pinned_center_flag():
    assert TrapSpec(n_ions=5, amplitude=1.0, exponent=0.5).pins_center
    assert not TrapSpec(n_ions=4, amplitude=1.0, exponent=0.5).pins_center
    assert not TrapSpec(n_ions=5, amplitude=1.0, exponent=0.5, softening=0.2).pins_center
    assert not TrapSpec(n_ions=5, amplitude=1.0, exponent=2.0).pins_center


def test_non_equilibrium_positions_rejected():
    with pytest.raises(ValidationError):
        normal_modes(harmonic(3), np.array([-1.0, 0.0, 1.0]))


def test_soft_mode_is_ill_conditioned():
    spectrum = IonChainSpectrum(
        positions=np.array([-1.0, 1.0]),
        mode_matrix=np.eye(2),
        frequencies=np.array([1e-9, 1.0]),
    )
    with pytest.raises(IllConditionedError):
        mode_couplings(spectrum, 1.0, 1.0)
