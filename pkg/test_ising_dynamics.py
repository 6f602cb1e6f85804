#!/usr/bin/env python3
"""
Tests for Ising quench dynamics of spin subsets.

This script tests:
1. Closed-form subset density matrices against the state-vector partial trace
2. Analytic two-spin states
3. Locality, diagonal invariance and the field as a local unitary
4. The neural-network Hamiltonian adapter
5. Size guards and subset validation
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.dynamics import (
    adapt_nn_hamiltonian,
    spin_configurations,
    subset_rdm_closed_form,
    subset_rdm_series,
    subset_rdm_statevector,
)
from src.entanglement import log_negativity
from src.hopfield import energy as network_energy
from src.hopfield import hebbian_couplings
from src.models.network import PatternSet
from src.models.spin import Bipartition, CouplingMatrix, IsingModel
from src.utils.exceptions import CapacityError, SubsetError


def random_model(rng, n, density=0.7, field_scale=1.0):
    """Random long-range couplings with some missing bonds and a random field."""
    upper = np.triu(rng.normal(size=(n, n)) * (rng.random((n, n)) < density), k=1)
    return IsingModel(couplings=CouplingMatrix.from_upper(upper), field=float(field_scale * rng.normal()))


def pair_model(j, h=0.0):
    return IsingModel(couplings=CouplingMatrix.from_upper(np.array([[0.0, j], [0.0, 0.0]])), field=h)


def chain_model(n, j=1.0, h=0.0):
    upper = np.zeros((n, n))
    for i in range(n - 1):
        upper[i, i + 1] = j
    return IsingModel(couplings=CouplingMatrix.from_upper(upper), field=h)


def test_configuration_ordering():
    """First site is the most significant bit; bit 0 means +1."""
    np.testing.assert_array_equal(spin_configurations(2), [[1, 1], [1, -1], [-1, 1], [-1, -1]])


def test_initial_state_is_uniform():
    rng = np.random.default_rng(0)
    rdm = subset_rdm_closed_form(random_model(rng, 6), (1, 4, 2), 0.0)
    np.testing.assert_allclose(rdm.entries, np.full((8, 8), 1 / 8), atol=1e-15)


def test_closed_form_matches_statevector_random_instances():
    """200 random models with N <= 10, k in {2, 3} and t in [0, 10]."""
    rng = np.random.default_rng(20240601)
    for _ in range(200):
        n = int(rng.integers(3, 11))
        model = random_model(rng, n)
        k = int(rng.integers(2, 4))
        subset = tuple(int(s) for s in rng.choice(n, size=k, replace=False))
        t = float(rng.uniform(0.0, 10.0))

        closed = subset_rdm_closed_form(model, subset, t)
        oracle = subset_rdm_statevector(model, subset, t)
        np.testing.assert_allclose(closed.entries, oracle.entries, rtol=0, atol=1e-10)
        closed.check_invariants()
        oracle.check_invariants()

        cut = Bipartition.split(subset, subset[1:])
        assert abs(log_negativity(closed, cut) - log_negativity(oracle, cut)) <= 1e-10


def test_three_site_chain_pair_matches_statevector():
    model = chain_model(3)
    closed = subset_rdm_closed_form(model, (0, 1), math.pi / 4)
    oracle = subset_rdm_statevector(model, (0, 1), math.pi / 4)
    np.testing.assert_allclose(closed.entries, oracle.entries, atol=1e-12)


def test_isolated_pair_is_maximally_entangled_at_quarter_period():
    j = 0.8
    rdm = subset_rdm_closed_form(pair_model(j), (0, 1), math.pi / (4 * j))
    eigenvalues = np.linalg.eigvalsh(rdm.entries)
    np.testing.assert_allclose(eigenvalues, [0, 0, 0, 1], atol=1e-12)
    assert log_negativity(rdm, Bipartition.for_pair(0, 1)) == pytest.approx(1.0, abs=1e-12)


def test_isolated_pair_log_negativity_at_eighth_period():
    """Pure pair state: E_LN = log2(1 + C) with concurrence C = sin(2Jt)."""
    rdm = subset_rdm_closed_form(pair_model(1.0), (0, 1), math.pi / 8)
    oracle = subset_rdm_statevector(pair_model(1.0), (0, 1), math.pi / 8)
    expected = math.log2(1 + math.sqrt(2) / 2)
    cut = Bipartition.for_pair(0, 1)
    assert log_negativity(rdm, cut) == pytest.approx(expected, abs=1e-10)
    assert log_negativity(oracle, cut) == pytest.approx(expected, abs=1e-10)


def test_single_spin_keeps_full_coherence():
    model = IsingModel(couplings=CouplingMatrix.zeros(1), field=0.9)
    rdm = subset_rdm_statevector(model, (0,), 2.3)
    assert abs(rdm.entries[0, 1]) == pytest.approx(0.5, abs=1e-14)
    assert rdm.trace() == pytest.approx(1.0)


def test_zero_couplings_leave_a_product_state():
    model = IsingModel(couplings=CouplingMatrix.zeros(5), field=0.4)
    rdm = subset_rdm_statevector(model, (0, 3), 1.7)
    assert log_negativity(rdm, Bipartition.for_pair(0, 3)) == 0.0
    np.testing.assert_allclose(np.abs(rdm.entries), np.full((4, 4), 0.25), atol=1e-14)


def test_couplings_beyond_the_neighborhood_do_not_matter():
    """Pair (2, 3) of an open chain only feels sites 1 and 4."""
    model = chain_model(8, j=0.7)
    values = model.couplings.values.copy()
    values[5, 6] = values[6, 5] = -3.0
    values[0, 7] = values[7, 0] = 2.5
    values[1, 5] = values[5, 1] = 1.1
    altered = IsingModel(couplings=CouplingMatrix(n=8, values=values))
    for t in (0.3, 1.9, 7.4):
        np.testing.assert_array_equal(
            subset_rdm_closed_form(model, (2, 3), t).entries,
            subset_rdm_closed_form(altered, (2, 3), t).entries,
        )


def test_diagonal_is_constant_in_time():
    rng = np.random.default_rng(3)
    model = random_model(rng, 9)
    series = subset_rdm_series(model, (0, 5, 7), np.linspace(0, 25, 11))
    for rdm in series:
        np.testing.assert_array_equal(np.diag(rdm).real, np.full(8, 1 / 8))


def test_field_is_a_local_diagonal_unitary():
    rng = np.random.default_rng(4)
    model = random_model(rng, 7, field_scale=0.0)
    with_field = IsingModel(couplings=model.couplings, field=1.3)
    subset, t = (2, 6), 2.1
    bare = subset_rdm_closed_form(model, subset, t).entries
    shifted = subset_rdm_closed_form(with_field, subset, t).entries
    phases = np.exp(1j * t * 1.3 * spin_configurations(2).sum(axis=1))
    unitary = np.diag(phases)
    np.testing.assert_allclose(shifted, unitary @ bare @ unitary.conj().T, atol=1e-12)


def test_large_times_stay_valid():
    rng = np.random.default_rng(5)
    model = random_model(rng, 12)
    for t in (250.0, 1e3, 1e4):
        subset_rdm_closed_form(model, (0, 1, 2), t).check_invariants()


def test_adapter_keeps_couplings_and_flips_field():
    couplings = CouplingMatrix.from_upper(np.array([[0.0, 0.35], [0.0, 0.0]]))
    model = adapt_nn_hamiltonian(couplings, 0.7)
    assert model.couplings.values[0, 1] == 0.35
    assert model.field == -0.7


def test_adapter_energy_matches_hopfield_energy():
    pattern = PatternSet(patterns=[[1, -1, -1, 1, 1, -1]])
    couplings = hebbian_couplings(pattern)
    model = adapt_nn_hamiltonian(couplings, 0.0)
    state = pattern.state(0)
    assert model.energy(state.spins) == pytest.approx(network_energy(couplings, state), abs=1e-14)
    assert model.energy(state.spins) == pytest.approx(-(6 - 1) / 2, abs=1e-14)


def test_statevector_capacity_guard():
    with pytest.raises(CapacityError) as info:
        subset_rdm_statevector(IsingModel(couplings=CouplingMatrix.zeros(15)), (0, 1), 1.0)
    assert info.value.limit == 14


def test_closed_form_subset_guard():
    model = IsingModel(couplings=CouplingMatrix.zeros(13))
    with pytest.raises(CapacityError):
        subset_rdm_closed_form(model, tuple(range(13)), 1.0)


@pytest.mark.parametrize("subset", [(0, 0), (), (0, 9)])
def test_invalid_subsets_rejected(subset):
    with pytest.raises(SubsetError):
        subset_rdm_closed_form(chain_model(4), subset, 1.0)
