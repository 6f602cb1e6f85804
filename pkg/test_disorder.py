#!/usr/bin/env python3
"""
Tests for coupling disorder and the disorder-average harness.

This script tests:
1. Deterministic, counter-based coupling realizations
2. Distribution of sampled couplings
3. Antithetic realization pairs
4. Mean and standard error of disorder averages, sequential and threaded
5. Propagation of estimator failures with the realization index
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.disorder import disorder_average, edge_deviates, sample_couplings, summarize
from src.lattice import build_lattice
from src.models.spin import DisorderSpec, LatticeKind
from src.utils.exceptions import EstimatorError, NumericalError, ValidationError


@pytest.fixture
def square():
    return build_lattice(LatticeKind.SQUARE2D, [4, 4], periodic=True)


def test_zero_spread_gives_mean_exactly(square):
    couplings = sample_couplings(square, DisorderSpec(mean=1.0, stddev=0.0, master_seed=3), 7)
    for i, j in square.edges:
        assert couplings.values[i, j] == 1.0
    assert np.count_nonzero(couplings.values) == 2 * len(square.edges)


def test_same_index_is_bit_identical(square):
    spec = DisorderSpec(mean=0.3, stddev=1.2, master_seed=42)
    first = sample_couplings(square, spec, 11)
    second = sample_couplings(square, spec, 11)
    assert np.array_equal(first.values, second.values)


def test_realizations_do_not_depend_on_order(square):
    spec = DisorderSpec(master_seed=5)
    forward = [sample_couplings(square, spec, i).values for i in range(4)]
    backward = [sample_couplings(square, spec, i).values for i in reversed(range(4))][::-1]
    for a, b in zip(forward, backward):
        assert np.array_equal(a, b)


def test_index_and_seed_change_the_stream(square):
    spec = DisorderSpec(master_seed=1)
    base = sample_couplings(square, spec, 0).values
    assert not np.array_equal(base, sample_couplings(square, spec, 1).values)
    assert not np.array_equal(base, sample_couplings(square, DisorderSpec(master_seed=2), 0).values)


def test_couplings_live_on_edges_only(square):
    couplings = sample_couplings(square, DisorderSpec(master_seed=9), 0)
    mask = np.zeros_like(couplings.values, dtype=bool)
    for i, j in square.edges:
        mask[i, j] = mask[j, i] = True
    assert np.all(couplings.values[~mask] == 0.0)
    assert np.array_equal(couplings.values, couplings.values.T)


def test_single_edge_distribution():
    """10^5 draws of one edge: mean within 4 sigma/sqrt(n), variance within 5%."""
    graph = build_lattice(LatticeKind.CHAIN1D, [2], periodic=False)
    spec = DisorderSpec(mean=0.0, stddev=1.0, master_seed=2024)
    count = 100_000
    draws = np.array([sample_couplings(graph, spec, i).values[0, 1] for i in range(count)])
    assert abs(draws.mean()) < 4.0 / math.sqrt(count)
    assert abs(draws.var(ddof=1) - 1.0) < 0.05


def test_antithetic_pairs_mirror_the_mean(square):
    spec = DisorderSpec(mean=0.5, stddev=2.0, master_seed=8, antithetic=True)
    even = sample_couplings(square, spec, 6).values
    odd = sample_couplings(square, spec, 7).values
    for i, j in square.edges:
        assert odd[i, j] == pytest.approx(2 * 0.5 - even[i, j], abs=1e-14)
    assert np.array_equal(edge_deviates(spec, 7, 5), -edge_deviates(spec, 6, 5))


def test_negative_index_rejected(square):
    with pytest.raises(ValidationError):
        sample_couplings(square, DisorderSpec(), -1)


def test_constant_estimator():
    mean, stderr = disorder_average(lambda index: 0.5, 100)
    assert mean == 0.5
    assert stderr == 0.0


def test_alternating_estimator():
    """+1/-1 by parity: mean 0, stderr sqrt(1000/999)/sqrt(1000)."""
    mean, stderr = disorder_average(lambda index: 1.0 if index % 2 == 0 else -1.0, 1000)
    assert mean == 0.0
    assert stderr == pytest.approx(math.sqrt(1000 / 999) / math.sqrt(1000), rel=1e-12)
    assert stderr == pytest.approx(0.0316, abs=1e-4)


def test_threaded_average_matches_sequential(square):
    spec = DisorderSpec(master_seed=77)

    def estimator(index):
        return float(np.sum(sample_couplings(square, spec, index).values ** 2))

    sequential = disorder_average(estimator, 64, workers=1)
    threaded = disorder_average(estimator, 64, workers=4)
    assert abs(sequential[0] - threaded[0]) <= 1e-12
    assert sequential[1] == pytest.approx(threaded[1], abs=1e-12)


def test_array_estimates_are_averaged_pointwise():
    mean, stderr = disorder_average(lambda index: np.array([index, 2.0 * index]), 5)
    np.testing.assert_allclose(mean, [2.0, 4.0])
    np.testing.assert_allclose(stderr, [math.sqrt(2.5 / 5), math.sqrt(10.0 / 5)])


def test_failure_carries_index():
    def estimator(index):
        if index == 13:
            raise NumericalError("boom")
        return 1.0

    with pytest.raises(EstimatorError) as info:
        disorder_average(estimator, 20)
    assert info.value.index == 13
    assert info.value.exit_code == 3


def test_count_below_two_rejected():
    with pytest.raises(ValidationError):
        disorder_average(lambda index: 1.0, 1)


def test_summarize_needs_two_values():
    with pytest.raises(ValidationError):
        summarize(np.array([1.0]))
