"""
Spin-glass experiments on lattices with Gaussian bond disorder.

Every realization evolves the all-|+> state under its own couplings; the
nearest-neighbor pair entanglement is averaged over realizations.
"""

import math
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.stats import linregress

from ..disorder import evaluate_realizations, sample_couplings, summarize
from ..dynamics import gaussian_averaged_series, subset_rdm_series
from ..entanglement import log_negativity_series, min_pt_eigenvalue_series
from ..lattice import build_lattice, exterior_neighbors
from ..models.experiments import (
    LatticeSpec,
    NeighborDecayConfig,
    NeighborDecayResult,
    NeighborDecayRow,
    SeparabilityConfig,
    SeparabilityResult,
    SpinGlassSweepConfig,
    SweepResult,
)
from ..models.spin import DisorderSpec, IsingModel, LatticeGraph
from ..utils.exceptions import ConfigurationError, LatticeError
from ..utils.logging import get_logger

logger = get_logger(__name__)


def graph_from_spec(spec: LatticeSpec) -> LatticeGraph:
    try:
        return build_lattice(spec.kind, spec.dims, spec.periodic, spec.edges)
    except LatticeError as exc:
        raise ConfigurationError(f"lattice: {exc.message}", details=exc.details) from exc


def select_pair(graph: LatticeGraph, pair: Optional[Tuple[int, int]]) -> Tuple[int, int]:
    """The requested bonded pair, or the first edge of the lattice."""
    if pair is None:
        if not graph.edges:
            raise ConfigurationError("lattice has no edges")
        return graph.edges[0]
    if not graph.has_edge(*pair):
        raise ConfigurationError(f"pair: ({pair[0]}, {pair[1]}) is not an edge of the lattice")
    return int(pair[0]), int(pair[1])


def plateau_window(points: int, fraction: float) -> slice:
    """Trailing ``fraction`` of a grid of ``points`` times."""
    return slice(points - max(1, int(math.ceil(fraction * points))), points)


def pair_eln_estimator(
    graph: LatticeGraph,
    disorder: DisorderSpec,
    pair: Tuple[int, int],
    times: np.ndarray,
    field: float = 0.0,
) -> Callable[[int], np.ndarray]:
    """Estimator mapping a realization index to its E_LN series for ``pair``."""

    def estimate(index: int) -> np.ndarray:
        model = IsingModel(couplings=sample_couplings(graph, disorder, index), field=field)
        return log_negativity_series(subset_rdm_series(model, pair, times), 2, [1])

    return estimate


def _averaged_series(
    lattice: LatticeSpec,
    disorder: DisorderSpec,
    realizations: int,
    times: np.ndarray,
    field: float,
    pair: Optional[Tuple[int, int]],
    plateau_fraction: float,
) -> SweepResult:
    graph = graph_from_spec(lattice)
    pair = select_pair(graph, pair)
    series = evaluate_realizations(pair_eln_estimator(graph, disorder, pair, times, field), realizations)
    mean, stderr = summarize(series)
    plateau_mean, plateau_stderr = summarize(series[:, plateau_window(len(times), plateau_fraction)].mean(axis=1))
    return SweepResult(
        pair=pair,
        exterior_count=len(exterior_neighbors(graph, pair)),
        realizations=realizations,
        times=times.tolist(),
        mean=mean.tolist(),
        stderr=stderr.tolist(),
        plateau_mean=plateau_mean,
        plateau_stderr=plateau_stderr,
    )


def run_spin_glass_sweep(config: SpinGlassSweepConfig) -> SweepResult:
    """
    Disorder-averaged nearest-neighbor E_LN over the configured time grid.

    The plateau is the mean over the trailing ``plateau_fraction`` of the
    grid, taken per realization before averaging.
    """
    logger.info(
        "Starting spin-glass sweep",
        kind=config.lattice.kind.value,
        dims=config.lattice.dims,
        mean=config.disorder.mean,
        stddev=config.disorder.stddev,
        realizations=config.realizations,
    )
    result = _averaged_series(
        config.lattice,
        config.disorder,
        config.realizations,
        config.grid.values(),
        config.field,
        config.pair,
        config.plateau_fraction,
    )
    logger.info("Sweep finished", plateau=result.plateau_mean, stderr=result.plateau_stderr)
    return result


def run_neighbor_decay(config: NeighborDecayConfig) -> NeighborDecayResult:
    """Plateau per lattice and a linear fit of log-plateau against the exterior-neighbor count."""
    times = config.grid.values()
    rows = []
    for lattice in config.lattices:
        result = _averaged_series(
            lattice,
            config.disorder,
            config.realizations,
            times,
            config.field,
            None,
            config.plateau_fraction,
        )
        if result.plateau_mean <= 0.0:
            raise ConfigurationError(
                f"plateau of {lattice.kind.value} is zero; the grid does not reach the entangled regime"
            )
        rows.append(
            NeighborDecayRow(
                kind=lattice.kind,
                dims=lattice.dims,
                exterior_count=result.exterior_count,
                plateau_mean=result.plateau_mean,
                plateau_stderr=result.plateau_stderr,
                log_plateau=math.log(result.plateau_mean),
            )
        )
        logger.info("Lattice plateau", kind=lattice.kind.value, neighbors=result.exterior_count, plateau=result.plateau_mean)

    counts = np.array([row.exterior_count for row in rows], dtype=np.float64)
    logs = np.array([row.log_plateau for row in rows])
    fit = linregress(counts, logs)
    ordered = sorted(rows, key=lambda row: row.exterior_count)
    return NeighborDecayResult(
        rows=rows,
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=float(fit.rvalue ** 2),
        residuals=(logs - (fit.intercept + fit.slope * counts)).tolist(),
        strictly_decreasing=all(a.plateau_mean > b.plateau_mean for a, b in zip(ordered, ordered[1:])),
    )


def run_separability(config: SeparabilityConfig) -> SeparabilityResult:
    """
    PPT check of the disorder-averaged pair state next to the averaged E_LN.

    Reports the lowest partial-transpose eigenvalue of both the Monte-Carlo
    average and the exact Gaussian average at every grid time.
    """
    graph = graph_from_spec(config.lattice)
    pair = select_pair(graph, config.pair)
    times = config.grid.values()

    def pair_states(index: int) -> np.ndarray:
        model = IsingModel(couplings=sample_couplings(graph, config.disorder, index), field=config.field)
        return subset_rdm_series(model, pair, times)

    total = np.zeros((len(times), 4, 4), dtype=np.complex128)
    eln = np.empty((config.realizations, len(times)))
    for index in range(config.realizations):
        states = pair_states(index)
        total += states
        eln[index] = log_negativity_series(states, 2, [1])
    sampled = total / config.realizations
    exact = gaussian_averaged_series(graph, config.disorder, pair, times, config.field)

    min_sampled = min_pt_eigenvalue_series(sampled, 2, [1])
    min_exact = min_pt_eigenvalue_series(exact, 2, [1])
    eln_mean, eln_stderr = summarize(eln)
    plateau_mean, plateau_stderr = summarize(eln[:, plateau_window(len(times), config.plateau_fraction)].mean(axis=1))
    ppt = bool(min(min_sampled.min(), min_exact.min()) >= -config.ppt_tolerance)
    logger.info(
        "Separability check finished",
        min_pt_sampled=float(min_sampled.min()),
        min_pt_exact=float(min_exact.min()),
        plateau=plateau_mean,
        ppt=ppt,
    )
    return SeparabilityResult(
        pair=pair,
        realizations=config.realizations,
        times=times.tolist(),
        min_pt_sampled=min_sampled.tolist(),
        min_pt_exact=min_exact.tolist(),
        eln_mean=eln_mean.tolist(),
        eln_stderr=eln_stderr.tolist(),
        plateau_mean=plateau_mean,
        plateau_stderr=plateau_stderr,
        ppt_tolerance=config.ppt_tolerance,
        ppt_everywhere=ppt,
    )
