"""
Pair entanglement in the ion-chain neural network: collapses and revivals.

Couplings come from the chain's normal modes and are divided by their
largest magnitude, so times are in units of 1/max |J_ij|.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..dynamics import adapt_nn_hamiltonian, subset_rdm_series
from ..entanglement import log_negativity_series
from ..ions import equilibrium_positions, mode_couplings, normal_modes
from ..models.experiments import RevivalConfig, RevivalReport
from ..models.ions import TrapSpec
from ..models.spin import CouplingMatrix
from ..utils.exceptions import ValidationError
from ..utils.logging import get_logger

logger = get_logger(__name__)

DEFAULT_COLLAPSE_THRESHOLD = 0.01
DEFAULT_REVIVAL_FRACTION = 0.5
MIN_COLLAPSE_POINTS = 3


def default_time_grid() -> np.ndarray:
    return np.linspace(0.0, 20.0, 400)


def chain_couplings(trap: TrapSpec) -> CouplingMatrix:
    """Mode-mediated couplings of the trapped chain."""
    spectrum = normal_modes(trap, equilibrium_positions(trap))
    return mode_couplings(spectrum, trap.force, trap.mass)


def detect_revivals(
    series: Sequence[float],
    collapse_threshold: float = DEFAULT_COLLAPSE_THRESHOLD,
    revival_fraction: float = DEFAULT_REVIVAL_FRACTION,
) -> Tuple[List[Tuple[int, int]], List[int]]:
    """
    Find collapses and revivals in an entanglement series.

    A collapse is a maximal run of at least 3 points below
    ``collapse_threshold``. Its revival is the first later point reaching
    ``revival_fraction`` times the maximum attained before the collapse; a
    collapse with no entanglement before it has no revival.

    Returns:
        Tuple: Collapse index intervals (first, last) and revival indices, both ascending
    """
    values = np.asarray(series, dtype=np.float64)
    if values.size == 0:
        raise ValidationError("series must not be empty")
    if collapse_threshold <= 0 or not 0 < revival_fraction <= 1:
        raise ValidationError("need collapse_threshold > 0 and 0 < revival_fraction <= 1")

    below = values < collapse_threshold
    collapses: List[Tuple[int, int]] = []
    revivals: List[int] = []
    i = 0
    while i < values.size:
        if not below[i]:
            i += 1
            continue
        end = i
        while end < values.size and below[end]:
            end += 1
        if end - i >= MIN_COLLAPSE_POINTS:
            collapses.append((i, end - 1))
            reference = float(values[:i].max()) if i > 0 else 0.0
            if reference >= collapse_threshold:
                later = np.flatnonzero(values[end:] >= revival_fraction * reference)
                if later.size and (not revivals or revivals[-1] != end + int(later[0])):
                    revivals.append(end + int(later[0]))
        i = end
    return collapses, revivals


def pair_entanglement_series(
    trap: TrapSpec,
    pair: Tuple[int, int],
    field_bprime: float = 0.0,
    time_grid: Optional[Sequence[float]] = None,
    collapse_threshold: float = DEFAULT_COLLAPSE_THRESHOLD,
    revival_fraction: float = DEFAULT_REVIVAL_FRACTION,
) -> RevivalReport:
    """
    E_LN(t) of an ion pair under the chain's long-range Ising couplings.

    Args:
        trap: Trap and chain parameters
        pair: Distinct ion indices
        field_bprime: Uniform field B'
        time_grid: Times in units of 1/max |J_ij| (default 400 points on [0, 20])
        collapse_threshold: Collapse level in bits
        revival_fraction: Revival level relative to the pre-collapse maximum

    Returns:
        RevivalReport: Series and detected collapses and revivals

    Raises:
        ValidationError: Pair indices repeated or outside the chain
        NumericalError: Solver or conditioning failures of the chain
    """
    i, j = pair
    if i == j or not (0 <= i < trap.n_ions and 0 <= j < trap.n_ions):
        raise ValidationError(f"invalid ion pair ({i}, {j}) for {trap.n_ions} ions")
    times = default_time_grid() if time_grid is None else np.asarray(time_grid, dtype=np.float64)

    couplings = chain_couplings(trap)
    scale = couplings.max_abs()
    if scale > 0.0:
        model = adapt_nn_hamiltonian(couplings.scaled(1.0 / scale), field_bprime / scale)
    else:
        # F = 0 leaves the chain uncoupled; times stay unscaled
        logger.warning("Chain has no couplings, pair entanglement stays zero", n_ions=trap.n_ions, force=trap.force)
        model = adapt_nn_hamiltonian(couplings, field_bprime)
    series = log_negativity_series(subset_rdm_series(model, (i, j), times), 2, [1])
    collapses, revivals = detect_revivals(series, collapse_threshold, revival_fraction)
    logger.info(
        "Pair entanglement series",
        n_ions=trap.n_ions,
        pair=[i, j],
        collapses=len(collapses),
        revivals=len(revivals),
    )
    return RevivalReport(
        n_ions=trap.n_ions,
        pair=(i, j),
        field_bprime=field_bprime,
        coupling_scale=scale,
        time_grid=times.tolist(),
        eln_series=series.tolist(),
        collapse_threshold=collapse_threshold,
        revival_fraction=revival_fraction,
        detected_collapses=[(float(times[a]), float(times[b])) for a, b in collapses],
        detected_revivals=[float(times[r]) for r in revivals],
    )


def trap_for(config: RevivalConfig, n_ions: int) -> TrapSpec:
    return TrapSpec(
        n_ions=n_ions,
        amplitude=config.amplitude,
        exponent=config.exponent,
        force=config.force,
        mass=config.mass,
        softening=config.softening,
    )


def run_qnn(config: RevivalConfig) -> List[RevivalReport]:
    """
    Revival analysis for the configured chain, then for every length in ``n_sweep``.

    Without an explicit pair the end pair (0, N-1) of each chain is used.
    """
    reports = []
    for n_ions in [config.n_ions] + [n for n in config.n_sweep if n != config.n_ions]:
        pair = config.pair if config.pair is not None else (0, n_ions - 1)
        reports.append(
            pair_entanglement_series(
                trap_for(config, n_ions),
                pair,
                config.bprime,
                config.grid.values(),
                config.collapse_threshold,
                config.revival_fraction,
            )
        )
    return reports
