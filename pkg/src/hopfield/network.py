"""
Hopfield network primitives.

Energy convention: E(s) = -1/2 sum_{i != j} J_ij s_i s_j, no external field.
Recall is zero-temperature asynchronous dynamics; a flip of spin i changes
the energy by 2 s_i h_i with h = J s, which is negative for every accepted flip.
"""

from typing import List

import numpy as np

from ..models.network import NetworkState, PatternSet, RecallResult
from ..models.spin import CouplingMatrix
from ..utils.exceptions import RecallError, ValidationError
from ..utils.logging import get_logger
from ..utils.streams import substream

logger = get_logger(__name__)

DEFAULT_MAX_SWEEPS = 1000


def _check_size(couplings: CouplingMatrix, state: NetworkState) -> None:
    if state.n != couplings.n:
        raise ValidationError(f"state has {state.n} spins but the network has {couplings.n}")


def hebbian_couplings(patterns: PatternSet) -> CouplingMatrix:
    """J = xi^T xi / N with the diagonal set to zero."""
    xi = patterns.patterns.astype(np.float64)
    values = xi.T @ xi / patterns.n
    np.fill_diagonal(values, 0.0)
    return CouplingMatrix(n=patterns.n, values=values)


def energy(couplings: CouplingMatrix, state: NetworkState) -> float:
    _check_size(couplings, state)
    s = state.spins.astype(np.float64)
    return float(-0.5 * s @ couplings.values @ s)


def local_fields(couplings: CouplingMatrix, state: NetworkState) -> np.ndarray:
    _check_size(couplings, state)
    return couplings.values @ state.spins.astype(np.float64)


def zero_field_sites(couplings: CouplingMatrix, state: NetworkState) -> List[int]:
    return [int(i) for i in np.flatnonzero(local_fields(couplings, state) == 0.0)]


def stability_check(couplings: CouplingMatrix, pattern: NetworkState) -> bool:
    """True iff every spin is strictly aligned with its local field."""
    margins = pattern.spins * local_fields(couplings, pattern)
    zeros = np.flatnonzero(margins == 0.0)
    if zeros.size:
        logger.debug("Zero local field", sites=zeros.tolist())
    return bool(np.all(margins > 0.0))


def recall(
    couplings: CouplingMatrix,
    start: NetworkState,
    schedule_seed: int,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
) -> RecallResult:
    """
    Asynchronous zero-temperature dynamics until a fixed point.

    Each sweep visits every spin once in a random order drawn from
    ``schedule_seed`` and aligns it with its local field; a zero field keeps
    the spin. Stops after the first sweep without a flip.

    Args:
        couplings: Network couplings
        start: Initial state
        schedule_seed: Seed of the visiting orders
        max_sweeps: Sweep budget

    Returns:
        RecallResult: Fixed point, sweeps used and the energy after each flip

    Raises:
        RecallError: If the budget runs out or a flip fails to lower the energy
    """
    _check_size(couplings, start)
    rng = substream(schedule_seed, "recall")
    values = couplings.values
    s = start.spins.astype(np.float64)
    current = energy(couplings, start)
    energies = [current]

    for sweep in range(1, max_sweeps + 1):
        flipped = False
        for i in rng.permutation(s.shape[0]):
            h = float(values[i] @ s)
            if h == 0.0 or (h > 0.0) == (s[i] > 0.0):
                continue
            delta = 2.0 * s[i] * h
            if not delta < 0.0:
                raise RecallError(f"flip of spin {i} would not lower the energy (delta {delta})")
            s[i] = -s[i]
            current += delta
            energies.append(current)
            flipped = True
        if not flipped:
            return RecallResult(
                fixed_point=NetworkState(spins=s.astype(np.int64)),
                sweeps=sweep,
                trajectory_energies=energies,
            )

    raise RecallError(
        f"no fixed point within {max_sweeps} sweeps",
        details={"max_sweeps": max_sweeps, "flips": len(energies) - 1},
    )


def basin_estimate(couplings: CouplingMatrix, pattern: NetworkState, flips: int, trials: int, seed: int) -> float:
    """
    Fraction of trials in which recall returns exactly to ``pattern``.

    Each trial flips ``flips`` distinct spins chosen uniformly and recalls
    with its own schedule. Trial r uses the substream (seed, flips, r).

    Raises:
        ValidationError: If ``flips`` is outside 0..N or ``trials`` < 1
    """
    _check_size(couplings, pattern)
    if not 0 <= flips <= pattern.n:
        raise ValidationError(f"cannot flip {flips} of {pattern.n} spins")
    if trials < 1:
        raise ValidationError(f"need at least one trial, got {trials}")
    if flips == 0:
        return 1.0

    recovered = 0
    for trial in range(trials):
        rng = substream(seed, "basin", flips, trial)
        start = pattern.spins.copy()
        start[rng.choice(pattern.n, size=flips, replace=False)] *= -1
        result = recall(couplings, NetworkState(spins=start), int(rng.integers(2 ** 63)))
        recovered += result.fixed_point.same_as(pattern)
    return recovered / trials
