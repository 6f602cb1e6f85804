"""Capacity audit of a coupling matrix against candidate memories."""

from collections import Counter
from typing import Dict, List, Optional, Sequence

from ..models.network import CapacityReport, NetworkState, PatternAudit, PatternSet, SpuriousAttractor
from ..models.spin import CouplingMatrix
from ..utils.exceptions import ValidationError
from ..utils.logging import get_logger
from ..utils.streams import substream
from .network import basin_estimate, energy, recall, stability_check, zero_field_sites

logger = get_logger(__name__)

DEFAULT_FLIPS = (1, 2, 3)
DEFAULT_TRIALS = 50
DEFAULT_RANDOM_STARTS = 200


def _candidates_with_reverses(candidates: PatternSet, labels: Sequence[str]) -> List[tuple]:
    """Distinct candidates followed by their global flips, each state once."""
    seen: Dict[str, str] = {}
    ordered = []
    for label, state in zip(labels, candidates.states()):
        if state.key() in seen:
            continue
        seen[state.key()] = label
        ordered.append((label, state))
    for label, state in list(ordered):
        reverse = state.reversed()
        if reverse.key() not in seen:
            seen[reverse.key()] = f"{label}-reverse"
            ordered.append((f"{label}-reverse", reverse))
    return ordered


def capacity_audit(
    couplings: CouplingMatrix,
    candidates: PatternSet,
    flips: Sequence[int] = DEFAULT_FLIPS,
    trials: int = DEFAULT_TRIALS,
    random_starts: int = DEFAULT_RANDOM_STARTS,
    seed: int = 0,
    labels: Optional[Sequence[str]] = None,
    source: Optional[str] = None,
) -> CapacityReport:
    """
    Audit which candidates, and which global flips of them, the network stores.

    Args:
        couplings: Network couplings
        candidates: Candidate memories
        flips: Flip counts of the basin curves (counts above N are skipped)
        trials: Trials per basin point
        random_starts: Random initial states used to look for spurious attractors
        seed: Seed of every schedule and trial
        labels: Candidate labels, default ``pattern-<index>``
        source: Free-form label of the coupling source

    Returns:
        CapacityReport: Per-candidate stability, basins and spurious attractors
    """
    if candidates.n != couplings.n:
        raise ValidationError(f"candidates have {candidates.n} spins but the network has {couplings.n}")
    labels = list(labels) if labels is not None else [f"pattern-{mu}" for mu in range(candidates.p)]
    if len(labels) != candidates.p:
        raise ValidationError(f"{len(labels)} labels for {candidates.p} candidates")
    flips = [k for k in flips if 0 <= k <= couplings.n]

    audits = []
    for label, state in _candidates_with_reverses(candidates, labels):
        stable = stability_check(couplings, state)
        audits.append(
            PatternAudit(
                label=label,
                pattern=state,
                stable=stable,
                zero_field_sites=zero_field_sites(couplings, state),
                energy=energy(couplings, state),
                basin={k: basin_estimate(couplings, state, k, trials, seed) for k in flips},
                recalls_itself=recall(couplings, state, seed).fixed_point.same_as(state),
            )
        )

    known = {entry.pattern.key() for entry in audits}
    hits: Counter = Counter()
    attractors: Dict[str, NetworkState] = {}
    for r in range(random_starts):
        rng = substream(seed, "random-start", r)
        start = NetworkState(spins=rng.choice([-1, 1], size=couplings.n))
        fixed = recall(couplings, start, int(rng.integers(2 ** 63))).fixed_point
        if fixed.key() not in known:
            hits[fixed.key()] += 1
            attractors[fixed.key()] = fixed

    spurious = [
        SpuriousAttractor(state=attractors[key], hits=count, energy=energy(couplings, attractors[key]))
        for key, count in sorted(hits.items(), key=lambda item: (-item[1], item[0]))
    ]
    stable_count = sum(entry.stable for entry in audits)
    logger.info(
        "Capacity audit finished",
        n=couplings.n,
        candidates=len(audits),
        stable=stable_count,
        spurious=len(spurious),
    )
    return CapacityReport(
        n=couplings.n,
        patterns=audits,
        stable_count=stable_count,
        spurious=spurious,
        random_starts=random_starts,
        flips=flips,
        trials=trials,
        seed=seed,
        label=source,
    )
