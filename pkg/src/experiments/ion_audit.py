"""Ion chains as Hopfield networks: mode-pattern capacity audits and trap sweeps."""

from typing import Optional, Tuple

from ..hopfield import capacity_audit
from ..ions import equilibrium_positions, mode_couplings, mode_patterns, normal_modes
from ..models.experiments import AuditSettings, IonChainConfig, IonSweepConfig, IonSweepEntry, IonSweepReport
from ..models.ions import IonChainSpectrum, TrapSpec
from ..models.network import CapacityReport
from ..models.spin import CouplingMatrix
from ..utils.exceptions import ConvergenceError, IllConditionedError, NotAMinimumError
from ..utils.logging import get_logger

logger = get_logger(__name__)


def trap_from_config(config: IonChainConfig) -> TrapSpec:
    return TrapSpec(
        n_ions=config.n_ions,
        amplitude=config.amplitude,
        exponent=config.exponent,
        force=config.force,
        mass=config.mass,
        softening=config.softening,
    )


def solve_chain(trap: TrapSpec) -> Tuple[IonChainSpectrum, CouplingMatrix]:
    """Equilibrium, normal modes and mode-mediated couplings of one trap."""
    spectrum = normal_modes(trap, equilibrium_positions(trap))
    return spectrum, mode_couplings(spectrum, trap.force, trap.mass)


def audit_modes(
    spectrum: IonChainSpectrum,
    couplings: CouplingMatrix,
    audit: AuditSettings,
    source: Optional[str] = None,
) -> CapacityReport:
    """Capacity audit of the mode sign patterns, labelled mode-<n> from the lowest frequency up."""
    patterns = mode_patterns(spectrum)
    return capacity_audit(
        couplings,
        patterns,
        flips=audit.flips,
        trials=audit.trials,
        random_starts=audit.random_starts,
        seed=audit.seed,
        labels=[f"mode-{n}" for n in range(patterns.p)],
        source=source,
    )


def run_ion_audit(config: IonChainConfig) -> Tuple[IonChainSpectrum, CouplingMatrix, Optional[CapacityReport]]:
    """Solve the configured chain and, when audit settings are given, audit its mode patterns."""
    trap = trap_from_config(config)
    spectrum, couplings = solve_chain(trap)
    report = None
    if config.audit is not None:
        report = audit_modes(spectrum, couplings, config.audit, source=f"ion-chain A={config.amplitude}")
    return spectrum, couplings, report


def run_ion_sweep(config: IonSweepConfig) -> IonSweepReport:
    """
    Solve and audit the chain for every amplitude of the sweep.

    Traps without a stable equilibrium are recorded with their failure
    status. The best trap is the one with most stable patterns, the
    earliest amplitude winning ties.
    """
    entries = []
    best: Optional[Tuple[float, CapacityReport]] = None
    for amplitude in config.amplitudes:
        trap = TrapSpec(
            n_ions=config.n_ions,
            amplitude=amplitude,
            exponent=config.exponent,
            force=config.force,
            mass=config.mass,
            softening=config.softening,
        )
        try:
            spectrum, couplings = solve_chain(trap)
        except NotAMinimumError as exc:
            entries.append(IonSweepEntry(amplitude=amplitude, status="not-a-minimum", message=exc.message))
            continue
        except ConvergenceError as exc:
            entries.append(IonSweepEntry(amplitude=amplitude, status="no-convergence", message=exc.message))
            continue
        except IllConditionedError as exc:
            entries.append(IonSweepEntry(amplitude=amplitude, status="ill-conditioned", message=exc.message))
            continue

        report = audit_modes(spectrum, couplings, config.audit, source=f"ion-chain A={amplitude}")
        entries.append(
            IonSweepEntry(
                amplitude=amplitude,
                status="ok",
                stable_count=report.stable_count,
                lowest_frequencies=spectrum.frequencies[:3].tolist(),
                stable_labels=[entry.label for entry in report.stable_patterns()],
            )
        )
        logger.info("Trap audited", amplitude=amplitude, stable=report.stable_count)
        if best is None or report.stable_count > best[1].stable_count:
            best = (amplitude, report)

    best_count = best[1].stable_count if best else 0
    return IonSweepReport(
        entries=entries,
        best_amplitude=best[0] if best else None,
        best_stable_count=best_count,
        target=config.target,
        meets_target=best_count >= config.target,
        best_audit=best[1] if best else None,
    )
