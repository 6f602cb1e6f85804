"""
Batch command-line interface.

Every command reads an optional JSON config file, applies the flags given on
the command line on top of it, validates the result and writes CSV/JSON
files to the output directory. Exit codes: 0 success, 2 configuration or
input error, 3 numerical failure.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Type, TypeVar

import numpy as np
import pandas as pd
import pydantic
from pydantic import BaseModel

from .. import __version__
from ..config import settings
from ..experiments import (
    audit_modes,
    run_ion_audit,
    run_ion_sweep,
    run_neighbor_decay,
    run_qnn,
    run_separability,
    run_spin_glass_sweep,
)
from ..hopfield import capacity_audit, hebbian_couplings
from ..models.experiments import (
    AuditSettings,
    IonChainConfig,
    IonSweepConfig,
    NeighborDecayConfig,
    NetworkAuditConfig,
    RevivalConfig,
    SeparabilityConfig,
    SpinGlassSweepConfig,
)
from ..models.ions import IonChainSpectrum
from ..models.network import CapacityReport, PatternSet
from ..models.spin import CouplingMatrix, LatticeKind
from ..utils.exceptions import ConfigurationError, SimulationError
from ..utils.logging import bind_run, get_logger
from ..utils.output import envelope, write_csv, write_json

logger = get_logger(__name__)

ConfigT = TypeVar("ConfigT", bound=BaseModel)

# argparse destination -> dotted config path
SPIN_GLASS_FLAGS = {
    "lattice": "lattice.kind",
    "dims": "lattice.dims",
    "periodic": "lattice.periodic",
    "jbar": "disorder.mean",
    "delta": "disorder.stddev",
    "seed": "disorder.master_seed",
    "antithetic": "disorder.antithetic",
    "realizations": "realizations",
    "t_max": "grid.t_max",
    "points": "grid.points",
    "field": "field",
    "pair": "pair",
}
DECAY_FLAGS = {key: path for key, path in SPIN_GLASS_FLAGS.items() if not path.startswith("lattice") and key != "pair"}
TRAP_FLAGS = {
    "n": "n_ions",
    "amplitude": "amplitude",
    "exponent": "exponent",
    "force": "force",
    "mass": "mass",
    "softening": "softening",
}
AUDIT_FLAGS = {
    "flips": "audit.flips",
    "trials": "audit.trials",
    "random_starts": "audit.random_starts",
    "seed": "audit.seed",
}
SWEEP_FLAGS = {
    "n": "n_ions",
    "exponent": "exponent",
    "softening": "softening",
    "amplitudes": "amplitudes",
    "force": "force",
    "mass": "mass",
    "target": "target",
    **AUDIT_FLAGS,
}
NN_FLAGS = {"from_ion_chain": "from_ion_chain", "patterns": "patterns", **AUDIT_FLAGS}
QNN_FLAGS = {
    **TRAP_FLAGS,
    "pair": "pair",
    "bprime": "bprime",
    "t_max": "grid.t_max",
    "points": "grid.points",
    "collapse_threshold": "collapse_threshold",
    "revival_fraction": "revival_fraction",
    "n_sweep": "n_sweep",
}


def _set_path(data: Dict[str, Any], dotted: str, value: Any) -> None:
    keys = dotted.split(".")
    node = data
    for key in keys[:-1]:
        child = node.get(key)
        if not isinstance(child, dict):
            child = {}
            node[key] = child
        node = child
    node[keys[-1]] = value


def load_config(
    model: Type[ConfigT],
    path: Optional[str],
    args: argparse.Namespace,
    flags: Dict[str, str],
) -> ConfigT:
    """
    Merge a JSON config file with command-line flags and validate it.

    Flags left unset on the command line do not touch the file's values.

    Raises:
        ConfigurationError: Unreadable file or invalid fields, listed with their dotted paths
    """
    data: Dict[str, Any] = {}
    if path:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigurationError(f"config {path} must hold a JSON object")

    for dest, dotted in flags.items():
        value = getattr(args, dest, None)
        if value is not None:
            _set_path(data, dotted, value)

    try:
        return model.model_validate(data)
    except pydantic.ValidationError as exc:
        problems = [
            f"{'.'.join(str(part) for part in error['loc']) or '<root>'}: {error['msg']}"
            for error in exc.errors()
        ]
        raise ConfigurationError("invalid configuration: " + "; ".join(problems), details={"errors": problems}) from exc


def _output_dir(args: argparse.Namespace) -> Path:
    return Path(args.output or settings.output_dir)


def cmd_spin_glass_sweep(args: argparse.Namespace) -> int:
    config = load_config(SpinGlassSweepConfig, args.config, args, SPIN_GLASS_FLAGS)
    result = run_spin_glass_sweep(config)
    out = _output_dir(args)
    write_csv(out / "spin_glass_sweep.csv", pd.DataFrame({"t": result.times, "mean_eln": result.mean, "stderr": result.stderr}))
    write_json(out / "spin_glass_sweep.json", envelope("spin-glass sweep", config, result))
    print(f"plateau {result.plateau_mean:.6g} +/- {result.plateau_stderr:.2g} (pair {result.pair}, {result.exterior_count} exterior neighbors)")
    return 0


def cmd_neighbor_decay(args: argparse.Namespace) -> int:
    config = load_config(NeighborDecayConfig, args.config, args, DECAY_FLAGS)
    result = run_neighbor_decay(config)
    table = pd.DataFrame(
        {
            "kind": [row.kind.value for row in result.rows],
            "dims": ["x".join(str(d) for d in row.dims) for row in result.rows],
            "exterior_count": [row.exterior_count for row in result.rows],
            "plateau_mean": [row.plateau_mean for row in result.rows],
            "plateau_stderr": [row.plateau_stderr for row in result.rows],
            "log_plateau": [row.log_plateau for row in result.rows],
            "residual": result.residuals,
        }
    )
    out = _output_dir(args)
    write_csv(out / "neighbor_decay.csv", table)
    write_json(out / "neighbor_decay.json", envelope("spin-glass neighbor-decay", config, result))
    print(table.to_string(index=False))
    print(f"slope {result.slope:.6g}, R^2 {result.r_squared:.4f}")
    return 0


def cmd_separability(args: argparse.Namespace) -> int:
    config = load_config(SeparabilityConfig, args.config, args, SPIN_GLASS_FLAGS)
    result = run_separability(config)
    out = _output_dir(args)
    write_csv(
        out / "separability.csv",
        pd.DataFrame(
            {
                "t": result.times,
                "min_pt_sampled": result.min_pt_sampled,
                "min_pt_exact": result.min_pt_exact,
                "eln_mean": result.eln_mean,
                "eln_stderr": result.eln_stderr,
            }
        ),
    )
    write_json(out / "separability.json", envelope("spin-glass separability", config, result))
    print(f"PPT at every time: {result.ppt_everywhere}; averaged E_LN plateau {result.plateau_mean:.6g}")
    return 0


def _spectrum_payload(spectrum: IonChainSpectrum, couplings: CouplingMatrix) -> Dict[str, Any]:
    return {
        "positions": spectrum.positions,
        "frequencies": spectrum.frequencies,
        "mode_matrix": spectrum.mode_matrix,
        "mass": spectrum.mass,
        "center_pinned": spectrum.center_pinned,
        "couplings": couplings.values,
    }


def _ion_columns(n: int) -> List[str]:
    return [f"ion_{i}" for i in range(n)]


def cmd_ion_chain_solve(args: argparse.Namespace) -> int:
    config = load_config(IonChainConfig, args.config, args, {**TRAP_FLAGS, **AUDIT_FLAGS})
    if args.audit and config.audit is None:
        config = config.model_copy(update={"audit": AuditSettings()})
    spectrum, couplings, report = run_ion_audit(config)

    out = _output_dir(args)
    modes = pd.DataFrame(spectrum.mode_matrix.T, columns=_ion_columns(spectrum.n_ions))
    modes.insert(0, "frequency", spectrum.frequencies)
    modes.insert(0, "mode", np.arange(spectrum.n_ions))
    write_csv(out / "ion_chain_modes.csv", modes)
    write_csv(out / "ion_chain_positions.csv", pd.DataFrame({"ion": np.arange(spectrum.n_ions), "position": spectrum.positions}))
    write_csv(out / "ion_chain_couplings.csv", pd.DataFrame(couplings.values, columns=_ion_columns(spectrum.n_ions)))
    results = _spectrum_payload(spectrum, couplings)
    if report is not None:
        results["audit"] = report
        _write_audit_tables(out, report)
    write_json(out / "ion_chain.json", envelope("ion-chain solve", config, results))
    print("frequencies: " + ", ".join(f"{w:.10g}" for w in spectrum.frequencies))
    return 0


def cmd_ion_chain_sweep(args: argparse.Namespace) -> int:
    config = load_config(IonSweepConfig, args.config, args, SWEEP_FLAGS)
    report = run_ion_sweep(config)
    out = _output_dir(args)
    table = pd.DataFrame(
        {
            "amplitude": [entry.amplitude for entry in report.entries],
            "status": [entry.status for entry in report.entries],
            "stable_count": [entry.stable_count for entry in report.entries],
            "stable_labels": [" ".join(entry.stable_labels) for entry in report.entries],
        }
    )
    write_csv(out / "ion_sweep.csv", table)
    write_json(out / "ion_sweep.json", envelope("ion-chain sweep", config, report))
    print(table.to_string(index=False))
    print(f"best A={report.best_amplitude}: {report.best_stable_count} stable patterns (target {report.target} met: {report.meets_target})")
    return 0


def _basin_table(report: CapacityReport) -> pd.DataFrame:
    rows = [
        {"label": entry.label, "stable": entry.stable, "flips": k, "recovery": fraction}
        for entry in report.patterns
        for k, fraction in sorted(entry.basin.items())
    ]
    return pd.DataFrame(rows, columns=["label", "stable", "flips", "recovery"])


def _write_audit_tables(out: Path, report: CapacityReport) -> None:
    write_csv(out / "basin_curves.csv", _basin_table(report))


def audit_table(report: CapacityReport) -> str:
    """Human-readable summary of a capacity audit."""
    frame = pd.DataFrame(
        {
            "label": [entry.label for entry in report.patterns],
            "stable": [entry.stable for entry in report.patterns],
            "energy": [entry.energy for entry in report.patterns],
            "recalls_itself": [entry.recalls_itself for entry in report.patterns],
            **{
                f"basin_k{k}": [entry.basin.get(k) for entry in report.patterns]
                for k in report.flips
            },
        }
    )
    summary = f"{report.stable_count} stable of {len(report.patterns)} candidates; {len(report.spurious)} spurious attractors"
    return frame.to_string(index=False) + "\n" + summary


def _read_json(path: str) -> Dict[str, Any]:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read {path}: {exc}") from exc


def load_ion_chain_bundle(path: str):
    """Spectrum and couplings from a file written by ``ion-chain solve``."""
    payload = _read_json(path)
    try:
        results = payload["results"]
        spectrum = IonChainSpectrum(
            positions=results["positions"],
            mode_matrix=results["mode_matrix"],
            frequencies=results["frequencies"],
            mass=results["mass"],
            center_pinned=results["center_pinned"],
        )
        couplings = CouplingMatrix(n=spectrum.n_ions, values=results["couplings"])
    except (KeyError, TypeError, pydantic.ValidationError) as exc:
        raise ConfigurationError(f"{path} is not an ion-chain bundle: {exc}") from exc
    return spectrum, couplings


def load_patterns(path: str) -> PatternSet:
    payload = _read_json(path)
    try:
        return PatternSet(patterns=payload["patterns"])
    except (KeyError, TypeError, pydantic.ValidationError) as exc:
        raise ConfigurationError(f"{path} does not hold a valid `patterns` matrix: {exc}") from exc


def cmd_nn_audit(args: argparse.Namespace) -> int:
    config = load_config(NetworkAuditConfig, args.config, args, NN_FLAGS)
    if config.from_ion_chain:
        spectrum, couplings = load_ion_chain_bundle(config.from_ion_chain)
        report = audit_modes(spectrum, couplings, config.audit, source=config.from_ion_chain)
    else:
        patterns = load_patterns(config.patterns)
        report = capacity_audit(
            hebbian_couplings(patterns),
            patterns,
            flips=config.audit.flips,
            trials=config.audit.trials,
            random_starts=config.audit.random_starts,
            seed=config.audit.seed,
            source=config.patterns,
        )
    out = _output_dir(args)
    _write_audit_tables(out, report)
    write_json(out / "nn_audit.json", envelope("nn audit", config, report))
    print(audit_table(report))
    return 0


def cmd_qnn_revivals(args: argparse.Namespace) -> int:
    config = load_config(RevivalConfig, args.config, args, QNN_FLAGS)
    reports = run_qnn(config)
    frames = [
        pd.DataFrame(
            {
                "n_ions": report.n_ions,
                "ion_i": report.pair[0],
                "ion_j": report.pair[1],
                "t": report.time_grid,
                "eln": report.eln_series,
            }
        )
        for report in reports
    ]
    out = _output_dir(args)
    write_csv(out / "qnn_revivals.csv", pd.concat(frames, ignore_index=True))
    write_json(out / "qnn_revivals.json", envelope("qnn revivals", config, reports))
    for report in reports:
        print(
            f"N={report.n_ions} pair={report.pair}: {len(report.detected_collapses)} collapses, "
            f"{len(report.detected_revivals)} revivals"
        )
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file; flags override its values")
    parser.add_argument("--output", help=f"Output directory (default: {settings.output_dir})")


def _add_disorder_flags(parser: argparse.ArgumentParser, lattice: bool = True) -> None:
    if lattice:
        parser.add_argument("--lattice", choices=[kind.value for kind in LatticeKind], help="Lattice geometry")
        parser.add_argument("--dims", type=int, nargs="+", help="Extent per axis")
        parser.add_argument("--periodic", action=argparse.BooleanOptionalAction, default=None, help="Periodic boundaries")
        parser.add_argument("--pair", type=int, nargs=2, help="Bonded pair (default: first edge)")
    parser.add_argument("--jbar", type=float, help="Mean coupling")
    parser.add_argument("--delta", type=float, help="Coupling standard deviation")
    parser.add_argument("--seed", type=int, help="Master seed")
    parser.add_argument("--antithetic", action=argparse.BooleanOptionalAction, default=None, help="Antithetic realization pairs")
    parser.add_argument("--realizations", type=int, help="Number of disorder realizations")
    parser.add_argument("--t-max", type=float, help="Last grid time")
    parser.add_argument("--points", type=int, help="Grid points")
    parser.add_argument("--field", type=float, help="Uniform longitudinal field h")


def _add_trap_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, help="Number of ions")
    parser.add_argument("--amplitude", type=float, help="Trap amplitude A")
    parser.add_argument("--exponent", type=float, help="Trap exponent p")
    parser.add_argument("--force", type=float, help="State-dependent force F")
    parser.add_argument("--mass", type=float, help="Ion mass m")
    parser.add_argument("--softening", type=float, help="Core radius of the softened trap")


def _add_audit_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--flips", type=int, nargs="+", help="Flip counts of the basin curves")
    parser.add_argument("--trials", type=int, help="Trials per basin point")
    parser.add_argument("--random-starts", type=int, help="Random starts for spurious attractors")
    parser.add_argument("--seed", type=int, help="Seed of schedules and trials")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dqs", description="Disordered quantum systems toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    spin_glass = groups.add_parser("spin-glass", help="Edwards-Anderson spin-glass experiments").add_subparsers(dest="command", required=True)
    sweep = spin_glass.add_parser("sweep", help="Disorder-averaged pair E_LN versus time")
    _add_common(sweep)
    _add_disorder_flags(sweep)
    sweep.set_defaults(handler=cmd_spin_glass_sweep)

    decay = spin_glass.add_parser("neighbor-decay", help="Plateau versus exterior-neighbor count")
    _add_common(decay)
    _add_disorder_flags(decay, lattice=False)
    decay.set_defaults(handler=cmd_neighbor_decay)

    separability = spin_glass.add_parser("separability", help="PPT check of the averaged pair state")
    _add_common(separability)
    _add_disorder_flags(separability)
    separability.set_defaults(handler=cmd_separability)

    ion_chain = groups.add_parser("ion-chain", help="Trapped-ion chains").add_subparsers(dest="command", required=True)
    solve = ion_chain.add_parser("solve", help="Equilibrium, modes and couplings")
    _add_common(solve)
    _add_trap_flags(solve)
    solve.add_argument("--audit", action="store_true", help="Audit the mode sign patterns")
    _add_audit_flags(solve)
    solve.set_defaults(handler=cmd_ion_chain_solve)

    trap_sweep = ion_chain.add_parser("sweep", help="Amplitude sweep with pattern audits")
    _add_common(trap_sweep)
    trap_sweep.add_argument("--n", type=int, help="Number of ions")
    trap_sweep.add_argument("--exponent", type=float, help="Trap exponent p")
    trap_sweep.add_argument("--softening", type=float, help="Core radius of the softened trap")
    trap_sweep.add_argument("--amplitudes", type=float, nargs="+", help="Amplitudes A")
    trap_sweep.add_argument("--force", type=float, help="State-dependent force F")
    trap_sweep.add_argument("--mass", type=float, help="Ion mass m")
    trap_sweep.add_argument("--target", type=int, help="Stable-pattern count to report as met")
    _add_audit_flags(trap_sweep)
    trap_sweep.set_defaults(handler=cmd_ion_chain_sweep)

    nn = groups.add_parser("nn", help="Hopfield networks").add_subparsers(dest="command", required=True)
    audit = nn.add_parser("audit", help="Capacity audit")
    _add_common(audit)
    source = audit.add_mutually_exclusive_group()
    source.add_argument("--from-ion-chain", help="ion_chain.json written by `ion-chain solve`")
    source.add_argument("--patterns", help="JSON file with a `patterns` matrix (Hebbian couplings)")
    _add_audit_flags(audit)
    audit.set_defaults(handler=cmd_nn_audit)

    qnn = groups.add_parser("qnn", help="Quantum neural-network experiments").add_subparsers(dest="command", required=True)
    revivals = qnn.add_parser("revivals", help="Pair entanglement collapses and revivals")
    _add_common(revivals)
    _add_trap_flags(revivals)
    revivals.add_argument("--pair", type=int, nargs=2, help="Ion pair (default: end pair)")
    revivals.add_argument("--bprime", type=float, help="Uniform field B'")
    revivals.add_argument("--t-max", type=float, help="Last grid time")
    revivals.add_argument("--points", type=int, help="Grid points")
    revivals.add_argument("--collapse-threshold", type=float, help="Collapse level in bits")
    revivals.add_argument("--revival-fraction", type=float, help="Revival level relative to the pre-collapse maximum")
    revivals.add_argument("--n-sweep", type=int, nargs="+", help="Extra chain lengths")
    revivals.set_defaults(handler=cmd_qnn_revivals)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and map failures to exit codes."""
    args = build_parser().parse_args(argv)
    handler: Callable[[argparse.Namespace], int] = args.handler
    bind_run(f"{args.group} {args.command}")
    try:
        return handler(args)
    except SimulationError as exc:
        logger.error("Command failed", error=exc.message, error_code=exc.error_code)
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.exit_code
