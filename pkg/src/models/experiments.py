"""Experiment configurations and result reports."""

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .network import CapacityReport
from .spin import DisorderSpec, LatticeKind

DEFAULT_AMPLITUDES = [0.1, 0.316227766016838, 1.0, 3.16227766016838, 10.0, 31.6227766016838, 100.0, 316.227766016838, 1000.0]


class TimeGrid(BaseModel):
    """Uniform grid of evolution times."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    t_min: float = Field(default=0.0, ge=0.0, description="First time")
    t_max: float = Field(default=10.0, gt=0.0, description="Last time")
    points: int = Field(default=401, ge=2, description="Number of grid points")

    @model_validator(mode="after")
    def _check_order(self) -> "TimeGrid":
        if self.t_max <= self.t_min:
            raise ValueError("t_max must exceed t_min")
        return self

    def values(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.points)


class LatticeSpec(BaseModel):
    """Serializable lattice description {kind, dims, periodic, edges}."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: LatticeKind = Field(default=LatticeKind.SQUARE2D, description="Lattice geometry")
    dims: List[int] = Field(default_factory=lambda: [4, 4], min_length=1, description="Extent per axis")
    periodic: bool = Field(default=True, description="Periodic boundary conditions")
    edges: Optional[List[Tuple[int, int]]] = Field(default=None, description="Bonds of a custom lattice")


class SpinGlassSweepConfig(BaseModel):
    """Disorder-averaged nearest-neighbor entanglement versus time."""

    model_config = ConfigDict(extra="forbid")

    lattice: LatticeSpec = Field(default_factory=LatticeSpec, description="Lattice")
    disorder: DisorderSpec = Field(default_factory=DisorderSpec, description="Coupling disorder")
    realizations: int = Field(default=2000, ge=2, description="Disorder realizations")
    grid: TimeGrid = Field(default_factory=TimeGrid, description="Time grid in units of 1/stddev")
    field: float = Field(default=0.0, description="Uniform longitudinal field h")
    pair: Optional[Tuple[int, int]] = Field(default=None, description="Bonded pair; default is the first edge")
    plateau_fraction: float = Field(default=0.25, gt=0.0, le=1.0, description="Trailing grid fraction of the plateau")


class NeighborDecayConfig(BaseModel):
    """Plateau entanglement across lattices with different exterior-neighbor counts."""

    model_config = ConfigDict(extra="forbid")

    lattices: List[LatticeSpec] = Field(
        default_factory=lambda: [
            LatticeSpec(kind=LatticeKind.CHAIN1D, dims=[8]),
            LatticeSpec(kind=LatticeKind.HONEYCOMB2D, dims=[4, 4]),
            LatticeSpec(kind=LatticeKind.SQUARE2D, dims=[4, 4]),
            LatticeSpec(kind=LatticeKind.CUBIC3D, dims=[4, 4, 4]),
        ],
        min_length=2,
        description="Lattices to compare",
    )
    disorder: DisorderSpec = Field(default_factory=DisorderSpec, description="Coupling disorder")
    realizations: int = Field(default=2000, ge=2, description="Disorder realizations per lattice")
    grid: TimeGrid = Field(default_factory=TimeGrid, description="Time grid in units of 1/stddev")
    field: float = Field(default=0.0, description="Uniform longitudinal field h")
    plateau_fraction: float = Field(default=0.25, gt=0.0, le=1.0, description="Trailing grid fraction of the plateau")


class SeparabilityConfig(BaseModel):
    """PPT check of the disorder-averaged pair state."""

    model_config = ConfigDict(extra="forbid")

    lattice: LatticeSpec = Field(default_factory=LatticeSpec, description="Lattice")
    disorder: DisorderSpec = Field(
        default_factory=lambda: DisorderSpec(antithetic=True),
        description="Coupling disorder; antithetic pairs by default",
    )
    realizations: int = Field(default=2000, ge=2, description="Disorder realizations")
    grid: TimeGrid = Field(default_factory=TimeGrid, description="Time grid in units of 1/stddev")
    field: float = Field(default=0.0, description="Uniform longitudinal field h")
    pair: Optional[Tuple[int, int]] = Field(default=None, description="Bonded pair; default is the first edge")
    plateau_fraction: float = Field(default=0.25, gt=0.0, le=1.0, description="Trailing grid fraction of the plateau")
    ppt_tolerance: float = Field(default=1e-6, gt=0.0, description="Allowed negative PT eigenvalue")


class AuditSettings(BaseModel):
    """Parameters of a capacity audit."""

    model_config = ConfigDict(extra="forbid")

    flips: List[int] = Field(default_factory=lambda: [1, 2, 3], description="Flip counts of the basin curves")
    trials: int = Field(default=50, ge=1, description="Trials per basin point")
    random_starts: int = Field(default=200, ge=0, description="Random starts for spurious attractors")
    seed: int = Field(default=0, ge=0, lt=2 ** 64, description="Seed of schedules and trials")


class IonChainConfig(BaseModel):
    """Single trap: equilibrium, modes and couplings."""

    model_config = ConfigDict(extra="forbid")

    n_ions: int = Field(default=20, ge=2, description="Number of ions")
    amplitude: float = Field(default=1.0, gt=0.0, description="Trap amplitude A")
    exponent: float = Field(default=0.5, gt=0.0, description="Trap exponent p")
    force: float = Field(default=1.0, description="State-dependent force F")
    mass: float = Field(default=1.0, gt=0.0, description="Ion mass m")
    softening: float = Field(default=0.0, ge=0.0, description="Core radius of the softened trap")
    audit: Optional[AuditSettings] = Field(default=None, description="Audit the mode patterns when set")


class IonSweepConfig(BaseModel):
    """Amplitude sweep at fixed exponent and softening, auditing every configuration."""

    model_config = ConfigDict(extra="forbid")

    n_ions: int = Field(default=20, ge=2, description="Number of ions")
    exponent: float = Field(default=0.5, gt=0.0, description="Trap exponent p")
    softening: float = Field(default=1.0, ge=0.0, description="Core radius of the softened trap")
    amplitudes: List[float] = Field(default_factory=lambda: list(DEFAULT_AMPLITUDES), min_length=1, description="Amplitudes A")
    force: float = Field(default=1.0, description="State-dependent force F")
    mass: float = Field(default=1.0, gt=0.0, description="Ion mass m")
    target: int = Field(default=4, ge=1, description="Stable-pattern count to report as met")
    audit: AuditSettings = Field(default_factory=AuditSettings, description="Audit parameters")

    @field_validator("amplitudes")
    @classmethod
    def _positive(cls, amplitudes: List[float]) -> List[float]:
        if any(a <= 0 for a in amplitudes):
            raise ValueError("amplitudes must be positive")
        return amplitudes


class NetworkAuditConfig(BaseModel):
    """Audit of couplings from an ion-chain bundle or of Hebbian couplings from a pattern file."""

    model_config = ConfigDict(extra="forbid")

    from_ion_chain: Optional[str] = Field(default=None, description="ion_chain.json written by `ion-chain solve`")
    patterns: Optional[str] = Field(default=None, description="JSON file with a `patterns` matrix of +1/-1")
    audit: AuditSettings = Field(default_factory=AuditSettings, description="Audit parameters")

    @model_validator(mode="after")
    def _one_source(self) -> "NetworkAuditConfig":
        if (self.from_ion_chain is None) == (self.patterns is None):
            raise ValueError("exactly one of from_ion_chain and patterns is required")
        return self


class RevivalConfig(BaseModel):
    """Pair entanglement of an ion-chain network versus time."""

    model_config = ConfigDict(extra="forbid")

    n_ions: int = Field(default=6, ge=2, description="Number of ions")
    amplitude: float = Field(default=0.5, gt=0.0, description="Trap amplitude A")
    exponent: float = Field(default=2.0, gt=0.0, description="Trap exponent p")
    force: float = Field(default=1.0, description="State-dependent force F")
    mass: float = Field(default=1.0, gt=0.0, description="Ion mass m")
    softening: float = Field(default=0.0, ge=0.0, description="Core radius of the softened trap")
    pair: Optional[Tuple[int, int]] = Field(default=None, description="Ion pair; default is the end pair")
    bprime: float = Field(default=0.0, description="Uniform field B'")
    grid: TimeGrid = Field(
        default_factory=lambda: TimeGrid(t_max=20.0, points=400),
        description="Time grid in units where max |J_ij| = 1",
    )
    collapse_threshold: float = Field(default=0.01, gt=0.0, description="Collapse level in bits")
    revival_fraction: float = Field(default=0.5, gt=0.0, le=1.0, description="Revival level relative to the pre-collapse maximum")
    n_sweep: List[int] = Field(default_factory=list, description="Extra chain lengths for the ion-number sweep")


class SweepResult(BaseModel):
    """Disorder-averaged E_LN series with its plateau."""

    pair: Tuple[int, int] = Field(..., description="Bonded pair")
    exterior_count: int = Field(..., description="Exterior neighbors of the pair")
    realizations: int = Field(..., description="Disorder realizations")
    times: List[float] = Field(..., description="Time grid")
    mean: List[float] = Field(..., description="Mean E_LN per time")
    stderr: List[float] = Field(..., description="Standard error per time")
    plateau_mean: float = Field(..., description="Mean over the trailing plateau window")
    plateau_stderr: float = Field(..., description="Standard error of the plateau")


class NeighborDecayRow(BaseModel):
    kind: LatticeKind
    dims: List[int]
    exterior_count: int
    plateau_mean: float
    plateau_stderr: float
    log_plateau: float


class NeighborDecayResult(BaseModel):
    """Plateau per lattice and the fit of log-plateau against the exterior-neighbor count."""

    rows: List[NeighborDecayRow] = Field(..., description="One row per lattice, in config order")
    slope: float = Field(..., description="Fitted slope of log-plateau per neighbor")
    intercept: float = Field(..., description="Fitted intercept")
    r_squared: float = Field(..., description="Coefficient of determination")
    residuals: List[float] = Field(..., description="Fit residuals per row")
    strictly_decreasing: bool = Field(..., description="Plateaus strictly decrease with the neighbor count")


class SeparabilityResult(BaseModel):
    """Sampled and exact averaged pair states against averaged entanglement."""

    pair: Tuple[int, int]
    realizations: int
    times: List[float]
    min_pt_sampled: List[float] = Field(..., description="Lowest PT eigenvalue of the Monte-Carlo averaged state")
    min_pt_exact: List[float] = Field(..., description="Lowest PT eigenvalue of the exact Gaussian average")
    eln_mean: List[float] = Field(..., description="Averaged E_LN per time")
    eln_stderr: List[float] = Field(..., description="Standard error of the averaged E_LN")
    plateau_mean: float
    plateau_stderr: float
    ppt_tolerance: float
    ppt_everywhere: bool = Field(..., description="Both averaged states are PPT at every time")


class RevivalReport(BaseModel):
    """Pair entanglement series with detected collapses and revivals."""

    n_ions: int = Field(..., description="Number of ions")
    pair: Tuple[int, int] = Field(..., description="Ion pair")
    field_bprime: float = Field(..., description="Uniform field B'")
    coupling_scale: float = Field(..., description="max |J_ij| divided out of the couplings (0 for an uncoupled chain)")
    time_grid: List[float] = Field(..., description="Times in units of 1/max |J_ij|")
    eln_series: List[float] = Field(..., description="E_LN per time")
    collapse_threshold: float = Field(..., description="Collapse level in bits")
    revival_fraction: float = Field(..., description="Revival level relative to the pre-collapse maximum")
    detected_collapses: List[Tuple[float, float]] = Field(default_factory=list, description="Collapse intervals")
    detected_revivals: List[float] = Field(default_factory=list, description="Revival times")

    @model_validator(mode="after")
    def _ordered_intervals(self) -> "RevivalReport":
        previous_end = None
        for start, end in self.detected_collapses:
            if end < start or (previous_end is not None and start <= previous_end):
                raise ValueError("collapse intervals must be ordered and disjoint")
            previous_end = end
        return self


class IonSweepEntry(BaseModel):
    amplitude: float
    status: str = Field(..., description="ok, not-a-minimum, no-convergence or ill-conditioned")
    message: Optional[str] = None
    stable_count: int = 0
    lowest_frequencies: List[float] = Field(default_factory=list)
    stable_labels: List[str] = Field(default_factory=list)


class IonSweepReport(BaseModel):
    """Best trap of an amplitude sweep."""

    entries: List[IonSweepEntry]
    best_amplitude: Optional[float] = None
    best_stable_count: int = 0
    target: int
    meets_target: bool
    best_audit: Optional[CapacityReport] = None
