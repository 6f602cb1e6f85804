"""Neural-network data models: patterns, states and audit reports."""

from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .arrays import SpinArray


class PatternSet(BaseModel):
    """p x N matrix of +1/-1 patterns."""

    model_config = ConfigDict(frozen=True)

    patterns: SpinArray = Field(..., description="Patterns as rows, entries +1 or -1")

    @model_validator(mode="after")
    def _check_shape(self) -> "PatternSet":
        if self.patterns.ndim != 2 or self.patterns.shape[0] < 1:
            raise ValueError("patterns must be a non-empty 2-D array")
        return self

    @property
    def p(self) -> int:
        return int(self.patterns.shape[0])

    @property
    def n(self) -> int:
        return int(self.patterns.shape[1])

    def state(self, index: int) -> "NetworkState":
        return NetworkState(spins=self.patterns[index])

    def states(self) -> List["NetworkState"]:
        return [self.state(mu) for mu in range(self.p)]


class NetworkState(BaseModel):
    """Configuration of N Ising neurons."""

    model_config = ConfigDict(frozen=True)

    spins: SpinArray = Field(..., description="Spins, entries +1 or -1")

    @model_validator(mode="after")
    def _check_shape(self) -> "NetworkState":
        if self.spins.ndim != 1:
            raise ValueError("spins must be a 1-D array")
        return self

    @property
    def n(self) -> int:
        return int(self.spins.shape[0])

    def reversed(self) -> "NetworkState":
        """Globally flipped state."""
        return NetworkState(spins=-self.spins)

    def key(self) -> str:
        """Compact +/- string used to tally attractors."""
        return "".join("+" if s > 0 else "-" for s in self.spins)

    def same_as(self, other: "NetworkState") -> bool:
        return bool(np.array_equal(self.spins, other.spins))


class RecallResult(BaseModel):
    """Outcome of zero-temperature recall dynamics."""

    fixed_point: NetworkState = Field(..., description="Final state")
    sweeps: int = Field(..., ge=1, description="Sweeps performed, including the final quiet sweep")
    trajectory_energies: List[float] = Field(..., description="Energy at start and after every accepted flip")


class PatternAudit(BaseModel):
    """Audit of one candidate pattern."""

    label: str = Field(..., description="Candidate label (e.g. mode-2 or mode-2-reverse)")
    pattern: NetworkState = Field(..., description="Candidate pattern")
    stable: bool = Field(..., description="Every spin strictly aligned with its local field")
    zero_field_sites: List[int] = Field(default_factory=list, description="Sites with zero local field")
    energy: float = Field(..., description="Energy of the pattern")
    basin: Dict[int, float] = Field(default_factory=dict, description="Recovery fraction per number of flipped spins")
    recalls_itself: bool = Field(..., description="Recall started at the pattern returns it unchanged")


class SpuriousAttractor(BaseModel):
    """Attractor reached from random starts that is not a candidate or its reverse."""

    state: NetworkState = Field(..., description="Attractor")
    hits: int = Field(..., ge=1, description="Random starts ending here")
    energy: float = Field(..., description="Energy of the attractor")


class CapacityReport(BaseModel):
    """Result of a capacity audit."""

    n: int = Field(..., description="Network size")
    patterns: List[PatternAudit] = Field(default_factory=list, description="Per-candidate audit, reverses included")
    stable_count: int = Field(..., description="Stable candidates, reverses counted separately")
    spurious: List[SpuriousAttractor] = Field(default_factory=list, description="Spurious attractors found")
    random_starts: int = Field(..., description="Random starts sampled for spurious states")
    flips: List[int] = Field(..., description="Flip counts of the basin curves")
    trials: int = Field(..., description="Trials per basin point")
    seed: int = Field(..., description="Seed of schedules and trials")
    label: Optional[str] = Field(None, description="Free-form label of the coupling source")

    def stable_patterns(self) -> List[PatternAudit]:
        return [entry for entry in self.patterns if entry.stable]
