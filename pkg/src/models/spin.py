"""Spin-system data models: lattices, couplings, Ising models and density matrices."""

from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator

from .arrays import ComplexArray, FloatArray
from ..utils.exceptions import DensityMatrixError, PartitionError


class LatticeKind(str, Enum):
    """Lattice geometry enumeration."""
    CHAIN1D = "chain1d"
    HONEYCOMB2D = "honeycomb2d"
    SQUARE2D = "square2d"
    CUBIC3D = "cubic3d"
    COMPLETE = "complete"
    CUSTOM = "custom"


# Coordination numbers of the periodic regular lattices
COORDINATION: Dict[LatticeKind, int] = {
    LatticeKind.CHAIN1D: 2,
    LatticeKind.HONEYCOMB2D: 3,
    LatticeKind.SQUARE2D: 4,
    LatticeKind.CUBIC3D: 6,
}


class LatticeGraph(BaseModel):
    """Undirected site graph on which an Ising model lives."""

    model_config = ConfigDict(frozen=True)

    kind: LatticeKind = Field(..., description="Lattice geometry")
    dims: Tuple[int, ...] = Field(..., description="Extent per axis (site count for complete/custom)")
    periodic: bool = Field(default=False, description="Periodic boundary conditions")
    sites: int = Field(..., ge=1, description="Number of sites N")
    edges: Tuple[Tuple[int, int], ...] = Field(default=(), description="Unordered site pairs, stored as (i, j) with i < j")

    _adjacency: Tuple[FrozenSet[int], ...] = PrivateAttr(default=())

    @field_validator("edges", mode="after")
    @classmethod
    def _canonical_edges(cls, edges: Tuple[Tuple[int, int], ...]) -> Tuple[Tuple[int, int], ...]:
        canonical = []
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at site {i}")
            canonical.append((min(i, j), max(i, j)))
        if len(set(canonical)) != len(canonical):
            raise ValueError("duplicate edges")
        return tuple(sorted(canonical))

    @model_validator(mode="after")
    def _check_endpoints(self) -> "LatticeGraph":
        for i, j in self.edges:
            if i < 0 or j >= self.sites:
                raise ValueError(f"edge ({i}, {j}) has an endpoint outside 0..{self.sites - 1}")
        return self

    def model_post_init(self, __context) -> None:
        adjacency: List[set] = [set() for _ in range(self.sites)]
        for i, j in self.edges:
            adjacency[i].add(j)
            adjacency[j].add(i)
        self._adjacency = tuple(frozenset(a) for a in adjacency)

    def neighbors(self, site: int) -> FrozenSet[int]:
        """Sites bonded to ``site``."""
        return self._adjacency[site]

    def degree(self, site: int) -> int:
        return len(self._adjacency[site])

    def has_edge(self, i: int, j: int) -> bool:
        return 0 <= i < self.sites and j in self._adjacency[i]


class DisorderSpec(BaseModel):
    """Gaussian coupling disorder J_ij ~ Normal(mean, stddev^2)."""

    model_config = ConfigDict(frozen=True)

    mean: float = Field(default=0.0, description="Mean coupling J-bar (energy units)")
    stddev: float = Field(default=1.0, ge=0.0, description="Coupling spread Delta (energy units)")
    master_seed: int = Field(default=0, ge=0, lt=2 ** 64, description="Master seed of the realization stream")
    antithetic: bool = Field(
        default=False,
        description="Pair realization 2r+1 with the mirror image 2*mean - J of realization 2r",
    )


class CouplingMatrix(BaseModel):
    """Symmetric real coupling matrix with zero diagonal."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Number of sites")
    values: FloatArray = Field(..., description="n x n symmetric coupling matrix (energy units)")

    @model_validator(mode="after")
    def _check_matrix(self) -> "CouplingMatrix":
        values = self.values
        if values.shape != (self.n, self.n):
            raise ValueError(f"values must have shape ({self.n}, {self.n}), got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("couplings must be finite")
        if not np.array_equal(values, values.T):
            raise ValueError("couplings must be exactly symmetric")
        if np.any(np.diag(values) != 0.0):
            raise ValueError("couplings must have a zero diagonal")
        return self

    @classmethod
    def from_upper(cls, matrix: np.ndarray) -> "CouplingMatrix":
        """Build from the strict upper triangle of ``matrix``; lower triangle and diagonal are ignored."""
        matrix = np.asarray(matrix, dtype=np.float64)
        upper = np.triu(matrix, k=1)
        return cls(n=matrix.shape[0], values=upper + upper.T)

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[Tuple[int, int]], weights: Iterable[float]) -> "CouplingMatrix":
        values = np.zeros((n, n))
        for (i, j), w in zip(edges, weights):
            values[i, j] = w
            values[j, i] = w
        return cls(n=n, values=values)

    @classmethod
    def zeros(cls, n: int) -> "CouplingMatrix":
        return cls(n=n, values=np.zeros((n, n)))

    def scaled(self, factor: float) -> "CouplingMatrix":
        return CouplingMatrix(n=self.n, values=self.values * factor)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values))) if self.n > 1 else 0.0


class IsingModel(BaseModel):
    """Longitudinal Ising model H = -sum_{i<j} J_ij s_i s_j - h sum_i s_i (hbar = 1)."""

    model_config = ConfigDict(frozen=True)

    couplings: CouplingMatrix = Field(..., description="Pair couplings J_ij")
    field: float = Field(default=0.0, description="Uniform longitudinal field h")

    @property
    def n(self) -> int:
        return self.couplings.n

    def energy(self, spins: Sequence[int]) -> float:
        """Classical energy of a z-basis configuration of +1/-1 values."""
        s = np.asarray(spins, dtype=np.float64)
        return float(-0.5 * s @ self.couplings.values @ s - self.field * s.sum())


class SubsetDensityMatrix(BaseModel):
    """Reduced density matrix of an ordered spin subset.

    Rows and columns are indexed by z-configurations of the subset; the first
    subset site is the most significant bit, bit 0 meaning spin +1.
    """

    model_config = ConfigDict(frozen=True)

    subset: Tuple[int, ...] = Field(..., min_length=1, description="Ordered site indices")
    entries: ComplexArray = Field(..., description="2^k x 2^k Hermitian matrix")

    @model_validator(mode="after")
    def _check_shape(self) -> "SubsetDensityMatrix":
        dim = 2 ** len(self.subset)
        if self.entries.shape != (dim, dim):
            raise ValueError(f"entries must have shape ({dim}, {dim}), got {self.entries.shape}")
        return self

    @property
    def k(self) -> int:
        return len(self.subset)

    @property
    def dim(self) -> int:
        return 2 ** len(self.subset)

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def check_invariants(self, tol: float = 1e-12, psd_tol: float = 1e-10) -> None:
        """Raise DensityMatrixError unless trace is 1, the matrix is Hermitian and PSD."""
        trace = self.trace()
        if abs(trace - 1.0) > tol:
            raise DensityMatrixError(f"trace {trace} differs from 1", details={"subset": list(self.subset)})
        asymmetry = float(np.max(np.abs(self.entries - self.entries.conj().T)))
        if asymmetry > tol:
            raise DensityMatrixError(f"matrix is not Hermitian (max deviation {asymmetry:.3e})")
        lowest = float(np.linalg.eigvalsh(self.entries)[0])
        if lowest < -psd_tol:
            raise DensityMatrixError(f"negative eigenvalue {lowest:.3e}")


class Bipartition(BaseModel):
    """Split of a density-matrix subset into two nonempty disjoint parts."""

    model_config = ConfigDict(frozen=True)

    left: Tuple[int, ...] = Field(..., min_length=1, description="Sites kept as is")
    right: Tuple[int, ...] = Field(..., min_length=1, description="Sites whose indices are transposed")

    @model_validator(mode="after")
    def _check_disjoint(self) -> "Bipartition":
        if set(self.left) & set(self.right):
            raise ValueError("left and right parts must be disjoint")
        if len(set(self.left)) != len(self.left) or len(set(self.right)) != len(self.right):
            raise ValueError("parts must not repeat sites")
        return self

    @classmethod
    def for_pair(cls, i: int, j: int) -> "Bipartition":
        return cls(left=(i,), right=(j,))

    @classmethod
    def split(cls, subset: Sequence[int], right: Sequence[int]) -> "Bipartition":
        right_set = set(right)
        return cls(left=tuple(s for s in subset if s not in right_set), right=tuple(right))

    def right_positions(self, subset: Sequence[int]) -> List[int]:
        """Positions of the right part inside ``subset``; raises PartitionError unless the cut partitions it."""
        if sorted(self.left + self.right) != sorted(subset):
            raise PartitionError(
                "bipartition does not partition the subset",
                details={"subset": list(subset), "left": list(self.left), "right": list(self.right)},
            )
        position = {site: q for q, site in enumerate(subset)}
        return sorted(position[site] for site in self.right)
