"""Abstract lattice builder interface and builder registry."""

from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Sequence, Tuple

from ..models.spin import LatticeGraph, LatticeKind
from ..utils.exceptions import LatticeError

Edge = Tuple[int, int]


class BaseLatticeBuilder(ABC):
    """Abstract base class for all lattice geometries."""

    kind: LatticeKind
    axes: Optional[int] = None

    def validate(self, dims: Sequence[int], periodic: bool) -> None:
        """
        Check extents before building.

        Args:
            dims: Extent per axis
            periodic: Periodic boundary conditions requested

        Raises:
            LatticeError: On a wrong number of axes or extents below 2
        """
        if self.axes is not None and len(dims) != self.axes:
            raise LatticeError(
                f"{self.kind.value} expects {self.axes} extent(s), got {len(dims)}",
                details={"dims": list(dims)},
            )
        if any(d < 2 for d in dims):
            raise LatticeError(f"every extent must be at least 2, got {list(dims)}", details={"dims": list(dims)})

    @abstractmethod
    def site_count(self, dims: Sequence[int]) -> int:
        """
        Number of sites for the given extents.

        Returns:
            int: Site count N
        """
        pass

    @abstractmethod
    def edges(self, dims: Sequence[int], periodic: bool) -> List[Edge]:
        """
        Nearest-neighbor bonds.

        Args:
            dims: Extent per axis
            periodic: Wrap bonds across the boundary

        Returns:
            List[Edge]: Bonds as (i, j) site pairs
        """
        pass

    def build(self, dims: Sequence[int], periodic: bool) -> LatticeGraph:
        """Validate extents and assemble the graph."""
        self.validate(dims, periodic)
        return LatticeGraph(
            kind=self.kind,
            dims=tuple(dims),
            periodic=periodic,
            sites=self.site_count(dims),
            edges=tuple(sorted(set(self.edges(dims, periodic)))),
        )


class LatticeFactory:
    """Factory class for lattice builders."""

    _builders: Dict[LatticeKind, type] = {}

    @classmethod
    def register_builder(cls, kind: LatticeKind, builder_class: type):
        """Register a lattice builder."""
        cls._builders[kind] = builder_class

    @classmethod
    def create_builder(cls, kind: LatticeKind, **kwargs) -> BaseLatticeBuilder:
        """Create a builder instance by kind."""
        kind = LatticeKind(kind)
        if kind not in cls._builders:
            raise LatticeError(f"Unknown lattice kind: {kind.value}")
        return cls._builders[kind](**kwargs)

    @classmethod
    def get_available_kinds(cls) -> List[str]:
        """Get list of registered lattice kinds."""
        return [kind.value for kind in cls._builders]
