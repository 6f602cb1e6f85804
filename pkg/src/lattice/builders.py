"""
Lattice builders and neighbor queries.

Site indexing is row-major over coordinates:

- chain1d ``[L]``: site ``x``
- square2d ``[Lx, Ly]``: site ``x * Ly + y``
- cubic3d ``[Lx, Ly, Lz]``: site ``(x * Ly + y) * Lz + z``
- honeycomb2d ``[Lx, Ly]``: brick-wall rows, site ``x * Ly + y``; bonds
  ``(x, y)-(x, y+1)`` along each row and ``(x, y)-(x+1, y)`` when ``x + y`` is even
- complete ``[N]`` and custom ``[N]``: site index as given
"""

import itertools
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .base import BaseLatticeBuilder, Edge, LatticeFactory
from ..models.spin import LatticeGraph, LatticeKind
from ..utils.exceptions import LatticeError
from ..utils.logging import get_logger

logger = get_logger(__name__)


def _bond(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


class HypercubicBuilder(BaseLatticeBuilder):
    """Chain, square and cubic lattices."""

    def validate(self, dims: Sequence[int], periodic: bool) -> None:
        super().validate(dims, periodic)
        if periodic and any(d == 2 for d in dims):
            raise LatticeError(
                "periodic axes of extent 2 would double the wrap-around bond",
                details={"dims": list(dims)},
            )

    def site_count(self, dims: Sequence[int]) -> int:
        return int(np.prod(dims))

    def edges(self, dims: Sequence[int], periodic: bool) -> List[Edge]:
        shape = tuple(dims)
        bonds = []
        for coords in itertools.product(*(range(d) for d in shape)):
            site = int(np.ravel_multi_index(coords, shape))
            for axis, extent in enumerate(shape):
                step = list(coords)
                step[axis] += 1
                if step[axis] == extent:
                    if not periodic:
                        continue
                    step[axis] = 0
                bonds.append(_bond(site, int(np.ravel_multi_index(tuple(step), shape))))
        return bonds


class ChainBuilder(HypercubicBuilder):
    kind = LatticeKind.CHAIN1D
    axes = 1


class SquareBuilder(HypercubicBuilder):
    kind = LatticeKind.SQUARE2D
    axes = 2


class CubicBuilder(HypercubicBuilder):
    kind = LatticeKind.CUBIC3D
    axes = 3


class HoneycombBuilder(BaseLatticeBuilder):
    """Honeycomb lattice in brick-wall indexing."""

    kind = LatticeKind.HONEYCOMB2D
    axes = 2

    def validate(self, dims: Sequence[int], periodic: bool) -> None:
        super().validate(dims, periodic)
        if periodic and any(d % 2 for d in dims):
            raise LatticeError(
                f"periodic honeycomb needs even circumferences, got {list(dims)}",
                details={"dims": list(dims)},
            )
        if periodic and any(d == 2 for d in dims):
            raise LatticeError(
                "periodic axes of extent 2 would double the wrap-around bond",
                details={"dims": list(dims)},
            )

    def site_count(self, dims: Sequence[int]) -> int:
        return dims[0] * dims[1]

    def edges(self, dims: Sequence[int], periodic: bool) -> List[Edge]:
        rows, cols = dims
        bonds = []
        for x in range(rows):
            for y in range(cols):
                site = x * cols + y
                if y + 1 < cols or periodic:
                    bonds.append(_bond(site, x * cols + (y + 1) % cols))
                if (x + y) % 2 == 0 and (x + 1 < rows or periodic):
                    bonds.append(_bond(site, ((x + 1) % rows) * cols + y))
        return bonds


class CompleteBuilder(BaseLatticeBuilder):
    """All-to-all graph; ``periodic`` is ignored."""

    kind = LatticeKind.COMPLETE
    axes = 1

    def site_count(self, dims: Sequence[int]) -> int:
        return dims[0]

    def edges(self, dims: Sequence[int], periodic: bool) -> List[Edge]:
        return list(itertools.combinations(range(dims[0]), 2))

    def build(self, dims: Sequence[int], periodic: bool) -> LatticeGraph:
        return super().build(dims, False)


class CustomBuilder(BaseLatticeBuilder):
    """Explicit edge list over ``dims[0]`` sites."""

    kind = LatticeKind.CUSTOM
    axes = 1

    def __init__(self, edges: Optional[Sequence[Tuple[int, int]]] = None):
        self._edges = [tuple(e) for e in (edges or [])]

    def validate(self, dims: Sequence[int], periodic: bool) -> None:
        if len(dims) != 1 or dims[0] < 1:
            raise LatticeError(f"custom lattices take a single site count, got {list(dims)}")

    def site_count(self, dims: Sequence[int]) -> int:
        return dims[0]

    def edges(self, dims: Sequence[int], periodic: bool) -> List[Edge]:
        n = dims[0]
        for i, j in self._edges:
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise LatticeError(f"invalid custom edge ({i}, {j}) for {n} sites")
        canonical = [_bond(i, j) for i, j in self._edges]
        if len(set(canonical)) != len(canonical):
            raise LatticeError("custom edge list contains duplicates")
        return canonical


# Register builders
LatticeFactory.register_builder(LatticeKind.CHAIN1D, ChainBuilder)
LatticeFactory.register_builder(LatticeKind.SQUARE2D, SquareBuilder)
LatticeFactory.register_builder(LatticeKind.CUBIC3D, CubicBuilder)
LatticeFactory.register_builder(LatticeKind.HONEYCOMB2D, HoneycombBuilder)
LatticeFactory.register_builder(LatticeKind.COMPLETE, CompleteBuilder)
LatticeFactory.register_builder(LatticeKind.CUSTOM, CustomBuilder)


def build_lattice(
    kind: LatticeKind,
    dims: Sequence[int],
    periodic: bool = True,
    edges: Optional[Sequence[Tuple[int, int]]] = None,
) -> LatticeGraph:
    """
    Build a lattice graph.

    Args:
        kind: Lattice geometry
        dims: Extent per axis; site count for ``complete`` and ``custom``
        periodic: Periodic boundary conditions (ignored by ``complete``)
        edges: Bond list, only for ``custom``

    Returns:
        LatticeGraph: Graph with canonical, sorted edges

    Raises:
        LatticeError: Extents below 2, odd periodic honeycomb circumferences,
            doubled periodic bonds or invalid custom edges
    """
    kind = LatticeKind(kind)
    if kind == LatticeKind.CUSTOM:
        builder = LatticeFactory.create_builder(kind, edges=edges)
    else:
        if edges is not None:
            raise LatticeError(f"explicit edges are only accepted for custom lattices, not {kind.value}")
        builder = LatticeFactory.create_builder(kind)
    graph = builder.build(list(dims), periodic)
    logger.debug("Built lattice", kind=kind.value, dims=list(dims), sites=graph.sites, edges=len(graph.edges))
    return graph


def exterior_neighbors(graph: LatticeGraph, edge: Tuple[int, int]) -> List[int]:
    """
    Sites outside a bonded pair that are adjacent to either end.

    These are the only sites whose couplings enter the pair's reduced dynamics.

    Raises:
        LatticeError: If ``edge`` is not a bond of ``graph``
    """
    i, j = edge
    if not graph.has_edge(i, j):
        raise LatticeError(f"({i}, {j}) is not an edge of the lattice", details={"edge": [i, j]})
    return sorted((graph.neighbors(i) | graph.neighbors(j)) - {i, j})
