#!/usr/bin/env python3
"""
Tests for lattice construction and exterior-neighbor queries.

This script tests:
1. Site and edge counts of the periodic lattices
2. Exterior-neighbor counts per lattice kind
3. Rejection of invalid extents, tilings and non-edges
"""

import sys
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.lattice import LatticeFactory, build_lattice, exterior_neighbors
from src.models.spin import COORDINATION, LatticeGraph, LatticeKind
from src.utils.exceptions import LatticeError

PERIODIC_CASES = [
    (LatticeKind.CHAIN1D, [8], 2),
    (LatticeKind.HONEYCOMB2D, [4, 4], 4),
    (LatticeKind.HONEYCOMB2D, [4, 6], 4),
    (LatticeKind.SQUARE2D, [4, 4], 6),
    (LatticeKind.SQUARE2D, [5, 4], 6),
    (LatticeKind.CUBIC3D, [4, 4, 4], 10),
]


def test_chain_cycle():
    """A periodic 4-site chain is a cycle."""
    graph = build_lattice(LatticeKind.CHAIN1D, [4], periodic=True)
    assert graph.sites == 4
    assert len(graph.edges) == 4
    assert all(graph.degree(i) == 2 for i in range(4))


def test_square_torus():
    """A periodic 3x3 square lattice has 18 bonds and coordination 4."""
    graph = build_lattice(LatticeKind.SQUARE2D, [3, 3], periodic=True)
    assert graph.sites == 9
    assert len(graph.edges) == 18
    assert all(graph.degree(i) == 4 for i in range(9))


def test_complete_graph_ignores_periodic():
    graph = build_lattice(LatticeKind.COMPLETE, [5], periodic=True)
    assert len(graph.edges) == 10
    assert graph.periodic is False


def test_square_row_major_indexing():
    """Site x*Ly + y bonds to (x, y+1) and (x+1, y)."""
    graph = build_lattice(LatticeKind.SQUARE2D, [4, 5], periodic=False)
    assert graph.has_edge(0, 1)
    assert graph.has_edge(0, 5)
    assert not graph.has_edge(4, 5)


@pytest.mark.parametrize("kind,dims,count", PERIODIC_CASES)
def test_periodic_coordination(kind, dims, count):
    """Every site of a periodic lattice has the coordination number of its kind."""
    graph = build_lattice(kind, dims, periodic=True)
    assert all(graph.degree(i) == COORDINATION[kind] for i in range(graph.sites))


@pytest.mark.parametrize("kind,dims,count", PERIODIC_CASES)
def test_exterior_neighbor_counts(kind, dims, count):
    """Every bond of a periodic lattice sees the same number of exterior neighbors."""
    graph = build_lattice(kind, dims, periodic=True)
    assert {len(exterior_neighbors(graph, edge)) for edge in graph.edges} == {count}


@pytest.mark.parametrize(
    "kind,dims,periodic",
    [
        (LatticeKind.SQUARE2D, [4, 3], False),
        (LatticeKind.HONEYCOMB2D, [4, 4], False),
        (LatticeKind.CUBIC3D, [3, 3, 3], True),
        (LatticeKind.COMPLETE, [6], False),
    ],
)
def test_exterior_neighbors_match_adjacency_scan(kind, dims, periodic):
    """Exterior count = deg(i) + deg(j) - 2 - shared neighbors, for every bond."""
    graph = build_lattice(kind, dims, periodic=periodic)
    for i, j in graph.edges:
        shared = len(graph.neighbors(i) & graph.neighbors(j))
        expected = graph.degree(i) + graph.degree(j) - 2 - shared
        found = exterior_neighbors(graph, (i, j))
        assert len(found) == expected
        assert i not in found and j not in found
        assert found == sorted(set(found))


def test_open_boundary_has_fewer_neighbors():
    graph = build_lattice(LatticeKind.CHAIN1D, [5], periodic=False)
    assert exterior_neighbors(graph, (0, 1)) == [2]


def test_custom_lattice():
    graph = build_lattice(LatticeKind.CUSTOM, [3], edges=[(1, 0), (2, 1)])
    assert graph.edges == ((0, 1), (1, 2))


@pytest.mark.parametrize(
    "kind,dims,periodic",
    [
        (LatticeKind.CHAIN1D, [1], False),
        (LatticeKind.SQUARE2D, [4], True),
        (LatticeKind.HONEYCOMB2D, [3, 4], True),
        (LatticeKind.SQUARE2D, [2, 4], True),
    ],
)
def test_invalid_extents_rejected(kind, dims, periodic):
    with pytest.raises(LatticeError):
        build_lattice(kind, dims, periodic=periodic)


def test_invalid_custom_edges_rejected():
    with pytest.raises(LatticeError):
        build_lattice(LatticeKind.CUSTOM, [3], edges=[(0, 0)])
    with pytest.raises(LatticeError):
        build_lattice(LatticeKind.CUSTOM, [3], edges=[(0, 1), (1, 0)])
    with pytest.raises(LatticeError):
        build_lattice(LatticeKind.CUSTOM, [3], edges=[(0, 3)])


def test_non_edge_rejected():
    graph = build_lattice(LatticeKind.CHAIN1D, [6], periodic=True)
    with pytest.raises(LatticeError):
        exterior_neighbors(graph, (0, 2))


def test_graph_json_round_trip():
    """Graphs serialize to {kind, dims, periodic, edges} and load back equal."""
    graph = build_lattice(LatticeKind.HONEYCOMB2D, [4, 4], periodic=True)
    restored = LatticeGraph.model_validate_json(graph.model_dump_json())
    assert restored.edges == graph.edges
    assert restored.neighbors(0) == graph.neighbors(0)


def test_factory_lists_kinds():
    assert set(LatticeFactory.get_available_kinds()) == {kind.value for kind in LatticeKind}
