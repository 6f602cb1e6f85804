"""Lattice graphs for the Edwards-Anderson model."""

from .base import BaseLatticeBuilder, LatticeFactory
from .builders import build_lattice, exterior_neighbors

__all__ = ["BaseLatticeBuilder", "LatticeFactory", "build_lattice", "exterior_neighbors"]
