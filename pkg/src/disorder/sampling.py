"""Quenched Gaussian coupling realizations."""

import numpy as np

from ..models.spin import CouplingMatrix, DisorderSpec, LatticeGraph
from ..utils.exceptions import ValidationError
from ..utils.streams import substream


def edge_deviates(spec: DisorderSpec, realization_index: int, n_edges: int) -> np.ndarray:
    """Standard-normal deviates of one realization, one per edge in canonical edge order.

    With ``spec.antithetic`` realizations 2r and 2r+1 share the substream of
    pair r and the odd member uses the negated deviates.
    """
    if realization_index < 0:
        raise ValidationError(f"realization index must be non-negative, got {realization_index}")
    if spec.antithetic:
        z = substream(spec.master_seed, "disorder", realization_index // 2).standard_normal(n_edges)
        return -z if realization_index % 2 else z
    return substream(spec.master_seed, "disorder", realization_index).standard_normal(n_edges)


def sample_couplings(graph: LatticeGraph, spec: DisorderSpec, realization_index: int) -> CouplingMatrix:
    """
    Draw J_ij ~ Normal(mean, stddev^2) independently on every edge.

    The draw depends only on (graph, spec, realization_index): the same
    triple always yields a bit-identical matrix.

    Args:
        graph: Lattice whose edges carry couplings
        spec: Disorder distribution and master seed
        realization_index: Non-negative realization counter

    Returns:
        CouplingMatrix: Couplings on the edges, zero elsewhere
    """
    z = edge_deviates(spec, realization_index, len(graph.edges))
    weights = spec.mean + spec.stddev * z
    return CouplingMatrix.from_edges(graph.sites, graph.edges, weights)
