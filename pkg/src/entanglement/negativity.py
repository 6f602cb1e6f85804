"""Partial transpose, logarithmic negativity and disorder-averaged states."""

from typing import Iterable, Sequence

import numpy as np

from ..dynamics.ising import gaussian_averaged_series, subset_rdm_series
from ..models.spin import Bipartition, DisorderSpec, IsingModel, LatticeGraph, SubsetDensityMatrix
from ..utils.exceptions import DensityMatrixError, EigensolverError, ValidationError
from ..utils.logging import get_logger

logger = get_logger(__name__)

# Trace norms below 1 + NPT_TOLERANCE are reported as zero log-negativity
NPT_TOLERANCE = 1e-12
TRACE_NORM_FLOOR = 1e-8


def transpose_positions(entries: np.ndarray, k: int, positions: Sequence[int]) -> np.ndarray:
    """
    Transpose the given qubit positions of one or a batch of 2^k x 2^k matrices.

    Args:
        entries: Array of shape (..., 2^k, 2^k)
        k: Number of qubits
        positions: Qubit positions (0 = most significant) to transpose

    Returns:
        np.ndarray: Partially transposed array of the same shape
    """
    batch = entries.shape[:-2]
    offset = len(batch)
    tensor = entries.reshape(batch + (2,) * (2 * k))
    axes = list(range(offset + 2 * k))
    for q in positions:
        axes[offset + q], axes[offset + k + q] = axes[offset + k + q], axes[offset + q]
    return tensor.transpose(axes).reshape(entries.shape)


def partial_transpose(rdm: SubsetDensityMatrix, cut: Bipartition) -> np.ndarray:
    """
    Partial transpose of ``rdm`` over the right part of ``cut``.

    Raises:
        PartitionError: If ``cut`` does not partition the subset
    """
    return transpose_positions(rdm.entries, rdm.k, cut.right_positions(rdm.subset))


def _pt_spectrum(entries: np.ndarray, k: int, positions: Sequence[int]) -> np.ndarray:
    try:
        return np.linalg.eigvalsh(transpose_positions(entries, k, positions))
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver failed on the partial transpose: {exc}") from exc


def log_negativity_series(entries: np.ndarray, k: int, positions: Sequence[int]) -> np.ndarray:
    """
    Logarithmic negativity of a batch of states, shape (..., 2^k, 2^k) -> (...).

    Raises:
        DensityMatrixError: If a trace norm falls below 1, i.e. a state is not a density matrix
        EigensolverError: If the eigensolver fails
    """
    norms = np.abs(_pt_spectrum(entries, k, positions)).sum(axis=-1)
    if np.any(norms < 1.0 - TRACE_NORM_FLOOR):
        raise DensityMatrixError(
            f"trace norm {float(np.min(norms)):.12f} below 1 for a density matrix",
            details={"k": k},
        )
    return np.where(norms < 1.0 + NPT_TOLERANCE, 0.0, np.log2(np.maximum(norms, 1.0)))


def log_negativity(rdm: SubsetDensityMatrix, cut: Bipartition) -> float:
    """
    E_LN = log2 ||rho^{T_B}||_1 across ``cut``.

    Args:
        rdm: Reduced density matrix
        cut: Bipartition of the subset

    Returns:
        float: Non-negative log-negativity; exactly 0 below the NPT tolerance
    """
    positions = cut.right_positions(rdm.subset)
    return float(log_negativity_series(rdm.entries, rdm.k, positions))


def min_pt_eigenvalue(rdm: SubsetDensityMatrix, cut: Bipartition) -> float:
    """Lowest eigenvalue of the partial transpose; negative iff the state is NPT across ``cut``."""
    return float(_pt_spectrum(rdm.entries, rdm.k, cut.right_positions(rdm.subset))[0])


def min_pt_eigenvalue_series(entries: np.ndarray, k: int, positions: Sequence[int]) -> np.ndarray:
    return _pt_spectrum(entries, k, positions)[..., 0]


def averaged_state(models: Iterable[IsingModel], subset: Sequence[int], t: float) -> SubsetDensityMatrix:
    """
    Arithmetic mean of the closed-form reduced states of several realizations.

    Raises:
        ValidationError: If no realization is given
    """
    total = None
    count = 0
    for model in models:
        entries = subset_rdm_series(model, subset, [t])[0]
        total = entries if total is None else total + entries
        count += 1
    if count == 0:
        raise ValidationError("averaged_state needs at least one realization")
    logger.debug("Averaged reduced state", realizations=count, subset=list(subset), t=t)
    return SubsetDensityMatrix(subset=tuple(int(s) for s in subset), entries=total / count)


def gaussian_averaged_state(
    graph: LatticeGraph,
    spec: DisorderSpec,
    subset: Sequence[int],
    t: float,
    field: float = 0.0,
) -> SubsetDensityMatrix:
    """Disorder-averaged reduced state computed exactly, without sampling."""
    entries = gaussian_averaged_series(graph, spec, subset, [t], field)[0]
    return SubsetDensityMatrix(subset=tuple(int(s) for s in subset), entries=entries)
