"""
Reduced states of Ising spins evolving from the all-|+> product state.

The Ising Hamiltonian is diagonal in the z basis, so the evolved state is a
pure phase per configuration, psi(s) = 2^{-N/2} exp(-i E(s) t). Tracing
out everything outside a subset S of k spins gives

    rho_{a,a'}(t) = 2^{-k} exp[i t (E_S(a) - E_S(a'))]
                    * prod_{m not in S} cos(t sum_{u in S} J_um (a_u - a'_u))

with E_S(a) = sum_{u<v in S} J_uv a_u a_v + h sum_u a_u. Only sites bonded
to S contribute a non-trivial cosine, so the cost is independent of N.
"""

from typing import Sequence, Tuple

import numpy as np

from ..models.spin import CouplingMatrix, DisorderSpec, IsingModel, LatticeGraph, SubsetDensityMatrix
from ..utils.exceptions import CapacityError, SubsetError
from ..utils.logging import get_logger

logger = get_logger(__name__)

MAX_SUBSET_SITES = 12
MAX_STATEVECTOR_SITES = 14
TWO_PI = 2.0 * np.pi


def spin_configurations(k: int) -> np.ndarray:
    """All 2^k configurations as rows of +1/-1; first site is the most significant bit, bit 0 is +1."""
    bits = (np.arange(2 ** k)[:, None] >> np.arange(k - 1, -1, -1)[None, :]) & 1
    return 1 - 2 * bits


def _wrapped(phase: np.ndarray) -> np.ndarray:
    return np.remainder(phase, TWO_PI)


def _check_subset(n: int, subset: Sequence[int]) -> Tuple[int, ...]:
    subset = tuple(int(s) for s in subset)
    if not subset:
        raise SubsetError("subset must not be empty")
    if len(set(subset)) != len(subset):
        raise SubsetError(f"subset repeats sites: {list(subset)}")
    outside = [s for s in subset if not 0 <= s < n]
    if outside:
        raise SubsetError(f"sites {outside} are outside 0..{n - 1}", details={"subset": list(subset)})
    if len(subset) > MAX_SUBSET_SITES:
        raise CapacityError(
            f"subset of {len(subset)} sites exceeds the dense limit of {MAX_SUBSET_SITES}",
            limit=MAX_SUBSET_SITES,
            requested=len(subset),
        )
    return subset


def _hermitize(entries: np.ndarray) -> np.ndarray:
    return 0.5 * (entries + np.conj(np.swapaxes(entries, -1, -2)))


def _local_energy_gaps(values: np.ndarray, field: float, subset: Tuple[int, ...], configs: np.ndarray) -> np.ndarray:
    local = values[np.ix_(subset, subset)]
    energy = 0.5 * np.einsum("ai,ij,aj->a", configs, local, configs) + field * configs.sum(axis=1)
    return energy[:, None] - energy[None, :]


def _exterior_fields(values: np.ndarray, subset: Tuple[int, ...], configs: np.ndarray) -> np.ndarray:
    """Field each bonded exterior site feels from every subset configuration, shape (2^k, bonded)."""
    outside = np.ones(values.shape[0], dtype=bool)
    outside[list(subset)] = False
    block = values[list(subset)][:, outside]
    bonded = np.any(block != 0.0, axis=0)
    return configs @ block[:, bonded]


def subset_rdm_series(model: IsingModel, subset: Sequence[int], times: Sequence[float]) -> np.ndarray:
    """
    Closed-form reduced density matrices over a time grid.

    Args:
        model: Ising model
        subset: Ordered subset of k <= 12 sites
        times: Evolution times

    Returns:
        np.ndarray: Complex array of shape (len(times), 2^k, 2^k)
    """
    subset = _check_subset(model.n, subset)
    k = len(subset)
    times = np.atleast_1d(np.asarray(times, dtype=np.float64))[:, None, None]
    configs = spin_configurations(k).astype(np.float64)
    values = model.couplings.values

    entries = np.exp(1j * _wrapped(times * _local_energy_gaps(values, model.field, subset, configs)))
    for column in _exterior_fields(values, subset, configs).T:
        entries *= np.cos(_wrapped(times * (column[:, None] - column[None, :])))
    entries /= 2 ** k

    diagonal = np.arange(2 ** k)
    entries[:, diagonal, diagonal] = 1.0 / 2 ** k
    return _hermitize(entries)


def subset_rdm_closed_form(model: IsingModel, subset: Sequence[int], t: float) -> SubsetDensityMatrix:
    """
    Reduced density matrix of ``subset`` at time ``t`` from the closed form.

    Args:
        model: Ising model
        subset: Ordered subset of k <= 12 sites
        t: Evolution time

    Returns:
        SubsetDensityMatrix: 2^k x 2^k reduced state

    Raises:
        SubsetError: Empty subset, repeated or out-of-range sites
        CapacityError: k > 12
    """
    entries = subset_rdm_series(model, subset, [t])[0]
    return SubsetDensityMatrix(subset=tuple(int(s) for s in subset), entries=entries)


def subset_rdm_statevector(model: IsingModel, subset: Sequence[int], t: float) -> SubsetDensityMatrix:
    """
    Reduced density matrix by explicit partial trace of the full state vector.

    Reference path for small systems, N <= 14.
    """
    n = model.n
    if n > MAX_STATEVECTOR_SITES:
        raise CapacityError(
            f"state vector of {n} spins exceeds the limit of {MAX_STATEVECTOR_SITES}",
            limit=MAX_STATEVECTOR_SITES,
            requested=n,
        )
    subset = _check_subset(n, subset)
    k = len(subset)

    configs = spin_configurations(n).astype(np.float64)
    energies = -0.5 * np.einsum("ai,ij,aj->a", configs, model.couplings.values, configs) - model.field * configs.sum(axis=1)
    psi = np.exp(-1j * _wrapped(energies * t)) / np.sqrt(2.0 ** n)

    tensor = np.moveaxis(psi.reshape((2,) * n), list(subset), list(range(k)))
    amplitudes = tensor.reshape(2 ** k, -1)
    entries = _hermitize(amplitudes @ amplitudes.conj().T)
    return SubsetDensityMatrix(subset=subset, entries=entries)


def gaussian_averaged_series(
    graph: LatticeGraph,
    spec: DisorderSpec,
    subset: Sequence[int],
    times: Sequence[float],
    field: float = 0.0,
) -> np.ndarray:
    """
    Exact disorder average of the closed-form reduced state.

    Every factor of the closed form depends on independent Gaussian bond
    couplings, so the average is a product of characteristic functions:
    E[exp(i t J x)] = exp(i t mean x - stddev^2 t^2 x^2 / 2) per subset bond
    and E[cos(t Y)] = cos(t mean sum d) exp(-stddev^2 t^2 sum d^2 / 2) per
    bonded exterior site.

    Returns:
        np.ndarray: Complex array of shape (len(times), 2^k, 2^k)
    """
    subset = _check_subset(graph.sites, subset)
    k = len(subset)
    times = np.atleast_1d(np.asarray(times, dtype=np.float64))[:, None, None]
    configs = spin_configurations(k).astype(np.float64)
    variance = spec.stddev ** 2

    magnetization = configs.sum(axis=1)
    log_entries = 1j * _wrapped(times * field * (magnetization[:, None] - magnetization[None, :]))
    entries = np.exp(log_entries)

    position = {site: q for q, site in enumerate(subset)}
    for u, v in graph.edges:
        if u in position and v in position:
            products = configs[:, position[u]] * configs[:, position[v]]
            x = products[:, None] - products[None, :]
            entries *= np.exp(1j * _wrapped(times * spec.mean * x) - 0.5 * variance * (times * x) ** 2)

    exterior = sorted({m for s in subset for m in graph.neighbors(s)} - set(subset))
    for m in exterior:
        bonded = [position[s] for s in subset if graph.has_edge(s, m)]
        signs = configs[:, bonded]
        d = signs[:, None, :] - signs[None, :, :]
        total = d.sum(axis=-1)
        spread = (d ** 2).sum(axis=-1)
        entries *= np.cos(_wrapped(times * spec.mean * total)) * np.exp(-0.5 * variance * times ** 2 * spread)

    entries /= 2 ** k
    diagonal = np.arange(2 ** k)
    entries[:, diagonal, diagonal] = 1.0 / 2 ** k
    return _hermitize(entries)


def adapt_nn_hamiltonian(couplings: CouplingMatrix, field_bprime: float) -> IsingModel:
    """
    Ising model of the quantum neural-network Hamiltonian.

    H = -1/2 sum_{i != j} J_ij s_i s_j + B' sum_i s_i equals the internal
    convention with the same couplings and field h = -B'.
    """
    return IsingModel(couplings=couplings, field=-field_bprime)
