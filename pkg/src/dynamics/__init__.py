from .ising import (
    MAX_STATEVECTOR_SITES,
    MAX_SUBSET_SITES,
    adapt_nn_hamiltonian,
    gaussian_averaged_series,
    spin_configurations,
    subset_rdm_closed_form,
    subset_rdm_series,
    subset_rdm_statevector,
)

__all__ = [
    "MAX_STATEVECTOR_SITES",
    "MAX_SUBSET_SITES",
    "adapt_nn_hamiltonian",
    "gaussian_averaged_series",
    "spin_configurations",
    "subset_rdm_closed_form",
    "subset_rdm_series",
    "subset_rdm_statevector",
]
