from .negativity import (
    averaged_state,
    gaussian_averaged_state,
    log_negativity,
    log_negativity_series,
    min_pt_eigenvalue,
    min_pt_eigenvalue_series,
    partial_transpose,
    transpose_positions,
)

__all__ = [
    "averaged_state",
    "gaussian_averaged_state",
    "log_negativity",
    "log_negativity_series",
    "min_pt_eigenvalue",
    "min_pt_eigenvalue_series",
    "partial_transpose",
    "transpose_positions",
]
