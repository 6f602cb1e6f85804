from .ion_audit import audit_modes, run_ion_audit, run_ion_sweep, solve_chain
from .quantum_nn import chain_couplings, detect_revivals, pair_entanglement_series, run_qnn
from .spin_glass import (
    pair_eln_estimator,
    run_neighbor_decay,
    run_separability,
    run_spin_glass_sweep,
)

__all__ = [
    "audit_modes",
    "chain_couplings",
    "detect_revivals",
    "pair_eln_estimator",
    "pair_entanglement_series",
    "run_ion_audit",
    "run_ion_sweep",
    "run_neighbor_decay",
    "run_qnn",
    "run_separability",
    "run_spin_glass_sweep",
    "solve_chain",
]
