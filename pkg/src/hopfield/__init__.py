from .audit import capacity_audit
from .network import (
    basin_estimate,
    energy,
    hebbian_couplings,
    local_fields,
    recall,
    stability_check,
    zero_field_sites,
)

__all__ = [
    "basin_estimate",
    "capacity_audit",
    "energy",
    "hebbian_couplings",
    "local_fields",
    "recall",
    "stability_check",
    "zero_field_sites",
]
