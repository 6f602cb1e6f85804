from .chain import (
    equilibrium_positions,
    gradient,
    hessian,
    mode_couplings,
    mode_patterns,
    normal_modes,
    potential,
    trap_terms,
)

__all__ = [
    "equilibrium_positions",
    "gradient",
    "hessian",
    "mode_couplings",
    "mode_patterns",
    "normal_modes",
    "potential",
    "trap_terms",
]
