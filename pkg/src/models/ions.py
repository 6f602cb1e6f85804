"""Trapped-ion chain data models."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .arrays import FloatArray


class TrapSpec(BaseModel):
    """Axial power-law trap V(x) = A |x|^p for a chain of identical ions.

    Units are dimensionless with the Coulomb prefactor equal to 1. A positive
    ``softening`` replaces the trap by A[(x^2 + eps^2)^(p/2) - eps^p], which
    is smooth at the origin.
    """

    model_config = ConfigDict(frozen=True)

    n_ions: int = Field(..., ge=2, description="Number of ions N")
    amplitude: float = Field(..., gt=0.0, description="Trap amplitude A (energy / length^p)")
    exponent: float = Field(..., gt=0.0, description="Trap exponent p")
    force: float = Field(default=1.0, description="State-dependent force F")
    mass: float = Field(default=1.0, gt=0.0, description="Ion mass m")
    softening: float = Field(default=0.0, ge=0.0, description="Core radius eps of the softened trap")

    @property
    def pins_center(self) -> bool:
        """True when an odd chain has its center ion at a non-smooth trap minimum."""
        return self.n_ions % 2 == 1 and self.softening == 0.0 and self.exponent < 2.0


class IonChainSpectrum(BaseModel):
    """Equilibrium positions and axial normal modes of an ion chain."""

    model_config = ConfigDict(frozen=True)

    positions: FloatArray = Field(..., description="Equilibrium positions, strictly increasing")
    mode_matrix: FloatArray = Field(..., description="Orthogonal matrix M, column n is mode n")
    frequencies: FloatArray = Field(..., description="Mode frequencies omega_n, ascending")
    mass: float = Field(default=1.0, gt=0.0, description="Ion mass used for the frequencies")
    center_pinned: bool = Field(default=False, description="Center ion treated as pinned at the trap cusp")

    @model_validator(mode="after")
    def _check_spectrum(self) -> "IonChainSpectrum":
        n = self.positions.shape[0]
        if self.mode_matrix.shape != (n, n) or self.frequencies.shape != (n,):
            raise ValueError("mode matrix and frequencies must match the number of ions")
        if np.any(np.diff(self.positions) <= 0):
            raise ValueError("positions must be strictly increasing")
        if np.any(self.frequencies <= 0):
            raise ValueError("frequencies must be positive")
        deviation = np.max(np.abs(self.mode_matrix.T @ self.mode_matrix - np.eye(n)))
        if deviation > 1e-10:
            raise ValueError(f"mode matrix is not orthogonal (deviation {deviation:.3e})")
        return self

    @property
    def n_ions(self) -> int:
        return int(self.positions.shape[0])
