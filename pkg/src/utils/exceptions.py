"""Custom exceptions for the simulation toolkit."""

from typing import Optional, Dict, Any


class SimulationError(Exception):
    """Base exception for simulation errors."""

    exit_code: int = 1

    def __init__(self, message: str, error_code: Optional[str] = None, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.details = details or {}


class ConfigurationError(SimulationError):
    """Exception raised for invalid experiment configuration."""

    exit_code = 2


class ValidationError(SimulationError):
    """Exception raised for invalid inputs to a library operation."""

    exit_code = 2


class LatticeError(ValidationError):
    """Exception raised for invalid lattice extents, tilings or edges."""
    pass


class SubsetError(ValidationError):
    """Exception raised for invalid spin subsets."""
    pass


class PartitionError(ValidationError):
    """Exception raised for bipartitions that do not split the subset."""
    pass


class CapacityError(SimulationError):
    """Exception raised when a dense representation would not fit the size guard."""

    exit_code = 2

    def __init__(self, message: str, limit: int, requested: int):
        super().__init__(message, error_code="CAPACITY", details={"limit": limit, "requested": requested})
        self.limit = limit
        self.requested = requested


class NumericalError(SimulationError):
    """Exception raised for numerical failures."""

    exit_code = 3


class ConvergenceError(NumericalError):
    """Exception raised when an iterative solver exhausts its budget."""

    def __init__(self, message: str, best_residual: Optional[float] = None, iterations: Optional[int] = None):
        super().__init__(
            message,
            error_code="NO_CONVERGENCE",
            details={"best_residual": best_residual, "iterations": iterations},
        )
        self.best_residual = best_residual
        self.iterations = iterations


class CollisionError(ConvergenceError):
    """Exception raised when two ions come closer than the collision distance."""
    pass


class NotAMinimumError(NumericalError):
    """Exception raised when a stationary point has a non-positive Hessian eigenvalue."""
    pass


class IllConditionedError(NumericalError):
    """Exception raised for near-zero mode frequencies."""
    pass


class EigensolverError(NumericalError):
    """Exception raised when the Hermitian eigensolver does not converge."""
    pass


class DensityMatrixError(NumericalError):
    """Exception raised when a density matrix violates trace, Hermiticity or positivity."""
    pass


class RecallError(NumericalError):
    """Exception raised when recall dynamics do not settle or break the energy descent."""
    pass


class EstimatorError(SimulationError):
    """Exception raised when a disorder-average estimator fails for one realization."""

    def __init__(self, message: str, index: int, cause: Optional[BaseException] = None):
        super().__init__(message, error_code="ESTIMATOR_FAILED", details={"index": index})
        self.index = index
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", 3)
