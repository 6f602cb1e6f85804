"""
Ion chain in a power-law trap: equilibrium, normal modes and spin couplings.

Dimensionless energy of N ions at ordered positions x_0 < ... < x_{N-1}:

    U(x) = sum_i V(x_i) + sum_{i<j} 1 / (x_j - x_i),  V(x) = A |x|^p

(or the softened A[(x^2 + eps^2)^(p/2) - eps^p]). The equilibrium solver is
a damped Newton iteration with a gradient-descent fallback wherever the
Hessian is not positive definite.
"""

from typing import Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from ..models.ions import IonChainSpectrum, TrapSpec
from ..models.network import PatternSet
from ..models.spin import CouplingMatrix
from ..utils.exceptions import (
    CollisionError,
    ConvergenceError,
    IllConditionedError,
    NotAMinimumError,
    ValidationError,
)
from ..utils.logging import get_logger

logger = get_logger(__name__)

GRADIENT_TARGET = 1e-12
GRADIENT_ACCEPT = 1e-10
MAX_ITERATIONS = 100_000
COLLISION_DISTANCE = 1e-8
MIN_FREQUENCY = 1e-8
ZERO_COMPONENT = 1e-10
ARMIJO = 1e-4


def trap_terms(trap: TrapSpec, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Trap potential and its first two derivatives per ion.

    At x = 0 the pure power law with p < 2 has no curvature; the center ion
    of such chains is pinned there and its curvature is reported as 0.
    """
    x = np.asarray(x, dtype=np.float64)
    a, p, eps = trap.amplitude, trap.exponent, trap.softening
    if eps > 0.0:
        r2 = x ** 2 + eps ** 2
        value = a * (r2 ** (p / 2) - eps ** p)
        first = a * p * x * r2 ** (p / 2 - 1)
        second = a * p * r2 ** (p / 2 - 2) * (eps ** 2 + (p - 1) * x ** 2)
        return value, first, second

    r = np.abs(x)
    at_origin = r == 0.0
    safe = np.where(at_origin, 1.0, r)
    value = a * r ** p
    first = np.where(at_origin, 0.0, a * p * safe ** (p - 1) * np.sign(x))
    second = np.where(at_origin, 2.0 * a if p == 2.0 else 0.0, a * p * (p - 1) * safe ** (p - 2))
    return value, first, second


def _separations(x: np.ndarray) -> np.ndarray:
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, np.inf)
    return diff


def potential(trap: TrapSpec, x: np.ndarray) -> float:
    """Total energy U(x) of an ordered configuration."""
    x = np.asarray(x, dtype=np.float64)
    value, _, _ = trap_terms(trap, x)
    upper = np.triu_indices(x.shape[0], k=1)
    return float(value.sum() + np.sum(1.0 / np.abs(x[upper[1]] - x[upper[0]])))


def gradient(trap: TrapSpec, x: np.ndarray) -> np.ndarray:
    """dU/dx_i = V'(x_i) - sum_{j != i} sign(x_i - x_j) / (x_i - x_j)^2."""
    x = np.asarray(x, dtype=np.float64)
    _, first, _ = trap_terms(trap, x)
    diff = _separations(x)
    return first - np.sum(np.sign(diff) / diff ** 2, axis=1)


def hessian(trap: TrapSpec, x: np.ndarray) -> np.ndarray:
    """K_ij = -2/|x_i - x_j|^3 off the diagonal, K_ii = V''(x_i) + sum_j 2/|x_i - x_j|^3."""
    x = np.asarray(x, dtype=np.float64)
    _, _, second = trap_terms(trap, x)
    coulomb = 2.0 / np.abs(_separations(x)) ** 3
    matrix = -coulomb
    np.fill_diagonal(matrix, second + coulomb.sum(axis=1))
    return matrix


def _free_sites(trap: TrapSpec) -> np.ndarray:
    free = np.ones(trap.n_ions, dtype=bool)
    if trap.pins_center:
        free[trap.n_ions // 2] = False
    return free


def _initial_guess(trap: TrapSpec) -> np.ndarray:
    """Evenly spaced chain with its length chosen to minimize U along the scaling direction."""
    shape = np.linspace(-1.0, 1.0, trap.n_ions)
    result = minimize_scalar(lambda log_scale: potential(trap, np.exp(log_scale) * shape), bounds=(-15.0, 15.0), method="bounded")
    x = np.exp(result.x) * shape
    if trap.n_ions % 2:
        x[trap.n_ions // 2] = 0.0
    return x


def _descent_direction(k: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Newton step where K is positive definite; otherwise curvatures enter by magnitude.

    Falls back to steepest descent if the eigensolver fails.
    """
    try:
        curvature, vectors = np.linalg.eigh(k)
    except np.linalg.LinAlgError:
        return -g
    floor = 1e-12 * max(float(np.max(np.abs(curvature))), 1.0)
    return -vectors @ ((vectors.T @ g) / np.maximum(np.abs(curvature), floor))


def _collides(x: np.ndarray) -> bool:
    return bool(np.min(np.diff(x)) < COLLISION_DISTANCE)


def equilibrium_positions(trap: TrapSpec) -> np.ndarray:
    """
    Ordered equilibrium positions of the chain.

    Args:
        trap: Trap and chain parameters

    Returns:
        np.ndarray: Strictly increasing, mirror-symmetric positions with
            max |dU/dx| <= 1e-10 over the free ions

    Raises:
        ConvergenceError: Iteration budget exhausted (carries the best residual)
        CollisionError: Every trial step drove two ions together
        NotAMinimumError: The stationary point reached is a saddle
    """
    free = _free_sites(trap)
    x = _initial_guess(trap)
    best_residual = np.inf
    collided = False

    for iteration in range(MAX_ITERATIONS):
        g = gradient(trap, x)[free]
        residual = float(np.max(np.abs(g)))
        best_residual = min(best_residual, residual)
        if residual <= GRADIENT_TARGET:
            break

        direction = _descent_direction(hessian(trap, x)[np.ix_(free, free)], g)
        energy = potential(trap, x)
        slope = float(g @ direction)
        step = 1.0
        accepted = False
        while step > 1e-16:
            trial = x.copy()
            trial[free] += step * direction
            if _collides(trial):
                collided = True
                step *= 0.5
                continue
            trial_residual = float(np.max(np.abs(gradient(trap, trial)[free])))
            descends = potential(trap, trial) <= energy + ARMIJO * step * slope
            # near convergence U changes below rounding; the residual decides
            if descends or trial_residual < (1.0 - ARMIJO * step) * residual:
                accepted = True
                break
            step *= 0.5

        if not accepted:
            if residual <= GRADIENT_ACCEPT:
                break
            if collided:
                raise CollisionError(
                    f"ions collided for N={trap.n_ions}, p={trap.exponent}",
                    best_residual=best_residual,
                    iterations=iteration,
                )
            raise ConvergenceError(
                f"line search stalled for N={trap.n_ions}, p={trap.exponent}",
                best_residual=best_residual,
                iterations=iteration,
            )
        x = trial
    else:
        if best_residual > GRADIENT_ACCEPT:
            raise ConvergenceError(
                f"no equilibrium within {MAX_ITERATIONS} iterations",
                best_residual=best_residual,
                iterations=MAX_ITERATIONS,
            )

    x = 0.5 * (x - x[::-1])
    residual = float(np.max(np.abs(gradient(trap, x)[free])))
    if residual > GRADIENT_ACCEPT:
        raise ConvergenceError(
            f"equilibrium residual {residual:.3e} above {GRADIENT_ACCEPT}",
            best_residual=residual,
            iterations=MAX_ITERATIONS,
        )
    lowest = float(np.linalg.eigvalsh(hessian(trap, x)[np.ix_(free, free)])[0])
    if lowest <= 0.0:
        raise NotAMinimumError(
            f"stationary point of N={trap.n_ions}, p={trap.exponent} is a saddle (lowest curvature {lowest:.3e})",
            details={"lowest_curvature": lowest},
        )
    logger.info("Found equilibrium", n_ions=trap.n_ions, exponent=trap.exponent, residual=residual)
    return x


def normal_modes(trap: TrapSpec, positions: np.ndarray) -> IonChainSpectrum:
    """
    Axial normal modes around an equilibrium.

    Columns of the mode matrix are unit eigenvectors of K/m in ascending
    frequency; each column's largest-magnitude component is positive, the
    lowest index winning ties.

    Raises:
        ValidationError: If ``positions`` is not an equilibrium
        NotAMinimumError: If K has a non-positive eigenvalue
    """
    x = np.asarray(positions, dtype=np.float64)
    if x.shape != (trap.n_ions,):
        raise ValidationError(f"expected {trap.n_ions} positions, got shape {x.shape}")
    free = _free_sites(trap)
    residual = float(np.max(np.abs(gradient(trap, x)[free])))
    if residual > GRADIENT_ACCEPT:
        raise ValidationError(f"positions are not an equilibrium (residual {residual:.3e})")

    eigenvalues, vectors = np.linalg.eigh(hessian(trap, x) / trap.mass)
    if eigenvalues[0] <= 0.0:
        raise NotAMinimumError(
            f"Hessian has a non-positive eigenvalue {eigenvalues[0]:.3e}",
            details={"eigenvalue": float(eigenvalues[0])},
        )

    for n in range(vectors.shape[1]):
        magnitudes = np.abs(vectors[:, n])
        lead = int(np.argmax(magnitudes >= magnitudes.max() * (1.0 - 1e-9)))
        if vectors[lead, n] < 0:
            vectors[:, n] = -vectors[:, n]

    return IonChainSpectrum(
        positions=x,
        mode_matrix=vectors,
        frequencies=np.sqrt(eigenvalues),
        mass=trap.mass,
        center_pinned=trap.pins_center,
    )


def mode_couplings(spectrum: IonChainSpectrum, force: float, mass: float) -> CouplingMatrix:
    """
    Spin couplings mediated by the axial modes.

    J_ij = (F^2 / m) sum_n M_in M_jn / omega_n^2 for i != j, which equals
    F^2 (K^{-1})_ij. The diagonal is dropped and the upper triangle is
    mirrored so the result is exactly symmetric.

    Raises:
        IllConditionedError: If some omega_n < 1e-8
    """
    omega = spectrum.frequencies
    if np.min(omega) < MIN_FREQUENCY:
        raise IllConditionedError(f"mode frequency {np.min(omega):.3e} is too small to invert")
    m = spectrum.mode_matrix
    full = (force ** 2 / mass) * (m / omega ** 2) @ m.T
    return CouplingMatrix.from_upper(full)


def mode_patterns(spectrum: IonChainSpectrum) -> PatternSet:
    """Sign pattern of every mode, lowest frequency first; near-zero components read as +1."""
    m = spectrum.mode_matrix
    signs = np.where(np.abs(m) < ZERO_COMPONENT, 1, np.sign(m)).astype(np.int64)
    return PatternSet(patterns=signs.T)
