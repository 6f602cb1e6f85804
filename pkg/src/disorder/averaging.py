"""
Disorder averaging of per-realization estimators.

An estimator maps a realization index to a real number or a real array of
fixed shape (a time series, say). Realizations are evaluated in index
order, optionally on a thread pool; results are gathered in index order so
the average does not depend on the worker count.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Tuple, Union

import numpy as np

from ..config import settings
from ..utils.exceptions import EstimatorError, ValidationError
from ..utils.logging import get_logger

logger = get_logger(__name__)

Estimate = Union[float, np.ndarray]
Estimator = Callable[[int], Estimate]


def evaluate_realizations(estimator: Estimator, count: int, workers: Optional[int] = None) -> np.ndarray:
    """
    Evaluate ``estimator`` on realizations 0..count-1.

    Args:
        estimator: Function of the realization index
        count: Number of realizations
        workers: Thread count (defaults to ``settings.workers``)

    Returns:
        np.ndarray: Stacked estimates, realization index first

    Raises:
        EstimatorError: First failing realization, carrying its index
    """
    if count < 1:
        raise ValidationError(f"need at least one realization, got {count}")
    workers = workers or settings.workers

    def _run(index: int) -> np.ndarray:
        try:
            value = np.asarray(estimator(index), dtype=np.float64)
        except Exception as exc:
            raise EstimatorError(f"estimator failed at realization {index}: {exc}", index=index, cause=exc) from exc
        if not np.all(np.isfinite(value)):
            raise EstimatorError(f"estimator returned a non-finite value at realization {index}", index=index)
        return value

    if workers == 1:
        values = [_run(index) for index in range(count)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_run, range(count)))

    shapes = {v.shape for v in values}
    if len(shapes) != 1:
        raise ValidationError(f"estimator returned inconsistent shapes: {sorted(shapes)}")
    return np.stack(values)


def summarize(values: np.ndarray) -> Tuple[Estimate, Estimate]:
    """
    Sample mean and standard error along the first axis.

    The standard error is the sample standard deviation (ddof=1) over
    sqrt(count). Scalars are summed with ``math.fsum``.
    """
    values = np.asarray(values, dtype=np.float64)
    count = values.shape[0]
    if count < 2:
        raise ValidationError(f"a standard error needs at least two realizations, got {count}")

    if values.ndim == 1:
        mean = math.fsum(values) / count
        variance = math.fsum((v - mean) ** 2 for v in values) / (count - 1)
        return mean, math.sqrt(variance / count)

    mean = values.mean(axis=0)
    variance = ((values - mean) ** 2).sum(axis=0) / (count - 1)
    return mean, np.sqrt(variance / count)


def disorder_average(estimator: Estimator, count: int, workers: Optional[int] = None) -> Tuple[Estimate, Estimate]:
    """
    Average an estimator over ``count`` disorder realizations.

    Args:
        estimator: Function of the realization index returning a real value
            or a real array of fixed shape
        count: Number of realizations, at least 2
        workers: Thread count (defaults to ``settings.workers``)

    Returns:
        Tuple: (mean, standard error), scalars or arrays matching the estimates

    Raises:
        ValidationError: If ``count`` < 2
        EstimatorError: If the estimator fails for some realization
    """
    if count < 2:
        raise ValidationError(f"disorder average needs at least two realizations, got {count}")
    logger.info("Averaging over disorder", realizations=count, workers=workers or settings.workers)
    return summarize(evaluate_realizations(estimator, count, workers))
