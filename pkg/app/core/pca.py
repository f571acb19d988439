import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np

from app.core.errors import DimensionMismatch, EmptyInput

logger = logging.getLogger(__name__)

DENSE_LIMIT = 1024
POWER_TOL = 1e-10
POWER_MAX_ITER = 1000


@dataclass
class Projection:
    coordinates: np.ndarray
    components: np.ndarray
    explained_variance_ratio: Optional[List[float]]


def _orient(direction: np.ndarray) -> np.ndarray:
    nonzero = np.flatnonzero(np.abs(direction) > 1e-12)
    if nonzero.size and direction[nonzero[0]] < 0:
        return -direction
    return direction


def _power_iteration(apply: Callable[[np.ndarray], np.ndarray], dim: int, k: int) -> tuple:
    rng = np.random.default_rng(0)
    values: List[float] = []
    vectors: List[np.ndarray] = []
    for _ in range(k):
        x = rng.normal(size=dim)
        for found in vectors:
            x -= (x @ found) * found
        x /= np.linalg.norm(x)
        value = 0.0
        for _ in range(POWER_MAX_ITER):
            y = apply(x)
            for found, found_value in zip(vectors, values):
                y -= found_value * (found @ x) * found
            norm = np.linalg.norm(y)
            if norm == 0.0:
                value = 0.0
                break
            value = float(x @ y)
            x_next = y / norm
            if np.linalg.norm(apply(x_next) - value * x_next) < POWER_TOL * max(1.0, abs(value)):
                x = x_next
                break
            x = x_next
        values.append(value)
        vectors.append(x)
    return np.array(values), np.array(vectors).T


def pca_project(vectors: Sequence[Sequence[float]], k: int = 2) -> Projection:
    """Project mean-centered vectors onto their top ``k`` principal directions."""
    data = np.asarray(vectors, dtype=np.float64)
    if data.ndim != 2 or data.shape[0] < 2:
        raise EmptyInput("PCA needs at least two vectors of equal dimension")
    n, dim = data.shape
    if not 1 <= k <= dim:
        raise DimensionMismatch(f"cannot take {k} components of {dim}-dimensional data")
    centered = data - data.mean(axis=0)
    total = float(np.sum(centered * centered) / (n - 1))
    if total == 0.0:
        logger.warning("all %d vectors are identical; projection is degenerate", n)
        return Projection(np.zeros((n, k)), np.zeros((dim, k)), None)

    if dim <= DENSE_LIMIT:
        covariance = centered.T @ centered / (n - 1)
        values, directions = np.linalg.eigh(covariance)
        order = np.argsort(values)[::-1][:k]
        values, directions = values[order], directions[:, order]
    else:
        values, directions = _power_iteration(lambda x: centered.T @ (centered @ x) / (n - 1), dim, k)

    directions = np.column_stack([_orient(directions[:, index]) for index in range(k)])
    ratios = [float(max(value, 0.0) / total) for value in values]
    return Projection(centered @ directions, directions, ratios)
