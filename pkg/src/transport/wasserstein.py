"""
Exact 2-Wasserstein distance between equal-size empirical measures.

For uniform weights on m points each, optimal transport reduces to a
minimum-cost perfect matching, solved here with the Hungarian-family
solver in scipy.optimize.linear_sum_assignment.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..utils.errors import DomainError, ShapeMismatchError

logger = logging.getLogger(__name__)

# Brute force enumerates m! matchings.
ORACLE_MAX_SIZE = 8


@dataclass(frozen=True)
class PointCloud:
    """Finite point cloud in C; real clouds embed with zero imaginary part."""

    points: np.ndarray

    def __post_init__(self) -> None:
        points = np.asarray(self.points, dtype=np.complex128).ravel()
        if points.size < 1:
            raise DomainError("A point cloud needs at least one point")
        if not np.all(np.isfinite(points)):
            raise DomainError("Point cloud contains non-finite coordinates")
        points.setflags(write=False)
        object.__setattr__(self, "points", points)

    @property
    def size(self) -> int:
        return int(self.points.size)


@dataclass(frozen=True)
class Matching:
    """Optimal bijection source index -> target index and its mean squared cost."""

    permutation: np.ndarray
    cost: float

    @property
    def distance(self) -> float:
        return float(np.sqrt(self.cost))


CloudLike = Union[PointCloud, Sequence[complex], np.ndarray]


def _as_cloud(cloud: CloudLike) -> PointCloud:
    if isinstance(cloud, PointCloud):
        return cloud
    points = getattr(cloud, "points", cloud)
    return PointCloud(np.asarray(points))


def _cost_matrix(P: PointCloud, Q: PointCloud) -> np.ndarray:
    if P.size != Q.size:
        raise ShapeMismatchError(f"unequal supports: {P.size} vs {Q.size} points")
    return np.abs(P.points[:, np.newaxis] - Q.points[np.newaxis, :]) ** 2


def optimal_matching(P: CloudLike, Q: CloudLike) -> Matching:
    """
    Minimum-cost matching between two clouds of the same size.

    Args:
        P: Source cloud (PointCloud, SpectralSample or array)
        Q: Target cloud of the same size

    Returns:
        Matching with cost = (1/m) sum |p_i - q_sigma(i)|^2
    """
    P, Q = _as_cloud(P), _as_cloud(Q)
    cost = _cost_matrix(P, Q)
    rows, cols = linear_sum_assignment(cost)
    permutation = np.empty(P.size, dtype=int)
    permutation[rows] = cols
    return Matching(permutation, float(cost[rows, cols].sum() / P.size))


def wasserstein2(P: CloudLike, Q: CloudLike) -> float:
    """W2 between the uniform empirical measures on P and Q."""
    matching = optimal_matching(P, Q)
    logger.debug(f"W2 over {matching.permutation.size} points: {matching.distance:.6g}")
    return matching.distance


def wasserstein2_oracle(P: CloudLike, Q: CloudLike) -> float:
    """Exhaustive minimum over all m! matchings, m <= 8."""
    P, Q = _as_cloud(P), _as_cloud(Q)
    cost = _cost_matrix(P, Q)
    m = P.size
    if m > ORACLE_MAX_SIZE:
        raise DomainError(f"Brute-force matching is capped at {ORACLE_MAX_SIZE} points, got {m}")
    rows = np.arange(m)
    best = min(cost[rows, list(perm)].sum() for perm in itertools.permutations(range(m)))
    return float(np.sqrt(best / m))
