"""
Marchenko-Pastur law with ratio parameter lambda and unit variance.

This is the limit spectrum of the Hermitian 2N x 2N covariance of the stacked
vectors [y_t; y_{t-1}] under white noise, with lambda = 2 gamma.
"""

import logging
from typing import Union

import numpy as np

from ..spectra import EIGENVALUES, SpectralSample
from ..utils.errors import DomainError
from ..utils.seeding import STREAM_REFERENCE, make_rng

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# Nodes of the tabulated distribution function of the continuous part.
_TABLE_NODES = 4096


class MpModel:
    """Marchenko-Pastur law MP_ratio."""

    def __init__(self, ratio: float) -> None:
        """
        Initialize the law and tabulate its distribution function.

        Args:
            ratio: Aspect ratio (2 gamma for the stacked covariance), strictly positive
        """
        ratio = float(ratio)
        if not np.isfinite(ratio) or ratio <= 0:
            raise DomainError(f"Marchenko-Pastur ratio must be positive, got {ratio}")
        self.ratio = ratio
        self.lo = (1.0 - np.sqrt(ratio)) ** 2
        self.hi = (1.0 + np.sqrt(ratio)) ** 2
        self.atom0 = max(0.0, 1.0 - 1.0 / ratio)
        self._grid, self._table = self._tabulate()
        logger.debug(f"MpModel initialized: ratio={ratio:.6g}, support=[{self.lo:.6g}, {self.hi:.6g}]")

    @classmethod
    def for_gamma(cls, gamma: float) -> "MpModel":
        """Reference law of the stacked covariance test: ratio 2 gamma."""
        return cls(2.0 * gamma)

    def __repr__(self) -> str:
        return f"MpModel(ratio={self.ratio!r})"

    def _tabulate(self):
        # x = lo + (hi - lo) sin^2(phi) removes the square-root edges; the
        # midpoint rule never touches phi = 0, where x may vanish.
        h = (np.pi / 2.0) / _TABLE_NODES
        mid = (np.arange(_TABLE_NODES) + 0.5) * h
        width = self.hi - self.lo
        x_mid = self.lo + width * np.sin(mid) ** 2
        integrand = width**2 * np.sin(mid) ** 2 * np.cos(mid) ** 2 / (np.pi * self.ratio * x_mid)
        table = np.concatenate([[0.0], np.cumsum(integrand * h)])
        edges = np.linspace(0.0, np.pi / 2.0, _TABLE_NODES + 1)
        grid = self.lo + width * np.sin(edges) ** 2
        return grid, table / table[-1]


def _scalar(values: np.ndarray) -> ArrayLike:
    return float(values) if np.ndim(values) == 0 else values


def mp_density(x: ArrayLike, mp: MpModel) -> ArrayLike:
    """Density of the continuous part: sqrt((hi - x)(x - lo)) / (2 pi ratio x) on (lo, hi)."""
    x = np.asarray(x, dtype=float)
    inside = (x > mp.lo) & (x < mp.hi) & (x > 0)
    safe = np.where(inside, x, 1.0)
    values = np.sqrt(np.clip((mp.hi - safe) * (safe - mp.lo), 0.0, None)) / (2.0 * np.pi * mp.ratio * safe)
    return _scalar(np.where(inside, values, 0.0))


def mp_cdf(x: ArrayLike, mp: MpModel) -> ArrayLike:
    """Distribution function, including the atom 1 - 1/ratio at 0 when ratio > 1."""
    x = np.asarray(x, dtype=float)
    continuous = (1.0 - mp.atom0) * np.interp(x, mp._grid, mp._table, left=0.0, right=1.0)
    values = np.where(x >= 0, mp.atom0 + continuous, 0.0)
    return _scalar(np.clip(values, 0.0, 1.0))


def mp_quantile(u: ArrayLike, mp: MpModel) -> ArrayLike:
    """Generalized inverse of ``mp_cdf``; levels inside the atom map to 0."""
    u = np.asarray(u, dtype=float)
    if np.any((u < 0) | (u > 1)):
        raise DomainError("Quantile levels must lie in [0, 1]")
    level = np.clip((u - mp.atom0) / (1.0 - mp.atom0), 0.0, 1.0)
    values = np.interp(level, mp._table, mp._grid)
    if mp.atom0 > 0:
        values = np.where(u < mp.atom0, 0.0, values)
    return _scalar(values)


def mp_sample(mp: MpModel, count: int, seed: int = 0, stream: int = STREAM_REFERENCE) -> SpectralSample:
    """Inverse-CDF draws from MP_ratio; atom draws are exactly 0."""
    if count < 1:
        raise DomainError(f"Sample size must be >= 1, got {count}")
    rng = make_rng(seed, stream, 1)
    points = np.asarray(mp_quantile(rng.random(count), mp), dtype=float)
    return SpectralSample(points, EIGENVALUES, N=count, seed=seed)
