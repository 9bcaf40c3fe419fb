"""
Moving-average time series and their sample autocovariance matrices.

All lags are taken circularly (mod n).
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import toeplitz

from ..utils.errors import DomainError, ShapeMismatchError
from ..utils.seeding import STREAM_DATA
from .entries import EntryLaw, MatrixShape, _freeze, generate_X

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MaModel:
    """y_t = sum_i B_i w_{t-i}, i = 0..p, for N-dimensional observations over n times."""

    coeffs: Tuple[np.ndarray, ...]
    N: int
    n: int

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise DomainError("MA model needs at least B_0")
        if self.N < 1 or self.n < 1:
            raise DomainError(f"MA model needs N, n >= 1, got ({self.N}, {self.n})")
        for i, B in enumerate(self.coeffs):
            if B.shape != (self.N, self.N):
                raise ShapeMismatchError(f"B_{i} has shape {B.shape}, expected ({self.N}, {self.N})")

    @property
    def p(self) -> int:
        return len(self.coeffs) - 1

    @property
    def shape(self) -> MatrixShape:
        return MatrixShape(self.N, self.n)

    @property
    def is_white(self) -> bool:
        """True for the null model (B_0 = I and every lagged coefficient zero)."""
        if not np.array_equal(self.coeffs[0], np.eye(self.N)):
            return False
        return all(not np.any(B) for B in self.coeffs[1:])


def white_noise_model(N: int, n: int) -> MaModel:
    """H0 model: p = 0, B_0 = I."""
    return MaModel((np.eye(N, dtype=np.complex128),), N, n)


def ma1_model(N: int, n: int, B1: np.ndarray) -> MaModel:
    """MA(1) model with B_0 = I."""
    return MaModel((np.eye(N, dtype=np.complex128), np.asarray(B1, dtype=np.complex128)), N, n)


def identity_B1(N: int, alpha2: float) -> np.ndarray:
    """B_1 = alpha I with alpha^2 = ``alpha2``."""
    if alpha2 < 0:
        raise DomainError(f"alpha^2 must be nonnegative, got {alpha2}")
    return _freeze(np.sqrt(alpha2) * np.eye(N, dtype=np.complex128))


def make_toeplitz_B1(N: int, target_norm: float) -> np.ndarray:
    """
    Toeplitz B_1 with b_ij = alpha' exp(-8|i-j|/N).

    alpha' is fixed by the trace condition tr(B_1 B_1*) / N = ``target_norm``.
    """
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    if target_norm <= 0:
        raise DomainError(f"Target normalization must be positive, got {target_norm}")
    base = toeplitz(np.exp(-8.0 * np.arange(N) / N))
    alpha = np.sqrt(target_norm * N / np.sum(base**2))
    logger.debug(f"Toeplitz B_1 with N={N}: alpha'={alpha:.6g}")
    return _freeze((alpha * base).astype(np.complex128))


def filter_series(model: MaModel, W: np.ndarray) -> np.ndarray:
    """Apply the MA filter to a given innovation matrix W (N x n), circular lags."""
    if W.shape != (model.N, model.n):
        raise ShapeMismatchError(f"Innovations have shape {W.shape}, expected ({model.N}, {model.n})")
    Y = np.zeros(W.shape, dtype=np.complex128)
    for lag, B in enumerate(model.coeffs):
        if not np.any(B):
            continue
        # column t of the rolled matrix is w_{t-lag}
        Y += B @ np.roll(W, lag, axis=1)
    return _freeze(Y)


def simulate_series(
    model: MaModel,
    law: Optional[EntryLaw] = None,
    seed: int = 0,
    trial: int = 0,
    stream: int = STREAM_DATA,
) -> np.ndarray:
    """
    Simulate the N x n observation matrix [y_0 ... y_{n-1}].

    The innovations are W = sqrt(n) X with X drawn by ``generate_X`` from the
    same (seed, stream, trial), so p = 0, B_0 = I returns exactly sqrt(n) X.
    """
    X = generate_X(model.shape, law, seed=seed, trial=trial, stream=stream)
    return filter_series(model, np.sqrt(model.n) * X)


def _check_observations(Y_obs: np.ndarray) -> None:
    if Y_obs.ndim != 2:
        raise ShapeMismatchError(f"Observations must be an N x n matrix, got shape {Y_obs.shape}")


def autocov_1(Y_obs: np.ndarray) -> np.ndarray:
    """R_1 = (1/n) sum_t y_t y_{t-1}^*, t taken mod n."""
    _check_observations(Y_obs)
    n = Y_obs.shape[1]
    return _freeze(Y_obs @ np.roll(Y_obs, 1, axis=1).conj().T / n)


def autocov_01(Y_obs: np.ndarray) -> np.ndarray:
    """2N x 2N covariance of the stacked vectors [y_t; y_{t-1}], t taken mod n."""
    _check_observations(Y_obs)
    n = Y_obs.shape[1]
    Z = np.vstack([Y_obs, np.roll(Y_obs, 1, axis=1)])
    R = Z @ Z.conj().T / n
    return _freeze((R + R.conj().T) / 2.0)

