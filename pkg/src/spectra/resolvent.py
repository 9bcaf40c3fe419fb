"""
Hermitization of Y - z and normalized block traces of its resolvent.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from ..utils.errors import DomainError, NumericalFailure, ShapeMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResolventTraces:
    """
    Normalized traces of Q(z, it) = (Sigma(z) - it)^-1.

    q00, q01 and q11 are (1/n) tr of the top-left, top-right and bottom-right
    N x N blocks.
    """

    z: complex
    t: float
    q00: complex
    q01: complex
    q11: complex
    N: int
    n: int

    @property
    def half_trace(self) -> complex:
        """(1 / 2N) tr Q, the Stieltjes transform of the symmetrized singular values."""
        return self.n * (self.q00 + self.q11) / (2.0 * self.N)

    @property
    def off_diagonal_trace(self) -> complex:
        """(1 / N) tr Q_01."""
        return self.n * self.q01 / self.N


def hermitize(Y: np.ndarray, z: complex = 0.0) -> np.ndarray:
    """The 2N x 2N Hermitian matrix [[0, Y - z], [Y* - conj(z), 0]]."""
    if Y.ndim != 2 or Y.shape[0] != Y.shape[1]:
        raise ShapeMismatchError(f"Hermitization needs a square matrix, got shape {Y.shape}")
    N = Y.shape[0]
    shifted = Y - z * np.eye(N)
    Sigma = np.zeros((2 * N, 2 * N), dtype=np.complex128)
    Sigma[:N, N:] = shifted
    Sigma[N:, :N] = shifted.conj().T
    return Sigma


def resolvent_traces(Y: np.ndarray, z: complex, t: float, n: Optional[int] = None) -> ResolventTraces:
    """
    Block traces of the resolvent of hermitize(Y, z) at eta = it.

    The Hermitian matrix is diagonalized once, Sigma = V diag(lambda) V*,
    so Q = V diag(1 / (lambda - it)) V* and no product (Y - z)(Y - z)* is
    ever formed.

    Args:
        Y: Square N x N matrix
        z: Spectral shift
        t: Imaginary part of eta, strictly positive
        n: Normalization of the traces; defaults to N

    Returns:
        ResolventTraces
    """
    if t <= 0:
        raise DomainError(f"Resolvent needs eta = it in the upper half plane, got t={t}")
    Sigma = hermitize(Y, z)
    N = Y.shape[0]
    n = n or N
    try:
        lam, V = scipy.linalg.eigh(Sigma, check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        logger.error(f"Hermitian eigensolver failed at z={z}, t={t}: {e}")
        raise NumericalFailure(
            f"Resolvent evaluation failed: {e}",
            {"z": complex(z), "t": float(t), "shape": tuple(Sigma.shape), "finite": bool(np.all(np.isfinite(Sigma)))},
        ) from e
    weights = 1.0 / (lam - 1j * t)
    top, bottom = V[:N, :], V[N:, :]
    q00 = np.sum(np.sum(np.abs(top) ** 2, axis=0) * weights) / n
    q11 = np.sum(np.sum(np.abs(bottom) ** 2, axis=0) * weights) / n
    q01 = np.sum(np.sum(top * bottom.conj(), axis=0) * weights) / n
    logger.debug(f"Resolvent traces at z={z}, t={t}: q00={q00:.6g}, q01={q01:.6g}")
    return ResolventTraces(complex(z), float(t), complex(q00), complex(q01), complex(q11), N, n)
