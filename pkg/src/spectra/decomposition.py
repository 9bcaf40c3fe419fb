"""
Eigenvalues, singular values and empirical spectral measures.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np
import scipy.linalg

from ..utils.errors import DomainError, NumericalFailure, ShapeMismatchError

logger = logging.getLogger(__name__)

EIGENVALUES = "eigenvalues"
SINGULAR_VALUES = "singular-values"


@dataclass(frozen=True)
class SpectralSample:
    """
    Multiset of spectral points with the metadata of the matrix they came from.

    Singular values are stored in descending order (s_0 >= ... >= s_{N-1}).
    """

    points: np.ndarray
    kind: str = EIGENVALUES
    N: Optional[int] = None
    n: Optional[int] = None
    seed: Optional[int] = None
    z_shift: Optional[complex] = None

    def __post_init__(self) -> None:
        if self.kind not in (EIGENVALUES, SINGULAR_VALUES):
            raise DomainError(f"Unknown spectral sample kind '{self.kind}'")
        self.points.setflags(write=False)

    def __len__(self) -> int:
        return int(self.points.size)

    @property
    def radii(self) -> np.ndarray:
        return np.abs(self.points)


@dataclass(frozen=True)
class RadialEcdf:
    """Empirical distribution of |lambda|, a step of height 1/m at each sorted radius."""

    radii: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return int(self.radii.size)

    def __call__(self, r: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        return ecdf_at(self, r)


def _diagnostics(M: np.ndarray) -> dict:
    return {
        "shape": tuple(M.shape),
        "finite": bool(np.all(np.isfinite(M))),
        "frobenius_norm": float(np.linalg.norm(M)) if np.all(np.isfinite(M)) else float("nan"),
    }


def _require_square(M: np.ndarray) -> None:
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeMismatchError(f"Expected a square matrix, got shape {M.shape}")


def eigenvalues(
    M: np.ndarray,
    N: Optional[int] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
) -> SpectralSample:
    """
    All eigenvalues of a dense square matrix, with multiplicity.

    Args:
        M: Square complex matrix
        N, n, seed: Source metadata carried into the sample

    Returns:
        SpectralSample of kind ``eigenvalues``
    """
    _require_square(M)
    try:
        values = scipy.linalg.eigvals(M, check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        logger.error(f"Eigensolver failed on a {M.shape} matrix: {e}")
        raise NumericalFailure(f"Eigensolver failed: {e}", _diagnostics(M)) from e
    return SpectralSample(np.asarray(values, dtype=np.complex128), EIGENVALUES, N=N or M.shape[0], n=n, seed=seed)


def singular_values(
    M: np.ndarray,
    N: Optional[int] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    z_shift: Optional[complex] = None,
) -> SpectralSample:
    """Singular values of M in descending order."""
    if M.ndim != 2:
        raise ShapeMismatchError(f"Expected a matrix, got shape {M.shape}")
    try:
        values = scipy.linalg.svdvals(M, check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        logger.error(f"SVD failed on a {M.shape} matrix: {e}")
        raise NumericalFailure(f"SVD failed: {e}", _diagnostics(M)) from e
    return SpectralSample(
        np.sort(np.asarray(values, dtype=np.float64))[::-1].copy(),
        SINGULAR_VALUES,
        N=N or M.shape[0],
        n=n,
        seed=seed,
        z_shift=z_shift,
    )


def operator_norm(M: np.ndarray) -> float:
    """Spectral norm ||M|| (largest singular value)."""
    return float(singular_values(M).points[0]) if M.size else 0.0


def _require_eigen(S: SpectralSample) -> None:
    if S.kind != EIGENVALUES:
        raise DomainError(f"Expected an eigenvalue sample, got '{S.kind}'")


def zero_eigen_count(S: SpectralSample, tol_rel: float = 1e-8) -> int:
    """Number of eigenvalues with |lambda| <= tol_rel * max |lambda|."""
    _require_eigen(S)
    radii = S.radii
    if radii.size == 0:
        return 0
    return int(np.count_nonzero(radii <= tol_rel * radii.max()))


def radial_ecdf(S: SpectralSample) -> RadialEcdf:
    """Sorted eigenvalue moduli."""
    _require_eigen(S)
    radii = np.sort(S.radii)
    radii.setflags(write=False)
    return RadialEcdf(radii)


def ecdf_at(R: RadialEcdf, r: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """Right-continuous value of the radial ECDF at ``r``."""
    counts = np.searchsorted(R.radii, r, side="right")
    values = counts / len(R)
    return float(values) if np.ndim(values) == 0 else values


def support_violations(
    S: SpectralSample,
    r_inner: float,
    r_outer: float,
    inner_slack: float = 0.1,
    outer_slack: float = 0.15,
    zero_tol: float = 1e-6,
) -> Tuple[int, int]:
    """
    Count eigenvalues outside the (slackened) limit support.

    Returns:
        (number strictly inside the hole but not numerically zero,
         number beyond the outer radius plus slack)
    """
    _require_eigen(S)
    radii = S.radii
    in_hole = np.count_nonzero((radii > zero_tol) & (radii < r_inner - inner_slack))
    outside = np.count_nonzero(radii > r_outer + outer_slack)
    return int(in_hole), int(outside)


def hermitian_eigenvalues(M: np.ndarray, seed: Optional[int] = None) -> SpectralSample:
    """Real eigenvalues of a Hermitian matrix, ascending, stored as real points."""
    _require_square(M)
    try:
        values = scipy.linalg.eigvalsh(M, check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        logger.error(f"Hermitian eigensolver failed on a {M.shape} matrix: {e}")
        raise NumericalFailure(f"Hermitian eigensolver failed: {e}", _diagnostics(M)) from e
    return SpectralSample(np.asarray(values, dtype=np.float64), EIGENVALUES, N=M.shape[0], seed=seed)
