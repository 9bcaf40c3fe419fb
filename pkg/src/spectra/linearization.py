"""
Smallest singular value of X A X* - z and its linearization.
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from ..ensemble import EntryLaw, MatrixShape, generate_X, smooth_X
from ..utils.errors import DomainError, NumericalFailure, ShapeMismatchError, SingularMatrixError
from ..utils.seeding import run_trials

logger = logging.getLogger(__name__)

SMIN_THRESHOLDS = (1e-6, 1e-4, 1e-2, 1e-1)


def _smallest_singular_value(M: np.ndarray) -> float:
    try:
        return float(scipy.linalg.svdvals(M)[-1])
    except (np.linalg.LinAlgError, ValueError) as e:
        logger.error(f"SVD failed on a {M.shape} matrix: {e}")
        raise NumericalFailure(f"SVD failed: {e}", {"shape": tuple(M.shape)}) from e


def _validate_A(A: np.ndarray, n: int) -> None:
    if A.shape != (n, n):
        raise ShapeMismatchError(f"A must be {n} x {n}, got shape {A.shape}")
    s = scipy.linalg.svdvals(A)
    if s[-1] <= np.finfo(float).eps * max(s[0], 1.0) * n:
        raise DomainError(f"A must have singular values bounded away from zero, got s_min(A)={s[-1]:.3g}")


def smin_experiment(
    shape: MatrixShape,
    law: Optional[EntryLaw],
    A: np.ndarray,
    z: complex,
    trials: int,
    seed: int = 0,
    smooth: bool = False,
    jobs: int = 1,
) -> List[float]:
    """
    Smallest singular value of X A X* - z over independent draws of X.

    Args:
        shape: Dimensions of X
        law: Entry law (complex Gaussian by default)
        A: n x n matrix with singular values bounded away from 0 and infinity
        z: Shift
        trials: Number of independent draws
        seed: Master seed; trial i uses the stream (seed, data, i)
        smooth: Replace X by its Gaussian-smoothed version before each trial
        jobs: Worker count

    Returns:
        One s_min value per trial
    """
    if trials < 1:
        raise DomainError(f"Need at least one trial, got {trials}")
    _validate_A(A, shape.n)
    identity = np.eye(shape.N)

    def trial(index: int) -> float:
        X = generate_X(shape, law, seed=seed, trial=index)
        if smooth:
            X = smooth_X(X, seed=seed, trial=index)
        return _smallest_singular_value(X @ A @ X.conj().T - z * identity)

    values = run_trials(trial, range(trials), jobs)
    logger.info(
        f"s_min experiment at (N, n)=({shape.N}, {shape.n}), z={z}: "
        f"median {np.median(values):.3g} over {trials} trials"
    )
    return values


def smin_tail_curve(values: Sequence[float], thresholds: Sequence[float] = SMIN_THRESHOLDS) -> List[float]:
    """Empirical P[s_min <= t] for each threshold t."""
    values = np.asarray(values, dtype=float)
    return [float(np.mean(values <= t)) for t in thresholds]


def linearization_check(X: np.ndarray, A: np.ndarray, z: complex) -> Tuple[float, float]:
    """
    Compare ||(X A X* - z)^-1|| with ||H^-1||, H = [[A^-1, X*], [X, z]].

    The first is a block of the second (partitioned inverse formula), so it
    can never be larger.

    Returns:
        (||(X A X* - z)^-1||, ||H^-1||)
    """
    N, n = X.shape
    if A.shape != (n, n):
        raise ShapeMismatchError(f"A must be {n} x {n}, got shape {A.shape}")
    if z == 0:
        raise DomainError("Linearization needs z != 0")
    try:
        A_inv = scipy.linalg.inv(A)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise SingularMatrixError(f"A is singular: {e}", {"shape": tuple(A.shape)}) from e

    M = X @ A @ X.conj().T - z * np.eye(N)
    H = np.block([[A_inv, X.conj().T], [X, z * np.eye(N)]])
    s_M = _smallest_singular_value(M)
    s_H = _smallest_singular_value(H)
    if s_M == 0.0 or s_H == 0.0:
        raise SingularMatrixError(
            "X A X* - z or its linearization is singular", {"s_min_M": s_M, "s_min_H": s_H, "z": complex(z)}
        )
    return 1.0 / s_M, 1.0 / s_H
