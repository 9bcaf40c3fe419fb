"""
Whiteness test statistics computed from an N x n observation matrix.

    T1  W2 distance between the eigenvalues of R_1 and a sample of the limit law
    T2  N^-1 tr(R_1 R_1*)
    T3  W2 distance between the eigenvalues of R_01 and a Marchenko-Pastur sample
"""

import logging

import numpy as np

from ..ensemble import autocov_01, autocov_1
from ..lsd import LsdModel, MpModel
from ..spectra import SpectralSample, eigenvalues, hermitian_eigenvalues
from ..transport import wasserstein2
from ..utils.errors import ShapeMismatchError

logger = logging.getLogger(__name__)


def _check_reference(reference: SpectralSample, expected: int, label: str) -> None:
    if len(reference) != expected:
        raise ShapeMismatchError(f"{label} reference has {len(reference)} points, expected {expected}")


def stat_T1(Y_obs: np.ndarray, model: LsdModel, reference: SpectralSample) -> float:
    """W2(eig R_1, mu-sample of size N)."""
    N = Y_obs.shape[0]
    _check_reference(reference, N, "T1")
    spectrum = eigenvalues(autocov_1(Y_obs))
    value = wasserstein2(spectrum, reference)
    logger.debug(f"T1 = {value:.6g} (gamma={model.gamma:.4g})")
    return value


def stat_T2(Y_obs: np.ndarray) -> float:
    """N^-1 ||R_1||_HS^2."""
    R = autocov_1(Y_obs)
    return float(np.sum(np.abs(R) ** 2) / Y_obs.shape[0])


def stat_T3(Y_obs: np.ndarray, mp: MpModel, reference: SpectralSample) -> float:
    """W2(eig R_01, MP-sample of size 2N); real spectra embed on the real axis."""
    N = Y_obs.shape[0]
    _check_reference(reference, 2 * N, "T3")
    spectrum = hermitian_eigenvalues(autocov_01(Y_obs))
    value = wasserstein2(spectrum, reference)
    logger.debug(f"T3 = {value:.6g} (ratio={mp.ratio:.4g})")
    return value
