"""
Spectra Module
Eigenvalue and singular-value extraction, empirical spectral measures,
hermitization/resolvent traces and the linearization experiments.
"""

import logging

from .decomposition import (
    EIGENVALUES,
    SINGULAR_VALUES,
    RadialEcdf,
    SpectralSample,
    ecdf_at,
    eigenvalues,
    hermitian_eigenvalues,
    operator_norm,
    radial_ecdf,
    singular_values,
    support_violations,
    zero_eigen_count,
)
from .linearization import SMIN_THRESHOLDS, linearization_check, smin_experiment, smin_tail_curve
from .resolvent import ResolventTraces, hermitize, resolvent_traces

logger = logging.getLogger(__name__)

__all__ = [
    "EIGENVALUES",
    "SINGULAR_VALUES",
    "SMIN_THRESHOLDS",
    "RadialEcdf",
    "ResolventTraces",
    "SpectralSample",
    "ecdf_at",
    "eigenvalues",
    "hermitian_eigenvalues",
    "hermitize",
    "linearization_check",
    "operator_norm",
    "radial_ecdf",
    "resolvent_traces",
    "singular_values",
    "smin_experiment",
    "smin_tail_curve",
    "support_violations",
    "zero_eigen_count",
]
