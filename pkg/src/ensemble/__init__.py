"""
Ensemble Module
Entry laws, the circulant shift J, X J X*, moving-average series and their
sample autocovariance matrices.
"""

import logging

from .entries import (
    COMPLEX_BERNOULLI_PHASE,
    COMPLEX_GAUSSIAN,
    SUPPORTED_LAWS,
    UNIFORM_PHASE_DISC,
    EntryLaw,
    MatrixShape,
    entry_moments,
    generate_X,
    make_J,
    product_Y,
    smooth_X,
)
from .series import (
    MaModel,
    autocov_01,
    autocov_1,
    filter_series,
    identity_B1,
    ma1_model,
    make_toeplitz_B1,
    simulate_series,
    white_noise_model,
)

logger = logging.getLogger(__name__)

__all__ = [
    "COMPLEX_BERNOULLI_PHASE",
    "COMPLEX_GAUSSIAN",
    "SUPPORTED_LAWS",
    "UNIFORM_PHASE_DISC",
    "EntryLaw",
    "MatrixShape",
    "MaModel",
    "autocov_01",
    "autocov_1",
    "entry_moments",
    "filter_series",
    "generate_X",
    "identity_B1",
    "ma1_model",
    "make_J",
    "make_toeplitz_B1",
    "product_Y",
    "simulate_series",
    "smooth_X",
    "white_noise_model",
]
