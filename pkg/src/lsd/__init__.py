"""
LSD Module
Closed-form limit spectral law of X J X* and the Marchenko-Pastur reference law.
"""

import logging

from .marchenko import MpModel, mp_cdf, mp_density, mp_quantile, mp_sample
from .radial import (
    DENSITY_FLOOR,
    LsdModel,
    g_derivative,
    g_forward,
    g_inverse,
    g_inverse_gamma_one,
    lsd_cdf,
    lsd_density,
    lsd_quantile,
    sample_lsd,
    sup_distance,
)

logger = logging.getLogger(__name__)

__all__ = [
    "DENSITY_FLOOR",
    "LsdModel",
    "MpModel",
    "g_derivative",
    "g_forward",
    "g_inverse",
    "g_inverse_gamma_one",
    "lsd_cdf",
    "lsd_density",
    "lsd_quantile",
    "mp_cdf",
    "mp_density",
    "mp_quantile",
    "mp_sample",
    "sample_lsd",
    "sup_distance",
]
