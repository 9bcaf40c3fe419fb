"""
Transport Module
Exact 2-Wasserstein distance between equal-size point clouds.
"""

import logging

from .wasserstein import (
    ORACLE_MAX_SIZE,
    Matching,
    PointCloud,
    optimal_matching,
    wasserstein2,
    wasserstein2_oracle,
)

logger = logging.getLogger(__name__)

__all__ = [
    "ORACLE_MAX_SIZE",
    "Matching",
    "PointCloud",
    "optimal_matching",
    "wasserstein2",
    "wasserstein2_oracle",
]
