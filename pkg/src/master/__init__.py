"""
Master Module
Closed-form angular integrals, the continuation solver for (h, d) and the
small-t limit b(z).
"""

import logging

from .integrals import angular_quadrature, integral_I, integral_J, uv_rhs
from .limit import BULK, INNER_HOLE, OUTER, LimitB, classify, limit_b
from .solver import (
    MasterOptions,
    MasterSolution,
    residuals,
    solve_master,
    solve_master_path,
    stieltjes_limit,
)

logger = logging.getLogger(__name__)

__all__ = [
    "BULK",
    "INNER_HOLE",
    "OUTER",
    "LimitB",
    "MasterOptions",
    "MasterSolution",
    "angular_quadrature",
    "classify",
    "integral_I",
    "integral_J",
    "limit_b",
    "residuals",
    "solve_master",
    "solve_master_path",
    "stieltjes_limit",
    "uv_rhs",
]
