"""
Small-t limit b(z) = lim_{t -> 0} d(z, it) of the off-diagonal master trace.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..lsd import LsdModel, g_inverse
from ..utils.errors import DomainError

logger = logging.getLogger(__name__)

BULK = "bulk"
OUTER = "outer"
INNER_HOLE = "inner-hole"

# Relative tolerance for classifying |z|^2 at a ring boundary.
BOUNDARY_RTOL = 1e-12


@dataclass(frozen=True)
class LimitB:
    """b(z) with the regime of the support it was computed in."""

    z: complex
    b: complex
    regime: str


def classify(z: complex, gamma: float) -> str:
    """Regime of z: boundaries |z|^2 = (gamma - 1)^3 / gamma and gamma (gamma + 1) belong to the bulk."""
    model = LsdModel(gamma)
    s = abs(z) ** 2
    if s > model.t_hi * (1.0 + BOUNDARY_RTOL):
        return OUTER
    if gamma > 1 and s < model.t_lo * (1.0 - BOUNDARY_RTOL):
        return INNER_HOLE
    return BULK


def limit_b(z: complex, gamma: float) -> LimitB:
    """
    b(z) per regime:

        outer       -gamma / conj(z)
        bulk        -g^-1(|z|^2) / conj(z)
        inner hole  -(gamma - 1) / conj(z)     (gamma > 1)
    """
    z = complex(z)
    if z == 0:
        raise DomainError("b(z) is undefined at the origin")
    regime = classify(z, gamma)
    if regime == OUTER:
        numerator = float(gamma)
    elif regime == INNER_HOLE:
        numerator = float(gamma) - 1.0
    else:
        model = LsdModel(gamma)
        numerator = float(g_inverse(np.clip(abs(z) ** 2, model.t_lo, model.t_hi), model))
    b = -numerator / np.conj(z)
    logger.debug(f"b({z}) = {b:.8g} in the {regime} regime (gamma={gamma})")
    return LimitB(z, complex(b), regime)
