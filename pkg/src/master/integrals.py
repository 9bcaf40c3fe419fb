"""
Angular integrals of the master equations and their residue closed forms.

    I(a, u) = 1/(2 pi) int d theta / (a^2 + |1 + u e^{i theta}|^2)
    J(a, u) = 1/(2 pi) int e^{i theta} d theta / (a^2 + |1 + u e^{i theta}|^2)
"""

import logging
from typing import Tuple, Union

import numpy as np

from ..utils.errors import DomainError

logger = logging.getLogger(__name__)

Number = Union[float, complex, np.ndarray]


def _discriminant(a: Number, u: Number) -> np.ndarray:
    # (a^2 + |u|^2 + 1)^2 - 4|u|^2, factored so that it never cancels
    a2 = np.abs(a) ** 2
    m = np.abs(u)
    delta = (a2 + (1.0 - m) ** 2) * (a2 + (1.0 + m) ** 2)
    if np.any(delta <= 0):
        raise DomainError("The integrals are singular at a = 0, |u| = 1")
    return delta


def _scalar(values: np.ndarray):
    return values.item() if np.ndim(values) == 0 else values


def integral_I(a: Number, u: Number) -> Number:
    """I(a, u) = 1 / sqrt((a^2 + |u|^2 + 1)^2 - 4|u|^2)."""
    return _scalar(1.0 / np.sqrt(_discriminant(a, u)))


def integral_J(a: Number, u: Number) -> Number:
    """
    J(a, u) = (1 / 2u) (1 - c / sqrt(D)),  c = a^2 + |u|^2 + 1.

    Evaluated as -2 conj(u) / (sqrt(D) (sqrt(D) + c)), which is the same
    quantity without the 0/0 at u = 0 (where J = 0).
    """
    u = np.asarray(u, dtype=np.complex128)
    root = np.sqrt(_discriminant(a, u))
    c = np.abs(a) ** 2 + np.abs(u) ** 2 + 1.0
    return _scalar(-2.0 * np.conj(u) / (root * (root + c)))


def uv_rhs(h: float, d: complex) -> Tuple[complex, complex]:
    """
    Right-hand sides u(h, d) and v(h, d) of the master equations.

        u = (h^2 + |d|^2) I(h, d) + d J(h, d)     (real)
        v = h conj(J(h, d))
    """
    I = integral_I(h, d)
    J = integral_J(h, d)
    u = (h**2 + abs(d) ** 2) * I + d * J
    v = h * np.conj(J)
    return complex(u), complex(v)


def angular_quadrature(a: float, u: complex, nodes: int = 4096) -> Tuple[complex, complex]:
    """
    Periodic trapezoid approximations of I(a, u) and J(a, u).

    The integrands are smooth and periodic, so the rule converges
    geometrically in ``nodes``.
    """
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    phase = np.exp(1j * theta)
    denominator = a**2 + np.abs(1.0 + u * phase) ** 2
    return complex(np.mean(1.0 / denominator)), complex(np.mean(phase / denominator))
