"""
Closed-form limit law of the eigenvalues of X J X*.

The law is rotationally invariant. Its radial distribution function is
F(r) = g^-1(r^2) / gamma on the bulk, where

    g(y) = y (1 - gamma + 2y)^2 / (y + 1),   max(0, gamma - 1) <= y <= gamma,

plus an atom of mass 1 - 1/gamma at the origin when gamma > 1.
"""

import logging
from typing import Dict, Union

import numpy as np
from scipy.optimize import brentq

from ..spectra import EIGENVALUES, RadialEcdf, SpectralSample
from ..utils.errors import DomainError, UnboundedDensityError
from ..utils.seeding import STREAM_REFERENCE, make_rng

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# Relative slack when checking that an argument lies in a closed interval.
_DOMAIN_SLACK = 1e-12
# Below this radius the gamma = 1 density is reported as unbounded.
DENSITY_FLOOR = 1e-6


class LsdModel:
    """Limit spectral law for the ratio gamma = N / n."""

    def __init__(self, gamma: float) -> None:
        """
        Initialize the model and its derived constants.

        Args:
            gamma: Dimension ratio N / n, strictly positive
        """
        gamma = float(gamma)
        if not np.isfinite(gamma) or gamma <= 0:
            raise DomainError(f"gamma must be a positive finite number, got {gamma}")
        self.gamma = gamma
        self.y_lo = max(0.0, gamma - 1.0)
        self.y_hi = gamma
        self.r_inner = (gamma - 1.0) ** 1.5 / np.sqrt(gamma) if gamma > 1 else 0.0
        self.r_outer = float(np.sqrt(gamma * (gamma + 1.0)))
        self.atom0 = 1.0 - 1.0 / gamma if gamma > 1 else 0.0
        self.t_lo = self.r_inner**2
        self.t_hi = gamma * (gamma + 1.0)
        logger.debug(
            f"LsdModel initialized: gamma={gamma:.6g}, r_inner={self.r_inner:.6g}, "
            f"r_outer={self.r_outer:.6g}, atom0={self.atom0:.6g}"
        )

    def __repr__(self) -> str:
        return f"LsdModel(gamma={self.gamma!r})"

    def support(self) -> Dict[str, float]:
        """Support radii and zero atom, for figure overlays."""
        return {
            "gamma": self.gamma,
            "r_inner": float(self.r_inner),
            "r_outer": self.r_outer,
            "atom0": self.atom0,
        }


def _in_interval(x: np.ndarray, lo: float, hi: float) -> bool:
    slack = _DOMAIN_SLACK * max(1.0, abs(hi))
    return bool(np.all((x >= lo - slack) & (x <= hi + slack)))


def _g(y: ArrayLike, gamma: float) -> ArrayLike:
    return y * (1.0 - gamma + 2.0 * y) ** 2 / (y + 1.0)


def _scalar(values: np.ndarray) -> ArrayLike:
    return float(values) if np.ndim(values) == 0 else values


def g_forward(y: ArrayLike, model: LsdModel) -> ArrayLike:
    """g(y) = y (1 - gamma + 2y)^2 / (y + 1) on [max(0, gamma - 1), gamma]."""
    y = np.asarray(y, dtype=float)
    if not _in_interval(y, model.y_lo, model.y_hi):
        raise DomainError(f"g is defined on [{model.y_lo:.6g}, {model.y_hi:.6g}], got {y}")
    return _scalar(_g(np.clip(y, model.y_lo, model.y_hi), model.gamma))


def g_derivative(y: ArrayLike, model: LsdModel) -> ArrayLike:
    """g'(y) = a (a + 4y(y + 1)) / (y + 1)^2 with a = 1 - gamma + 2y."""
    y = np.asarray(y, dtype=float)
    if not _in_interval(y, model.y_lo, model.y_hi):
        raise DomainError(f"g' is defined on [{model.y_lo:.6g}, {model.y_hi:.6g}], got {y}")
    a = 1.0 - model.gamma + 2.0 * y
    return _scalar(a * (a + 4.0 * y * (y + 1.0)) / (y + 1.0) ** 2)


def _g_inverse_scalar(tval: float, model: LsdModel) -> float:
    if tval <= model.t_lo:
        return model.y_lo
    if tval >= model.t_hi:
        return model.y_hi
    gamma = model.gamma
    return float(brentq(lambda y: _g(y, gamma) - tval, model.y_lo, model.y_hi, xtol=1e-15, maxiter=200))


def g_inverse(tval: ArrayLike, model: LsdModel) -> ArrayLike:
    """
    Monotone inverse of g on [max(0, gamma - 1)^3 / gamma, gamma (gamma + 1)].

    g is increasing on its interval, so Brent's method on the full bracket
    always finds the unique root.
    """
    tval = np.asarray(tval, dtype=float)
    if not _in_interval(tval, model.t_lo, model.t_hi):
        raise DomainError(f"g^-1 is defined on [{model.t_lo:.6g}, {model.t_hi:.6g}], got {tval}")
    if tval.ndim == 0:
        return _g_inverse_scalar(float(tval), model)
    flat = np.array([_g_inverse_scalar(float(t), model) for t in tval.ravel()])
    return flat.reshape(tval.shape)


def g_inverse_gamma_one(tval: ArrayLike) -> ArrayLike:
    """
    Cube-root closed form of g^-1 for gamma = 1, valid on [0, 2].

    g^-1(t) = t^(1/3) / 2 ([1 + s]^(1/3) + [1 - s]^(1/3)),  s = sqrt(1 - t/27).
    """
    tval = np.asarray(tval, dtype=float)
    if not _in_interval(tval, 0.0, 2.0):
        raise DomainError(f"The gamma = 1 closed form is valid on [0, 2], got {tval}")
    tval = np.clip(tval, 0.0, 2.0)
    s = np.sqrt(1.0 - tval / 27.0)
    # 1 - s without cancellation
    minus = (tval / 27.0) / (1.0 + s)
    return _scalar(np.cbrt(tval) / 2.0 * (np.cbrt(1.0 + s) + np.cbrt(minus)))


def lsd_cdf(r: ArrayLike, model: LsdModel) -> ArrayLike:
    """
    F(r) = mu({|z| <= r}).

    gamma <= 1:  g^-1(r^2) / gamma up to the outer radius, 1 beyond.
    gamma > 1:   1 - 1/gamma on [0, r_inner], g^-1(r^2) / gamma on the ring, 1 beyond.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("The radial distribution function is defined for r >= 0")
    s = np.clip(r**2, model.t_lo, model.t_hi)
    values = np.asarray(g_inverse(s, model), dtype=float) / model.gamma
    values = np.where(r > model.r_outer, 1.0, values)
    if model.gamma > 1:
        values = np.where(r <= model.r_inner, model.atom0, values)
    return _scalar(np.clip(values, 0.0, 1.0))


def lsd_density(z_abs: ArrayLike, model: LsdModel) -> ArrayLike:
    """
    Density of mu with respect to Lebesgue measure on C, as a function of |z|.

    f = 1 / (gamma pi g'(g^-1(|z|^2))) on the open bulk annulus, 0 elsewhere.
    """
    z_abs = np.asarray(z_abs, dtype=float)
    if np.any(z_abs <= 0):
        raise DomainError("The density is evaluated at |z| > 0")
    if model.gamma == 1.0 and np.any(z_abs < DENSITY_FLOOR):
        raise UnboundedDensityError(
            f"For gamma = 1 the density diverges at the origin; |z| must be >= {DENSITY_FLOOR:g}"
        )
    s = z_abs**2
    inside = (s > model.t_lo) & (s < model.t_hi)
    y = np.asarray(g_inverse(np.clip(s, model.t_lo, model.t_hi), model), dtype=float)
    slope = np.asarray(g_derivative(y, model), dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.where(inside, 1.0 / (model.gamma * np.pi * slope), 0.0)
    return _scalar(values)


def lsd_quantile(u: ArrayLike, model: LsdModel) -> ArrayLike:
    """
    Generalized inverse of F.

    u <= 1 - 1/gamma (gamma > 1) falls in the atom and maps to 0; otherwise
    the radius is sqrt(g(gamma u)).
    """
    u = np.asarray(u, dtype=float)
    if np.any((u < 0) | (u > 1)):
        raise DomainError("Quantile levels must lie in [0, 1]")
    y = np.clip(model.gamma * u, model.y_lo, model.y_hi)
    radii = np.sqrt(_g(y, model.gamma))
    if model.gamma > 1:
        radii = np.where(u <= model.atom0, 0.0, radii)
    return _scalar(radii)


def sample_lsd(model: LsdModel, count: int, seed: int = 0, stream: int = STREAM_REFERENCE) -> SpectralSample:
    """
    Exact draws from mu: r = F^-1(U), theta uniform on [0, 2 pi).

    Points in the atom are exactly 0.
    """
    if count < 1:
        raise DomainError(f"Sample size must be >= 1, got {count}")
    rng = make_rng(seed, stream, 0)
    u = rng.random(count)
    theta = 2.0 * np.pi * rng.random(count)
    radii = np.asarray(lsd_quantile(u, model), dtype=float)
    points = np.where(radii > 0, radii * np.exp(1j * theta), 0j)
    return SpectralSample(points.astype(np.complex128), EIGENVALUES, N=count, seed=seed)


def sup_distance(R: RadialEcdf, model: LsdModel, zero_tol: float = 1e-8) -> float:
    """
    Kolmogorov distance sup_r |ECDF(r) - F(r)|.

    Radii below ``zero_tol`` times the largest radius are the numerical zeros
    of a rank-deficient matrix and are counted at r = 0. F is continuous on
    (0, inf), so the supremum is attained at r = 0 or at a jump of the ECDF
    (one of its two one-sided values).
    """
    radii = np.array(R.radii, dtype=float)
    m = radii.size
    if m == 0:
        raise DomainError("Empty radial ECDF")
    if radii[-1] > 0:
        radii[radii <= zero_tol * radii[-1]] = 0.0
    F = np.asarray(lsd_cdf(radii, model), dtype=float)
    right = np.searchsorted(radii, radii, side="right") / m
    left = np.searchsorted(radii, radii, side="left") / m
    gaps = np.abs(right - F)
    positive = radii > 0
    if np.any(positive):
        gaps = np.concatenate([gaps, np.abs(left[positive] - F[positive])])
    at_zero = abs(np.count_nonzero(radii == 0) / m - model.atom0)
    return float(max(gaps.max(), at_zero))
