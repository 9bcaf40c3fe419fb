"""
Solver for the master equations

    -t h + conj(z) d = u(h, d) - gamma
     z h + t d       = v(h, d)

in the unknowns h > 0 and d complex, at eta = it.

Writing z = rho e^{i phi}, (h, d) solves the system at z iff
(h, d e^{-i phi}) solves it at rho, with d e^{-i phi} real. The solver works
on that real two-dimensional system. For large t the map

    f(h, d) = (t^2 + rho^2)^-1 [[-t, rho], [rho, t]] (u - gamma, v)

is a contraction, so the iteration starts at t_0 >= max(10, 4 gamma, 4 rho)
from the large-t asymptote (gamma / t_0, 0) and follows the branch down to
the requested t geometrically, warm starting every step.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import root

from ..utils.errors import ConvergenceError, DomainError
from .integrals import integral_I, integral_J, uv_rhs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MasterOptions:
    """Tuning of the continuation solver."""

    tol: float = 1e-10
    t_ratio: float = 0.9
    damping: float = 0.5
    max_iter: int = 10_000
    fixed_point_budget: int = 100
    polish: bool = True
    t_start: Optional[float] = None

    def __post_init__(self) -> None:
        if not 0 < self.t_ratio < 1:
            raise DomainError(f"Continuation ratio must lie in (0, 1), got {self.t_ratio}")
        if not 0 < self.damping < 1:
            raise DomainError(f"Damping factor must lie in (0, 1), got {self.damping}")
        if self.tol < 0 or self.max_iter < 1:
            raise DomainError("Tolerance must be >= 0 and max_iter >= 1")


@dataclass(frozen=True)
class MasterSolution:
    """Solution (h(z, t), d(z, it)) with the residuals of both equations."""

    z: complex
    t: float
    gamma: float
    h: float
    d: complex
    res_u: float
    res_v: float
    iterations: int
    trajectory: List[Dict[str, float]] = field(default_factory=list, repr=False, compare=False)

    @property
    def residual(self) -> float:
        return max(self.res_u, self.res_v)

    @property
    def stieltjes(self) -> complex:
        """gamma^-1 p(z, it) = i h / gamma."""
        return 1j * self.h / self.gamma


def residuals(h: float, d: complex, z: complex, t: float, gamma: float) -> Tuple[float, float]:
    """Absolute residuals of the two master equations at (h, d)."""
    u, v = uv_rhs(h, d)
    res_u = abs(-t * h + np.conj(z) * d - u + gamma)
    res_v = abs(z * h + t * d - v)
    return float(res_u), float(res_v)


class _RealSystem:
    """The master equations at real z = rho >= 0 with real d."""

    def __init__(self, rho: float, t: float, gamma: float) -> None:
        self.rho = rho
        self.t = t
        self.gamma = gamma

    def rhs(self, h: float, d: float) -> Tuple[float, float]:
        I = integral_I(h, d)
        J = float(np.real(integral_J(h, d)))
        return (h * h + d * d) * I + d * J, h * J

    def equations(self, h: float, d: float) -> np.ndarray:
        u, v = self.rhs(h, d)
        return np.array([-self.t * h + self.rho * d - u + self.gamma, self.rho * h + self.t * d - v])

    def residual(self, h: float, d: float) -> float:
        return float(np.max(np.abs(self.equations(h, d))))

    def fixed_map(self, h: float, d: float) -> Tuple[float, float]:
        u, v = self.rhs(h, d)
        scale = 1.0 / (self.t**2 + self.rho**2)
        return (
            scale * (-self.t * (u - self.gamma) + self.rho * v),
            scale * (self.rho * (u - self.gamma) + self.t * v),
        )


def _fixed_point(system: _RealSystem, h: float, d: float, budget: int, opts: MasterOptions):
    """Damped iteration of f; a step is kept only if it lowers the residual and keeps h > 0."""
    res = system.residual(h, d)
    omega = 1.0
    used = 0
    while used < budget and res > opts.tol:
        used += 1
        fh, fd = system.fixed_map(h, d)
        h_new = h + omega * (fh - h)
        d_new = d + omega * (fd - d)
        res_new = system.residual(h_new, d_new) if h_new > 0 else np.inf
        if res_new < res:
            h, d, res = h_new, d_new, res_new
            omega = min(1.0, 2.0 * omega)
            continue
        omega *= opts.damping
        logger.debug(f"Damping at t={system.t:.4g}: omega={omega:.3g}, residual={res:.3g}")
        if omega < 1e-8:
            break
    return h, d, res, used


def _newton(system: _RealSystem, h: float, d: float):
    """Newton-type polish in (log h, d), which keeps h positive."""

    def equations(x: np.ndarray) -> np.ndarray:
        return system.equations(float(np.exp(x[0])), float(x[1]))

    result = root(equations, np.array([np.log(h), d]), method="hybr", options={"xtol": 1e-14})
    h_new, d_new = float(np.exp(result.x[0])), float(result.x[1])
    if not np.all(np.isfinite([h_new, d_new])):
        return h, d, np.inf, int(result.nfev)
    return h_new, d_new, system.residual(h_new, d_new), int(result.nfev)


def _solve_stage(system: _RealSystem, h: float, d: float, opts: MasterOptions, trajectory: List[Dict[str, float]]):
    h, d, res, used = _fixed_point(system, h, d, min(opts.fixed_point_budget, opts.max_iter), opts)
    if res > opts.tol and opts.polish:
        h_n, d_n, res_n, nfev = _newton(system, h, d)
        used += nfev
        if res_n < res:
            h, d, res = h_n, d_n, res_n
    if res > opts.tol:
        h, d, res, more = _fixed_point(system, h, d, opts.max_iter - used, opts)
        used += more
    trajectory.append({"t": system.t, "h": h, "d": d, "residual": res, "iterations": used})
    if res > opts.tol:
        logger.error(f"Master solver stalled at t={system.t:.6g}: residual {res:.3g} after {used} iterations")
        raise ConvergenceError(
            f"Master equations did not converge at t={system.t:.6g} (residual {res:.3g})",
            trajectory=trajectory,
            diagnostics={"rho": system.rho, "gamma": system.gamma, "t": system.t},
        )
    return h, d, used


def _t_schedule(t_start: float, targets: Sequence[float], ratio: float) -> List[float]:
    """Geometric grid from t_start down to min(targets), with every target inserted."""
    floor = min(targets)
    grid = [t_start]
    while grid[-1] * ratio > floor:
        grid.append(grid[-1] * ratio)
    return sorted(set(grid) | {float(t) for t in targets}, reverse=True)


def solve_master_path(
    z: complex,
    ts: Sequence[float],
    gamma: float,
    opts: Optional[MasterOptions] = None,
) -> List[MasterSolution]:
    """
    Solve the master equations at every t in ``ts`` along one continuation sweep.

    Returns:
        Solutions in the order of ``ts``
    """
    opts = opts or MasterOptions()
    if not ts:
        raise DomainError("Need at least one value of t")
    if any(t <= 0 for t in ts):
        raise DomainError(f"t must be positive, got {list(ts)}")
    if gamma <= 0:
        raise DomainError(f"gamma must be positive, got {gamma}")

    z = complex(z)
    rho, phase = abs(z), (z / abs(z) if z != 0 else 1.0 + 0j)
    t_start = max(opts.t_start or 0.0, 10.0, 4.0 * gamma, 4.0 * rho, max(ts))
    h, d = gamma / t_start, 0.0
    wanted = {float(t) for t in ts}
    found: Dict[float, MasterSolution] = {}
    trajectory: List[Dict[str, float]] = []
    total = 0

    for t in _t_schedule(t_start, ts, opts.t_ratio):
        h, d, used = _solve_stage(_RealSystem(rho, t, gamma), h, d, opts, trajectory)
        total += used
        if t in wanted:
            d_full = d * phase
            res_u, res_v = residuals(h, d_full, z, t, gamma)
            found[t] = MasterSolution(z, t, gamma, h, complex(d_full), res_u, res_v, total, list(trajectory))
            logger.debug(f"Master solution at z={z}, t={t:.4g}: h={h:.8g}, d={d_full:.8g}")

    return [found[float(t)] for t in ts]


def solve_master(z: complex, t: float, gamma: float, opts: Optional[MasterOptions] = None) -> MasterSolution:
    """
    Solve the master equations at a single (z, t).

    Args:
        z: Spectral parameter (z = 0 allowed)
        t: eta = it, t > 0
        gamma: Dimension ratio
        opts: Solver options

    Returns:
        MasterSolution with residuals below ``opts.tol``
    """
    return solve_master_path(z, [t], gamma, opts)[0]


def stieltjes_limit(z: complex, t: float, gamma: float, opts: Optional[MasterOptions] = None) -> complex:
    """Limit of (1/2N) tr Q(z, it): i h(z, t) / gamma."""
    return solve_master(z, t, gamma, opts).stieltjes
