"""
ROC curves of a whiteness test against a moving-average alternative.
"""

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..ensemble import MaModel, white_noise_model
from ..utils.errors import ConfigError
from ..utils.seeding import STREAM_ALTERNATIVE, STREAM_CALIBRATION
from .calibration import TestSpec, simulate_statistics

logger = logging.getLogger(__name__)

MIN_TRIALS_PER_SIDE = 50


@dataclass(frozen=True)
class RocCurve:
    """(fpr, tpr) staircase from (0, 0) to (1, 1) and its trapezoid area."""

    points: np.ndarray
    auc: float

    @property
    def fpr(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def tpr(self) -> np.ndarray:
        return self.points[:, 1]


def auc(points: np.ndarray) -> float:
    """Trapezoid area under a curve sorted by fpr."""
    points = np.asarray(points, dtype=float)
    x, y = points[:, 0], points[:, 1]
    return float(np.sum(np.diff(x) * (y[1:] + y[:-1]) / 2.0))


def roc_from_statistics(null: Sequence[float], alternative: Sequence[float]) -> RocCurve:
    """
    Sweep the threshold over every pooled statistic, rejecting at stat >= c.

    Tied statistics move fpr and tpr together, so the area counts ties as one half.
    """
    null = np.asarray(null, dtype=float)
    alternative = np.asarray(alternative, dtype=float)
    thresholds = np.unique(np.concatenate([null, alternative]))[::-1]
    fpr = np.array([np.mean(null >= c) for c in thresholds])
    tpr = np.array([np.mean(alternative >= c) for c in thresholds])
    points = np.column_stack([np.concatenate([[0.0], fpr]), np.concatenate([[0.0], tpr])])
    return RocCurve(points, auc(points))


def roc(spec: TestSpec, alternative: MaModel, trials_per_side: int = 200, jobs: int = 1) -> RocCurve:
    """
    ROC of ``spec`` against ``alternative``.

    Null trials come from the calibration stream and alternative trials from
    their own stream, both under ``spec.seed``.
    """
    if trials_per_side < MIN_TRIALS_PER_SIDE:
        raise ConfigError(f"ROC needs at least {MIN_TRIALS_PER_SIDE} trials per side, got {trials_per_side}")
    null_model = white_noise_model(spec.shape.N, spec.shape.n)
    null = simulate_statistics(spec, null_model, trials_per_side, spec.seed, STREAM_CALIBRATION, jobs)
    alt = simulate_statistics(spec, alternative, trials_per_side, spec.seed, STREAM_ALTERNATIVE, jobs)
    curve = roc_from_statistics(null, alt)
    logger.info(f"{spec.name}: AUC {curve.auc:.4f} over {trials_per_side} trials per side")
    return curve
