"""
Monte-Carlo calibration of the whiteness tests under white noise.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from ..ensemble import EntryLaw, MaModel, MatrixShape, simulate_series, white_noise_model
from ..lsd import LsdModel, MpModel, mp_sample, sample_lsd
from ..spectra import SpectralSample
from ..utils.errors import ConfigError, ShapeMismatchError
from ..utils.seeding import STREAM_CALIBRATION, STREAM_DATA, run_trials
from .statistics import stat_T1, stat_T2, stat_T3

logger = logging.getLogger(__name__)

T1 = "t1"
T2 = "t2"
T3 = "t3"

TEST_NAMES = {
    T1: "T1-eig-wasserstein",
    T2: "T2-trace",
    T3: "T3-hermitian-mp",
}

MIN_CALIBRATION_REPS = 50


@dataclass(frozen=True)
class TestSpec:
    """A whiteness test at a fixed shape, entry law and level."""

    __test__ = False

    which: str
    shape: MatrixShape
    law: Optional[EntryLaw] = None
    reference_seed: int = 0
    calibration_reps: int = 200
    level: float = 0.05
    seed: int = 0

    def __post_init__(self) -> None:
        if self.which not in TEST_NAMES:
            raise ConfigError(f"Unknown test '{self.which}', expected one of {', '.join(TEST_NAMES)}")
        if self.calibration_reps < MIN_CALIBRATION_REPS:
            raise ConfigError(
                f"Calibration needs at least {MIN_CALIBRATION_REPS} replications, got {self.calibration_reps}"
            )
        if not 0 < self.level < 1:
            raise ConfigError(f"Level must lie in (0, 1), got {self.level}")

    @property
    def name(self) -> str:
        return TEST_NAMES[self.which]


@dataclass(frozen=True)
class TestReport:
    """Outcome of one test; reject iff statistic > threshold."""

    __test__ = False

    which: str
    statistic: float
    threshold: float
    reject: bool
    p_value: float

    def to_dict(self) -> dict:
        return {
            "test": TEST_NAMES[self.which],
            "statistic": self.statistic,
            "threshold": self.threshold,
            "reject": self.reject,
            "p_value": self.p_value,
        }


@lru_cache(maxsize=32)
def _frozen_references(N: int, n: int, reference_seed: int) -> Tuple[SpectralSample, SpectralSample]:
    gamma = N / n
    mu_sample = sample_lsd(LsdModel(gamma), N, seed=reference_seed)
    mp_ref = mp_sample(MpModel.for_gamma(gamma), 2 * N, seed=reference_seed)
    logger.debug(f"Reference samples drawn for (N, n)=({N}, {n}), seed={reference_seed}")
    return mu_sample, mp_ref


def reference_samples(spec: TestSpec) -> Tuple[SpectralSample, SpectralSample]:
    """The mu-sample (size N) and MP-sample (size 2N) reused by every trial of ``spec``."""
    return _frozen_references(spec.shape.N, spec.shape.n, spec.reference_seed)


def evaluate(spec: TestSpec, Y_obs: np.ndarray) -> float:
    """Statistic of ``spec`` on an observation matrix."""
    if Y_obs.shape != (spec.shape.N, spec.shape.n):
        raise ShapeMismatchError(
            f"Observations have shape {Y_obs.shape}, test expects ({spec.shape.N}, {spec.shape.n})"
        )
    if spec.which == T2:
        return stat_T2(Y_obs)
    mu_sample, mp_ref = reference_samples(spec)
    gamma = spec.shape.gamma_float
    if spec.which == T1:
        return stat_T1(Y_obs, LsdModel(gamma), mu_sample)
    return stat_T3(Y_obs, MpModel.for_gamma(gamma), mp_ref)


def simulate_statistics(
    spec: TestSpec,
    model: MaModel,
    trials: int,
    seed: int,
    stream: int,
    jobs: int = 1,
) -> np.ndarray:
    """Statistic of ``spec`` on ``trials`` independent series drawn from ``model``."""
    if (model.N, model.n) != (spec.shape.N, spec.shape.n):
        raise ShapeMismatchError(f"Model is ({model.N}, {model.n}), test expects ({spec.shape.N}, {spec.shape.n})")
    reference_samples(spec)

    def trial(index: int) -> float:
        return evaluate(spec, simulate_series(model, spec.law, seed=seed, trial=index, stream=stream))

    return np.asarray(run_trials(trial, range(trials), jobs), dtype=float)


def threshold_from_table(null_table: Sequence[float], level: float) -> float:
    """Empirical (1 - level)-quantile of the null statistics."""
    return float(np.quantile(np.asarray(null_table, dtype=float), 1.0 - level))


def calibrate(spec: TestSpec, jobs: int = 1) -> Tuple[float, np.ndarray]:
    """
    Null table of ``spec.calibration_reps`` white-noise statistics and its cutoff.

    Returns:
        (threshold, null_table)
    """
    null_table = simulate_statistics(
        spec, white_noise_model(spec.shape.N, spec.shape.n), spec.calibration_reps, spec.seed, STREAM_CALIBRATION, jobs
    )
    threshold = threshold_from_table(null_table, spec.level)
    logger.info(
        f"{spec.name} calibrated at (N, n)=({spec.shape.N}, {spec.shape.n}): "
        f"threshold {threshold:.6g} at level {spec.level} from {spec.calibration_reps} replications"
    )
    return threshold, null_table


def p_value(statistic: float, null_table: Sequence[float]) -> float:
    """(1 + #{null >= statistic}) / (1 + reps)."""
    null_table = np.asarray(null_table, dtype=float)
    return float((1 + np.count_nonzero(null_table >= statistic)) / (1 + null_table.size))


def run_test(
    spec: TestSpec,
    Y_obs: np.ndarray,
    jobs: int = 1,
    calibration: Optional[Tuple[float, np.ndarray]] = None,
) -> TestReport:
    """Calibrate (unless a calibration is supplied) and test one observation matrix."""
    threshold, null_table = calibration or calibrate(spec, jobs)
    statistic = evaluate(spec, Y_obs)
    report = TestReport(spec.which, statistic, threshold, bool(statistic > threshold), p_value(statistic, null_table))
    logger.info(f"{spec.name}: statistic {statistic:.6g}, threshold {threshold:.6g}, reject={report.reject}")
    return report


def false_positive_rate(spec: TestSpec, trials: int, seed: int, jobs: int = 1) -> float:
    """Share of fresh white-noise trials rejected by the calibrated test."""
    threshold, _ = calibrate(spec, jobs)
    fresh = simulate_statistics(spec, white_noise_model(spec.shape.N, spec.shape.n), trials, seed, STREAM_DATA, jobs)
    rate = float(np.mean(fresh > threshold))
    logger.info(f"{spec.name}: false-positive rate {rate:.3f} over {trials} fresh trials")
    return rate
