"""
Whiteness Module
Test statistics T1/T2/T3, their Monte-Carlo calibration and ROC curves.
"""

import logging

from .calibration import (
    T1,
    T2,
    T3,
    TEST_NAMES,
    TestReport,
    TestSpec,
    calibrate,
    evaluate,
    false_positive_rate,
    p_value,
    reference_samples,
    run_test,
    simulate_statistics,
    threshold_from_table,
)
from .roc import RocCurve, auc, roc, roc_from_statistics
from .statistics import stat_T1, stat_T2, stat_T3

logger = logging.getLogger(__name__)

__all__ = [
    "T1",
    "T2",
    "T3",
    "TEST_NAMES",
    "RocCurve",
    "TestReport",
    "TestSpec",
    "auc",
    "calibrate",
    "evaluate",
    "false_positive_rate",
    "p_value",
    "reference_samples",
    "roc",
    "roc_from_statistics",
    "run_test",
    "simulate_statistics",
    "stat_T1",
    "stat_T2",
    "stat_T3",
    "threshold_from_table",
]
