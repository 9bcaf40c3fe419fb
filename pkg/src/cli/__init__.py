"""
CLI Module
Subcommands that write figure data, run tests on user data and execute the
acceptance suite.
"""

import logging

from .commands import (
    alternative_model,
    cmd_cdf,
    cmd_master,
    cmd_roc,
    cmd_scatter,
    cmd_smin,
    cmd_test,
    linearization_pass_count,
    make_writer,
    resolve_shape,
)
from .verify import CRITERIA, CriterionResult, VerifyContext, cmd_verify, run_criteria

logger = logging.getLogger(__name__)

COMMAND_HANDLERS = {
    "scatter": cmd_scatter,
    "cdf": cmd_cdf,
    "test": cmd_test,
    "roc": cmd_roc,
    "master": cmd_master,
    "verify": cmd_verify,
    "smin": cmd_smin,
}

__all__ = [
    "COMMAND_HANDLERS",
    "CRITERIA",
    "CriterionResult",
    "VerifyContext",
    "alternative_model",
    "cmd_cdf",
    "cmd_master",
    "cmd_roc",
    "cmd_scatter",
    "cmd_smin",
    "cmd_test",
    "cmd_verify",
    "linearization_pass_count",
    "make_writer",
    "resolve_shape",
    "run_criteria",
]
