"""
Utilities Module
Shared errors, seeding, run settings and result files.
"""

import logging

from .errors import (
    AcceptanceFailure,
    ConfigError,
    ConvergenceError,
    DomainError,
    NumericalFailure,
    ParseError,
    ShapeMismatchError,
    SingularMatrixError,
    UnboundedDensityError,
    UnsupportedEntryLawError,
    XjxError,
)
from .output import OutputWriter, read_csv_header, read_matrix_csv, write_matrix_csv
from .seeding import make_rng, run_trials
from .settings import Settings, parse_alternative, parse_complex

logger = logging.getLogger(__name__)

__all__ = [
    "AcceptanceFailure",
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "NumericalFailure",
    "OutputWriter",
    "ParseError",
    "Settings",
    "ShapeMismatchError",
    "SingularMatrixError",
    "UnboundedDensityError",
    "UnsupportedEntryLawError",
    "XjxError",
    "make_rng",
    "parse_alternative",
    "parse_complex",
    "read_csv_header",
    "read_matrix_csv",
    "run_trials",
    "write_matrix_csv",
]
