"""
xjx-spectra
Spectral laws, master equations and whiteness tests for the one-step sample
autocovariance ensemble X J X*.
"""

__version__ = "0.1.0"
__author__ = "xjx-spectra developers"
__license__ = "MIT"

import logging
import os
from pathlib import Path

# Setup base paths
ROOT_DIR = Path(__file__).parent.parent
OUTPUT_DIR = Path(os.getenv("XJX_OUTPUT_DIR", ROOT_DIR / "output"))

TOOL_NAME = "xjx-spectra"

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())
