"""
Core module initialization.
"""

from .config import Settings, settings
from .errors import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    DegenerateInputError,
    InvalidArgumentError,
    LabError,
    OutputError,
    UnsupportedOperationError,
    UsageError,
)

__all__ = [
    "Settings",
    "settings",
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_CHECK_FAILED",
    "LabError",
    "InvalidArgumentError",
    "DegenerateInputError",
    "UnsupportedOperationError",
    "UsageError",
    "OutputError",
]
