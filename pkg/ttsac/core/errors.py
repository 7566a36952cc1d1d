"""
Error hierarchy module.

Every failure the laboratory raises on purpose derives from ``LabError``.
The CLI maps ``exit_code`` to the process status; numerical check failures
are not exceptions and never appear here.
"""

from typing import Any, Optional

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2


class LabError(Exception):
    """
    Base class for laboratory errors.

    Attributes:
        error_type: Short machine-readable error name.
        exit_code: Process exit status used by the CLI.
        message: Human readable description.
        details: Optional structured context.
    """

    error_type = "LabError"
    exit_code = EXIT_USAGE

    def __init__(self, message: str, details: Optional[Any] = None) -> None:
        super().__init__(message)
        self.message = message
        self.details = details


class InvalidArgumentError(LabError, ValueError):
    """An argument is out of range or has the wrong dimension."""

    error_type = "InvalidArgument"


class DegenerateInputError(LabError, ValueError):
    """Input is well formed but mathematically degenerate (e.g. a zero vector)."""

    error_type = "DegenerateInput"


class UnsupportedOperationError(LabError, NotImplementedError):
    """The operation has no closed form for the requested system family."""

    error_type = "UnsupportedOperation"


class UsageError(LabError):
    """Bad command line or configuration document."""

    error_type = "UsageError"


class OutputError(LabError):
    """A result file could not be written."""

    error_type = "OutputError"
