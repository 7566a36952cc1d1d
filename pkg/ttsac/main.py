"""
TT-SAC Laboratory CLI.

This is the main entry point of the verification laboratory. It parses the
command line, runs one experiment suite, emits the records and maps the
outcome to the exit status: 0 when every check passes, 1 for usage and I/O
errors, 2 when a numerical check fails.
"""

import sys
from pathlib import Path
from typing import List, Optional, TextIO

from ttsac.core.config import settings
from ttsac.core.errors import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, LabError, UsageError
from ttsac.routes.parser import overrides_from_args, parse_args
from ttsac.routes.suites import execute_suite, parse_config
from ttsac.schemas.experiment import ErrorResponse
from ttsac.utils.emitters import emit, write_svg
from ttsac.utils.logger import logger


def _read_config(path: Optional[str]) -> Optional[str]:
    if path is None:
        return None
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror or exc}") from exc


def report_error(response: ErrorResponse, stream: TextIO) -> None:
    """Print the error payload as one JSON line."""
    stream.write(response.model_dump_json() + "\n")
    stream.flush()


def lab_exception_handler(exc: LabError, stream: TextIO) -> int:
    """
    Handler for errors raised on purpose by the laboratory.

    Args:
        exc: The raised error.
        stream: Destination of the error payload.

    Returns:
        The error's exit code.
    """
    logger.error(f"{exc.error_type}: {exc.message}")
    report_error(
        ErrorResponse(error=exc.error_type, message=exc.message, details=exc.details), stream
    )
    return exc.exit_code


def global_exception_handler(exc: Exception, stream: TextIO) -> int:
    """
    Global exception handler for unhandled errors.

    Args:
        exc: The exception that was raised.
        stream: Destination of the error payload.

    Returns:
        EXIT_USAGE.
    """
    logger.opt(exception=exc).error(f"Unhandled exception: {exc}")
    report_error(
        ErrorResponse(
            error="InternalError",
            message="An unexpected error occurred",
            details=str(exc) if settings.APP_DEBUG else None,
        ),
        stream,
    )
    return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one suite from the command line.

    Args:
        argv: Arguments without the program name, ``sys.argv[1:]`` by default.

    Returns:
        Process exit status.
    """
    try:
        args = parse_args(argv)
        overrides = overrides_from_args(args)
        overrides["suite"] = args.suite
        cfg = parse_config(_read_config(args.config), overrides)
        logger.info(f"Starting suite {cfg.suite.value} with seed {cfg.seed}")

        outcome = execute_suite(cfg)
        emit(outcome.records, cfg.format, cfg.output, sys.stdout)
        if cfg.plot is not None:
            if outcome.plot is None:
                logger.warning(f"the {cfg.suite.value} suite has no plot; --plot ignored")
            else:
                write_svg(outcome.plot, cfg.plot)
    except LabError as exc:
        return lab_exception_handler(exc, sys.stderr)
    except Exception as exc:
        return global_exception_handler(exc, sys.stderr)

    if not outcome.passed:
        logger.warning(f"Suite {cfg.suite.value} has failing checks")
        return EXIT_CHECK_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
