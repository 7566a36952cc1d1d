"""
Routes module initialization.

This module contains the command line surface: argument parsing, config
ingestion and dispatch to the suite controllers.
"""

from .parser import build_parser, overrides_from_args, parse_args
from .suites import SUITE_PRESETS, execute_suite, parse_config, run_suite

__all__ = [
    "build_parser",
    "overrides_from_args",
    "parse_args",
    "SUITE_PRESETS",
    "parse_config",
    "execute_suite",
    "run_suite",
]
