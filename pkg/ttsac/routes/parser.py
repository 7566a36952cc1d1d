"""
Command Line Parser Module.

This module defines the command line surface of the laboratory:

    ttsac <suite> [--config PATH] [--seed N] [--out PATH] [--format csv|json]
          [--k N | --k-max N] [--trials M] [--dim D] [--rho R] [--sigma2 S]
          [--drift B] [--passes P] [--plot PATH.svg] [--family F]
          [--length T] [--streams identity,motion]

Flags left unset do not appear in the overrides, so file values and suite
presets survive.
"""

import argparse
from typing import Any, Dict, List, NoReturn, Optional

from ttsac import __version__
from ttsac.core.errors import UsageError
from ttsac.schemas.experiment import Family, OutputFormat, Suite


class LabArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message, details=self.format_usage().strip())


def build_parser() -> LabArgumentParser:
    """
    Build the argument parser.

    Returns:
        Configured LabArgumentParser.
    """
    parser = LabArgumentParser(
        prog="ttsac",
        description="Seeded verification suites for test-time self-adaptive conditioning.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("suite", choices=[suite.value for suite in Suite], help="Suite to run")
    parser.add_argument("--config", metavar="PATH", help="JSON config document")
    parser.add_argument("--seed", type=int, help="64-bit master seed")
    parser.add_argument("--out", metavar="PATH", help="Result file (stdout when absent)")
    parser.add_argument(
        "--format", choices=[fmt.value for fmt in OutputFormat], help="Result format"
    )
    window = parser.add_mutually_exclusive_group()
    window.add_argument(
        "--k",
        type=int,
        help="Frames aggregated K (the bound suite sweeps k_values from the config instead)",
    )
    window.add_argument("--k-max", type=int, dest="k_max", help="Largest K of the sweep")
    parser.add_argument("--trials", type=int, help="Monte Carlo trials M (pairs in pipeline)")
    parser.add_argument("--dim", type=int, help="Feature dimension d")
    parser.add_argument("--rho", type=float, help="AR(1) correlation in [0, 1)")
    parser.add_argument("--sigma2", type=float, help="Total per-frame variance")
    parser.add_argument(
        "--drift",
        type=float,
        help="Drift beta per frame; in the pipeline suite, the identity pull rate in [0, 1)",
    )
    parser.add_argument("--passes", type=int, help="Refinement passes")
    parser.add_argument("--plot", metavar="PATH.svg", help="SVG plot path")
    parser.add_argument(
        "--family", choices=[family.value for family in Family], help="System family"
    )
    parser.add_argument("--length", type=int, help="Sequence length T")
    parser.add_argument(
        "--streams", help="Comma-separated refined streams (identity, motion)"
    )
    return parser


_TOP_LEVEL = ("seed", "format", "k", "k_max", "trials", "dim", "passes", "length")
_SYSTEM = ("rho", "sigma2", "drift", "family")


def overrides_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    """
    Nested config overrides for every flag the user set.

    Args:
        args: Parsed namespace.

    Returns:
        Dictionary shaped like ExperimentConfig, with a ``system`` sub-dict.
    """
    overrides: Dict[str, Any] = {}
    for name in _TOP_LEVEL:
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    if args.out is not None:
        overrides["output"] = args.out
    if args.plot is not None:
        overrides["plot"] = args.plot
    if args.streams is not None:
        overrides["streams"] = [item.strip() for item in args.streams.split(",") if item.strip()]
    system = {name: getattr(args, name) for name in _SYSTEM if getattr(args, name) is not None}
    if system:
        overrides["system"] = system
    return overrides


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)
