"""
Suite Routes Module.

This module turns config documents and flags into a validated
ExperimentConfig and routes it to the suite's controller. Values are merged
in increasing precedence: suite preset, config file, command line flags.
"""

import copy
import json
from typing import Any, Dict, List, Mapping, Optional

from pydantic import ValidationError

from ttsac.core.errors import UsageError
from ttsac.schemas.experiment import ExperimentConfig, ExperimentRecord, Suite, SuiteOutcome
from ttsac.utils.dependencies import get_controller
from ttsac.utils.logger import logger

SUITE_PRESETS: Dict[Suite, Dict[str, Any]] = {
    Suite.COVARIANCE: {"trials": 50_000, "system": {"family": "affine"}},
    Suite.CONTRACTION: {"passes": 6, "system": {"family": "affine"}},
    Suite.BOUND: {
        "families": ["affine", "nonlinear", "linear-pipeline"],
        "k_values": [1, 2, 4, 8],
    },
    Suite.BIAS_VARIANCE: {"system": {"family": "linear-pipeline", "drift": 0.1}},
    Suite.K_SWEEP: {
        "k_max": 12,
        "system": {"family": "linear-pipeline", "drift": 0.2, "rho": 0.0},
    },
    Suite.PIPELINE: {
        "trials": 50,
        "length": 40,
        "k": 4,
        "system": {"family": "linear-pipeline", "drift": 0.1},
    },
}
"""Per-suite defaults applied beneath the config file and the flags."""


def deep_merge(base: Mapping[str, Any], update: Mapping[str, Any]) -> Dict[str, Any]:
    """Merge ``update`` into a copy of ``base``; nested dicts merge key by key."""
    merged = copy.deepcopy(dict(base))
    for key, value in update.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), Mapping):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def _load_document(text: Optional[str]) -> Dict[str, Any]:
    if text is None or not text.strip():
        return {}
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(
            f"config is not valid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})"
        ) from exc
    if not isinstance(document, dict):
        raise UsageError("config must be a JSON object")
    return document


def _resolve_suite(value: Any) -> Suite:
    if value is None:
        raise UsageError("missing required field 'suite'")
    try:
        return Suite(value)
    except ValueError as exc:
        legal = ", ".join(suite.value for suite in Suite)
        raise UsageError(f"unknown suite {value!r}; legal suites are {legal}") from exc


def _describe(exc: ValidationError) -> List[Dict[str, Any]]:
    return [
        {"field": ".".join(str(part) for part in error["loc"]), "message": error["msg"]}
        for error in exc.errors()
    ]


def parse_config(
    text: Optional[str] = None, overrides: Optional[Mapping[str, Any]] = None
) -> ExperimentConfig:
    """
    Build the experiment config from a JSON document and flag overrides.

    Args:
        text: JSON config document (may be absent).
        overrides: Values taken from the command line; they win over the document.

    Returns:
        Validated ExperimentConfig with defaults and suite presets filled in.

    Raises:
        UsageError: For an unknown or missing suite, malformed JSON, or any
            field that fails validation (the message names the field).
    """
    document = _load_document(text)
    flags = dict(overrides or {})
    suite = _resolve_suite(flags.get("suite", document.get("suite")))

    merged = deep_merge(SUITE_PRESETS[suite], document)
    merged = deep_merge(merged, flags)
    merged["suite"] = suite.value
    family = flags.get("system", {}).get("family")
    if suite is Suite.BOUND and family is not None and "families" not in flags:
        merged["families"] = [family]

    try:
        cfg = ExperimentConfig.model_validate(merged)
    except ValidationError as exc:
        problems = _describe(exc)
        summary = "; ".join(f"{item['field']}: {item['message']}" for item in problems)
        raise UsageError(f"invalid config: {summary}", details=problems) from exc
    logger.debug(f"Parsed config: {cfg.model_dump(mode='json')}")
    return cfg


def execute_suite(cfg: ExperimentConfig) -> SuiteOutcome:
    """
    Run the suite named by ``cfg``.

    Args:
        cfg: Validated experiment config.

    Returns:
        SuiteOutcome with the records and the optional plot.
    """
    controller = get_controller(cfg.suite)
    outcome = controller.execute(cfg)
    failed = sum(not record.passed for record in outcome.records)
    logger.info(
        f"Suite {cfg.suite.value} finished: {len(outcome.records)} record(s), {failed} failing"
    )
    return outcome


def run_suite(cfg: ExperimentConfig) -> List[ExperimentRecord]:
    """Records of the suite named by ``cfg``; deterministic given the seed."""
    return execute_suite(cfg).records
