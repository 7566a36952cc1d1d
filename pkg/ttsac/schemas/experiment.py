"""
Experiment harness schemas.

This module defines the experiment configuration, the flat result record,
plot descriptions and the error payload printed by the CLI.
"""

import math
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ttsac.core.config import settings

EMPIRICAL_ONLY = "empirical-only"

Scalar = Union[bool, int, float, str]


class Suite(str, Enum):
    """Experiment suites."""

    COVARIANCE = "covariance"
    CONTRACTION = "contraction"
    BOUND = "bound"
    BIAS_VARIANCE = "bias-variance"
    K_SWEEP = "k-sweep"
    PIPELINE = "pipeline"


class Family(str, Enum):
    """Synthetic system families."""

    AFFINE = "affine"
    NONLINEAR = "nonlinear"
    LINEAR_PIPELINE = "linear-pipeline"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class SystemSpec(BaseModel):
    """
    System part of an experiment config (the single nested level).

    Attributes:
        family: System family.
        spectral_scale: ||A||_2 of the affine family.
        gain: Gain c of the nonlinear family.
        weight_norm: ||W||_2 of the nonlinear family.
        rho: AR(1) correlation of the noise.
        sigma2: Total per-frame feature variance tr(Gamma_0).
        drift: Drift beta per frame (identity pull rate in the pipeline suite).
        drift_direction: Optional explicit drift direction (affine, nonlinear).
        render_dim: Render dimension p of the pipeline; defaults to max(16, d).
        motion_dim: Motion dimension m of the pipeline.
        motion_scale: Standard deviation of the zero-mean driving noise.
        identity_norm: Norm of the subject mean in the pipeline suite.
        reference_offset: Distance of the static reference from the subject mean.
    """

    model_config = ConfigDict(extra="forbid")

    family: Family = Field(default=Family.AFFINE, description="System family")
    spectral_scale: float = Field(default=0.5, ge=0.0, description="Spectral norm of A")
    gain: float = Field(default=0.8, gt=0.0, lt=1.0, description="Nonlinear gain c")
    weight_norm: float = Field(default=0.9, gt=0.0, le=1.0, description="Spectral norm of W")
    rho: float = Field(default=0.5, description="AR(1) correlation, legal range [0, 1)")
    sigma2: float = Field(default=1.0, ge=0.0, description="Total per-frame variance")
    drift: float = Field(default=0.0, ge=0.0, description="Drift beta per frame")
    drift_direction: Optional[List[float]] = Field(default=None, description="Drift direction")
    render_dim: Optional[int] = Field(default=None, ge=1, description="Render dimension p")
    motion_dim: int = Field(default=4, ge=1, description="Motion dimension m")
    motion_scale: float = Field(default=0.0, ge=0.0, description="Driving noise scale")
    identity_norm: float = Field(default=10.0, gt=0.0, description="Subject mean norm")
    reference_offset: float = Field(default=6.0, ge=0.0, description="Reference offset")

    @field_validator("rho")
    @classmethod
    def _rho_range(cls, value: float) -> float:
        if not (0.0 <= value < 1.0) or math.isnan(value):
            raise ValueError(f"rho must lie in the legal range [0, 1), got {value}")
        return value


class ExperimentConfig(BaseModel):
    """
    Validated experiment configuration.

    Attributes:
        suite: Suite to run.
        dim: Feature dimension d.
        k: Frames aggregated K.
        k_max: Largest K of the k-sweep.
        k_values: Aggregation sizes of the bound suite.
        length: Generated sequence length T.
        trials: Monte Carlo trials M (paired seeds in the pipeline suite).
        passes: Refinement passes.
        streams: Conditioning streams refined by the pipeline suite.
        families: Families covered by the bound suite.
        seed: 64-bit master seed.
        system: Nested system spec.
        output: Result path; stdout when absent.
        format: Result format.
        plot: Optional SVG path.
    """

    model_config = ConfigDict(extra="forbid")

    suite: Suite = Field(..., description="Suite to run")
    dim: int = Field(default=8, ge=1, description="Feature dimension d")
    k: int = Field(default=4, ge=1, description="Frames aggregated K")
    k_max: int = Field(default=12, ge=1, description="Largest K of the sweep")
    k_values: List[int] = Field(default_factory=lambda: [1, 2, 4, 8], description="Bound-suite K")
    length: int = Field(default=40, ge=1, description="Sequence length T")
    trials: int = Field(default=20_000, ge=2, description="Monte Carlo trials M")
    passes: int = Field(default=1, ge=1, description="Refinement passes")
    streams: List[str] = Field(default_factory=lambda: ["identity"], description="Refined streams")
    families: List[Family] = Field(default_factory=lambda: [Family.AFFINE], description="Bound-suite families")
    seed: int = Field(default=42, ge=0, le=2**64 - 1, description="Master seed")
    system: SystemSpec = Field(default_factory=SystemSpec, description="System spec")
    output: Optional[Path] = Field(default=None, description="Result path")
    format: OutputFormat = Field(default=OutputFormat.CSV, description="Result format")
    plot: Optional[Path] = Field(default=None, description="SVG plot path")

    @field_validator("k_values")
    @classmethod
    def _positive_k(cls, values: List[int]) -> List[int]:
        if not values or any(value < 1 for value in values):
            raise ValueError("k_values must be a non-empty list of positive integers")
        return values

    @field_validator("streams")
    @classmethod
    def _known_streams(cls, values: List[str]) -> List[str]:
        unknown = sorted(set(values) - {"identity", "motion"})
        if unknown:
            raise ValueError(f"unknown streams {unknown}; legal streams are identity and motion")
        return sorted(set(values) | {"identity"})

    @model_validator(mode="after")
    def _dimension_limits(self) -> "ExperimentConfig":
        limit = settings.MAX_DIM
        dims = {"dim": self.dim, "system.motion_dim": self.system.motion_dim}
        if self.system.render_dim is not None:
            dims["system.render_dim"] = self.system.render_dim
        for name, value in dims.items():
            if value > limit:
                raise ValueError(f"{name} must lie in [1, {limit}], got {value}")
        return self


class Estimate(BaseModel):
    """
    A numeric estimate with its analytic reference.

    Attributes:
        value: Estimated value.
        reference: Analytic reference or the marker ``empirical-only``.
        standard_error: Monte Carlo standard error when known.
    """

    value: float
    reference: Union[float, str] = EMPIRICAL_ONLY
    standard_error: Optional[float] = None

    @field_validator("reference")
    @classmethod
    def _marker(cls, value: Union[float, str]) -> Union[float, str]:
        if isinstance(value, str) and value != EMPIRICAL_ONLY:
            raise ValueError(f"a string reference must be {EMPIRICAL_ONLY!r}")
        return value

    @property
    def abs_error(self) -> Optional[float]:
        if isinstance(self.reference, str):
            return None
        return abs(self.value - self.reference)

    @property
    def rel_error(self) -> Optional[float]:
        error = self.abs_error
        if error is None or self.reference == 0.0:
            return None
        return error / abs(float(self.reference))


class ExperimentRecord(BaseModel):
    """
    One result row.

    Attributes:
        suite: Suite that produced the record.
        seed: Master seed.
        params: Parameters of the row.
        estimates: Estimates, each paired with a reference.
        values: Other reported quantities (analytic values, counts, argmins).
        checks: Pass/fail flag per checked property.
    """

    suite: Suite
    seed: int
    params: Dict[str, Scalar] = Field(default_factory=dict)
    estimates: Dict[str, Estimate] = Field(default_factory=dict)
    values: Dict[str, Scalar] = Field(default_factory=dict)
    checks: Dict[str, bool] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def results(self) -> Dict[str, Scalar]:
        """Flat result columns (everything except suite, seed and params)."""
        flat: Dict[str, Scalar] = dict(self.values)
        for name, estimate in self.estimates.items():
            flat[name] = estimate.value
            flat[f"{name}_reference"] = estimate.reference
            if estimate.abs_error is not None:
                flat[f"{name}_abs_error"] = estimate.abs_error
            if estimate.rel_error is not None:
                flat[f"{name}_rel_error"] = estimate.rel_error
            if estimate.standard_error is not None:
                flat[f"{name}_se"] = estimate.standard_error
        for name, ok in self.checks.items():
            flat[f"check_{name}"] = ok
        flat["passed"] = self.passed
        return flat


class PlotSeries(BaseModel):
    name: str
    x: List[float]
    y: List[float]

    @model_validator(mode="after")
    def _same_length(self) -> "PlotSeries":
        if len(self.x) != len(self.y):
            raise ValueError("x and y must have equal length")
        return self


class PlotSpec(BaseModel):
    """
    Line plot description rendered to SVG.

    Attributes:
        title: Plot title.
        x_label: Horizontal axis label.
        y_label: Vertical axis label.
        series: One polyline per series.
    """

    title: str
    x_label: str
    y_label: str
    series: List[PlotSeries]


class ErrorResponse(BaseModel):
    """
    Error payload printed on stderr by the CLI.

    Attributes:
        error: Error type.
        message: Error message.
        details: Additional error details.
    """

    error: str = Field(..., description="Error type")
    message: str = Field(..., description="Error message")
    details: Optional[object] = Field(None, description="Additional error details")


class SuiteOutcome(BaseModel):
    """
    Records of one suite run plus its optional plot.

    Attributes:
        records: Result rows.
        plot: Plot description, when the suite has one.
    """

    records: List[ExperimentRecord]
    plot: Optional[PlotSpec] = None

    @property
    def passed(self) -> bool:
        return all(record.passed for record in self.records)
