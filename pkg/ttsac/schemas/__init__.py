"""
Schemas module initialization.

This module contains Pydantic models for every domain value of the laboratory.
"""

from .adaptation import (
    IDENTITY,
    MOTION,
    AdaptationConfig,
    ConditioningState,
    RefinementTrace,
    TwoPassResult,
)
from .analytics import (
    BiasVarianceReport,
    ContractionFit,
    KSweepResult,
    ObjectiveCurve,
    OutputVarianceBound,
)
from .experiment import (
    EMPIRICAL_ONLY,
    ErrorResponse,
    Estimate,
    ExperimentConfig,
    ExperimentRecord,
    Family,
    OutputFormat,
    PlotSeries,
    PlotSpec,
    Suite,
    SuiteOutcome,
    SystemSpec,
)
from .features import Feature, FeatureSequence, MotionLike, MotionProfile, MotionSequence
from .metrics import MetricsDelta, SequenceMetrics
from .noise import LaggedCovarianceModel
from .seeds import Purpose, SeedSpec

__all__ = [
    "IDENTITY",
    "MOTION",
    "AdaptationConfig",
    "ConditioningState",
    "RefinementTrace",
    "TwoPassResult",
    "BiasVarianceReport",
    "ContractionFit",
    "KSweepResult",
    "ObjectiveCurve",
    "OutputVarianceBound",
    "EMPIRICAL_ONLY",
    "ErrorResponse",
    "Estimate",
    "ExperimentConfig",
    "ExperimentRecord",
    "Family",
    "OutputFormat",
    "PlotSeries",
    "PlotSpec",
    "Suite",
    "SuiteOutcome",
    "SystemSpec",
    "Feature",
    "FeatureSequence",
    "MotionLike",
    "MotionProfile",
    "MotionSequence",
    "MetricsDelta",
    "SequenceMetrics",
    "LaggedCovarianceModel",
    "Purpose",
    "SeedSpec",
]
