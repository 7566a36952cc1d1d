"""
Controllers module initialization.

This module contains one controller per experiment suite.
"""

from .base import RecordBuilder, SuiteController
from .bias_variance_controller import BiasVarianceController
from .bound_controller import BoundController
from .contraction_controller import ContractionController
from .covariance_controller import CovarianceController
from .ksweep_controller import KSweepController
from .pipeline_controller import PipelineController

__all__ = [
    "RecordBuilder",
    "SuiteController",
    "CovarianceController",
    "ContractionController",
    "BoundController",
    "BiasVarianceController",
    "KSweepController",
    "PipelineController",
]
