"""
Adaptation module initialization.

This module contains the test-time self-adaptive conditioning procedure.
"""

from .estimator import mc_estimate_T, mc_estimate_trials
from .objective import self_consistency_gradient, self_consistency_objective
from .refinement import refine, two_pass_inference

__all__ = [
    "mc_estimate_T",
    "mc_estimate_trials",
    "refine",
    "two_pass_inference",
    "self_consistency_objective",
    "self_consistency_gradient",
]
