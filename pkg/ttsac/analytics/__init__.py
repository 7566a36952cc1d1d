"""
Analytics module initialization.

This module contains closed-form results and their Monte Carlo verifiers:
aggregated covariance, the output variance bound, the contraction rate, the
bias-variance decomposition and the choice of K.
"""

from .bias_variance import bias_variance_decompose, decompose_linearized
from .bounds import output_variance_bound
from .contraction import contraction_bound_holds, estimate_contraction_rate, iterate_errors
from .covariance import (
    aggregated_covariance,
    aggregated_covariance_double_sum,
    covariance_standard_error,
    empirical_aggregated_covariance,
    lag_weight,
)
from .ksweep import argmin_k, k_sweep, optimal_k

__all__ = [
    "aggregated_covariance",
    "aggregated_covariance_double_sum",
    "argmin_k",
    "bias_variance_decompose",
    "contraction_bound_holds",
    "covariance_standard_error",
    "decompose_linearized",
    "empirical_aggregated_covariance",
    "estimate_contraction_rate",
    "iterate_errors",
    "k_sweep",
    "lag_weight",
    "optimal_k",
    "output_variance_bound",
]
