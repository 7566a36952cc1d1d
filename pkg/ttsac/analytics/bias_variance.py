"""
Bias-variance decomposition of the aggregated conditioning.

Linearizing G at mu, E||G(f_bar) - G(mu)||^2 = ||J (mu_K - mu)||^2 +
tr(J Cov(f_bar) J^T), exact when G is affine. The reference mu is the
expected first encoded frame, so under linear drift delta the bias shift is
mu_K - mu = delta (K - 1) / 2 and Bias(1) = 0.
"""

from typing import Optional, Tuple

import numpy as np

from ttsac.adaptation.estimator import mc_estimate_trials
from ttsac.analytics.covariance import aggregated_covariance
from ttsac.core.errors import InvalidArgumentError, UnsupportedOperationError
from ttsac.operators.base import GeneratorEncoderSystem
from ttsac.schemas.analytics import BiasVarianceReport
from ttsac.schemas.features import Feature, MotionProfile
from ttsac.schemas.seeds import SeedSpec
from ttsac.utils.monte_carlo import mean_and_standard_error


def decompose_linearized(
    jacobian: np.ndarray, shift: np.ndarray, covariance: np.ndarray
) -> Tuple[float, float]:
    """(||J shift||^2, tr(J C J^T))."""
    bias = jacobian @ shift
    variance = float(np.trace(jacobian @ covariance @ jacobian.T))
    return float(bias @ bias), max(0.0, variance)


def prepare_linear_system(
    system: GeneratorEncoderSystem, motion: Optional[MotionProfile]
) -> GeneratorEncoderSystem:
    """Validate the family and apply a motion override."""
    if not (system.closed_form and system.constant_jacobian):
        raise UnsupportedOperationError(
            f"the bias-variance decomposition is only exact for affine generators, "
            f"not the {system.family} family",
        )
    if motion is not None and not isinstance(motion, MotionProfile):
        raise InvalidArgumentError("the decomposition takes a motion distribution, not a realization")
    return system.with_motion(motion) if motion is not None else system


def reference_mean(system: GeneratorEncoderSystem, f: Feature, k: int) -> Tuple[np.ndarray, np.ndarray]:
    """(mu, mu_K): expected first frame and expected mean of the first K frames."""
    means = system.expected_frames(f.values, k)
    return means[0], means.mean(axis=0)


def bias_variance_decompose(
    system: GeneratorEncoderSystem,
    k: int,
    f: Optional[Feature] = None,
    motion: Optional[MotionProfile] = None,
    trials: int = 20_000,
    seed: Optional[SeedSpec] = None,
) -> BiasVarianceReport:
    """
    Analytic decomposition plus its Monte Carlo check.

    Args:
        system: Affine or linear-pipeline system (drift carried by the system).
        k: Frames aggregated K.
        f: Conditioning feature, zeros by default.
        motion: Optional motion distribution overriding the system's.
        trials: Monte Carlo trials for ``empirical_total``; 0 skips the simulation.
        seed: Seed address of the simulation.

    Returns:
        BiasVarianceReport with total = bias_sq + variance.

    Raises:
        UnsupportedOperationError: For the nonlinear family.
    """
    if k < 1:
        raise InvalidArgumentError(f"K must be at least 1, got {k}")
    active = prepare_linear_system(system, motion)
    feature = f if f is not None else Feature.zeros(active.dim)
    mu, mu_k = reference_mean(active, feature, k)
    jacobian = active.generator_jacobian(mu)
    bias_sq, variance = decompose_linearized(
        jacobian, mu_k - mu, aggregated_covariance(active.feature_noise(), k)
    )
    if trials <= 0:
        return BiasVarianceReport(k=k, bias_sq=bias_sq, variance=variance)

    samples = mc_estimate_trials(active, feature, k, trials, seed or SeedSpec())
    deviation = active.generator_map(samples) - active.generator_map(mu)
    empirical, standard_error = mean_and_standard_error(np.sum(deviation**2, axis=1))
    return BiasVarianceReport(
        k=k,
        bias_sq=bias_sq,
        variance=variance,
        empirical_total=empirical,
        empirical_standard_error=standard_error,
    )
