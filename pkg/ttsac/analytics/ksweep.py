"""
Choice of the aggregation window K.

K* = argmin_K (sigma2 / K + Bias(K)^2), ties broken toward smaller K. The
sweep evaluates the exact decomposition for K = 1..K_max and its Monte Carlo
counterpart, reusing one K_max-frame generation per trial for every prefix K.
"""

from typing import Callable, Optional, Sequence

import numpy as np

from ttsac.analytics.bias_variance import decompose_linearized, prepare_linear_system, reference_mean
from ttsac.analytics.covariance import aggregated_covariance
from ttsac.core.errors import InvalidArgumentError
from ttsac.operators.base import GeneratorEncoderSystem
from ttsac.operators.operations import generate_batch
from ttsac.schemas.analytics import BiasVarianceReport, KSweepResult, ObjectiveCurve
from ttsac.schemas.features import Feature, MotionProfile
from ttsac.schemas.seeds import SeedSpec
from ttsac.utils.logger import logger


def argmin_k(values: Sequence[float]) -> int:
    """1-based index of the minimum; the first (smallest K) wins ties."""
    return int(np.argmin(np.asarray(values, dtype=np.float64))) + 1


def optimal_k(sigma2: float, bias_fn: Callable[[int], float], k_max: int) -> ObjectiveCurve:
    """
    Scan sigma2 / K + Bias(K)^2 over K = 1..K_max.

    Args:
        sigma2: Scalar per-frame variance (tr(Gamma_0) for matrix noise).
        bias_fn: Bias(K), defined on 1..K_max.
        k_max: Largest K.

    Returns:
        ObjectiveCurve with the full curve and its argmin.
    """
    if k_max < 1:
        raise InvalidArgumentError(f"K_max must be at least 1, got {k_max}")
    values = tuple(sigma2 / k + float(bias_fn(k)) ** 2 for k in range(1, k_max + 1))
    return ObjectiveCurve(values=values, k_star=argmin_k(values))


def k_sweep(
    system: GeneratorEncoderSystem,
    f: Feature,
    k_max: int,
    trials: int,
    seed: SeedSpec,
    motion: Optional[MotionProfile] = None,
) -> KSweepResult:
    """
    Analytic and empirical bias-variance curves over K = 1..K_max.

    Args:
        system: Affine or linear-pipeline system.
        f: Conditioning feature.
        k_max: Largest K.
        trials: Monte Carlo trials M.
        seed: Seed address of the simulation.
        motion: Optional motion distribution overriding the system's.

    Returns:
        KSweepResult with per-K decompositions and both argmins.
    """
    if k_max < 1:
        raise InvalidArgumentError(f"K_max must be at least 1, got {k_max}")
    active = prepare_linear_system(system, motion)
    noise = active.feature_noise()

    frames = generate_batch(active, f, k_max, trials, seed)
    counts = np.arange(1, k_max + 1, dtype=np.float64)
    prefix_means = np.cumsum(frames, axis=1) / counts[None, :, None]

    points = []
    for k in range(1, k_max + 1):
        mu, mu_k = reference_mean(active, f, k)
        jacobian = active.generator_jacobian(mu)
        bias_sq, variance = decompose_linearized(
            jacobian, mu_k - mu, aggregated_covariance(noise, k)
        )
        deviation = active.generator_map(prefix_means[:, k - 1]) - active.generator_map(mu)
        losses = np.sum(deviation**2, axis=1)
        points.append(
            BiasVarianceReport(
                k=k,
                bias_sq=bias_sq,
                variance=variance,
                empirical_total=float(losses.mean()),
                empirical_standard_error=float(losses.std(ddof=1) / np.sqrt(trials))
                if trials > 1
                else 0.0,
            )
        )
    result = KSweepResult(
        points=tuple(points),
        k_star_analytic=argmin_k([point.total for point in points]),
        k_star_empirical=argmin_k([float(point.empirical_total or 0.0) for point in points]),
    )
    logger.debug(
        f"K sweep: K*_analytic={result.k_star_analytic}, K*_empirical={result.k_star_empirical}"
    )
    return result
