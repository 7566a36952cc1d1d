"""
Covariance of aggregated features.

Cov(f_bar) = (1/K) (Gamma_0 + 2 sum_{tau=1..K-1} (1 - tau/K) Gamma_tau), with
the AR(1) family Gamma_tau = rho^tau Gamma_0. A naive double-sum oracle and
the Monte Carlo verifier live next to the closed form.
"""

from typing import Iterable, Union

import numpy as np

from ttsac.adaptation.estimator import mc_estimate_trials
from ttsac.core.errors import InvalidArgumentError
from ttsac.operators.base import GeneratorEncoderSystem
from ttsac.schemas.features import Feature, MotionLike
from ttsac.schemas.noise import LaggedCovarianceModel
from ttsac.schemas.seeds import SeedSpec

NoiseLike = Union[LaggedCovarianceModel, Iterable[LaggedCovarianceModel]]
"""One AR(1) model or several independent components that add up."""


def _components(model: NoiseLike) -> list:
    if isinstance(model, LaggedCovarianceModel):
        return [model]
    components = list(model)
    if not components:
        raise InvalidArgumentError("at least one noise component is required")
    return components


def _check_k(k: int) -> None:
    if k < 1:
        raise InvalidArgumentError(f"K must be at least 1, got {k}")


def lag_weight(correlation: float, k: int) -> float:
    """1 + 2 sum_{tau=1..K-1} (1 - tau/K) rho^tau; exactly 1.0 when rho = 0."""
    _check_k(k)
    total = 0.0
    for tau in range(1, k):
        total += (1.0 - tau / k) * correlation**tau
    return 1.0 + 2.0 * total


def aggregated_covariance(model: NoiseLike, k: int) -> np.ndarray:
    """
    Closed-form covariance of the mean of K consecutive frames.

    Args:
        model: AR(1) noise model, or independent components.
        k: Frames aggregated K >= 1.

    Returns:
        Symmetric PSD d x d matrix. With rho = 0 it equals Gamma_0 / K exactly.

    Raises:
        InvalidArgumentError: If K < 1.
    """
    _check_k(k)
    components = _components(model)
    result = np.zeros_like(components[0].gamma0)
    for component in components:
        result = result + component.gamma0 * lag_weight(component.correlation, k) / k
    return result


def aggregated_covariance_double_sum(model: NoiseLike, k: int) -> np.ndarray:
    """Oracle (1/K^2) sum_i sum_j Gamma_{|i-j|}, independent of the lag-weight formula."""
    _check_k(k)
    components = _components(model)
    result = np.zeros_like(components[0].gamma0)
    for component in components:
        for i in range(k):
            for j in range(k):
                result = result + component.gamma(i - j)
    return result / (k * k)


def empirical_aggregated_covariance(
    system: GeneratorEncoderSystem,
    f: Feature,
    k: int,
    trials: int,
    seed: SeedSpec,
    motion: MotionLike = None,
) -> np.ndarray:
    """
    Unbiased sample covariance (divisor M - 1) of f_bar over M independent trials.

    Raises:
        InvalidArgumentError: If M < 2 or K < 1.
    """
    if trials < 2:
        raise InvalidArgumentError(f"at least 2 trials are required, got {trials}")
    samples = mc_estimate_trials(system, f, k, trials, seed, motion)
    return np.atleast_2d(np.cov(samples, rowvar=False, ddof=1))


def covariance_standard_error(covariance: np.ndarray, trials: int) -> np.ndarray:
    """Entrywise standard error of a Gaussian sample covariance: sqrt((S_ii S_jj + S_ij^2)/(M-1))."""
    diagonal = np.diag(covariance)
    return np.sqrt((np.outer(diagonal, diagonal) + covariance**2) / (trials - 1))
