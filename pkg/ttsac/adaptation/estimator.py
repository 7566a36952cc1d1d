"""
Monte Carlo estimator of the conditioning operator.

T_hat(f) = (1/K) * sum_{t=1..K} (E o G)(f, A)_t, the mean of the first K
encoded frames of a single generation.
"""

import numpy as np

from ttsac.core.errors import InvalidArgumentError
from ttsac.core.features import feature_mean
from ttsac.operators.base import GeneratorEncoderSystem
from ttsac.operators.operations import generate_batch, generate_sequence
from ttsac.schemas.features import Feature, MotionLike
from ttsac.schemas.seeds import SeedSpec


def _check_k(k: int) -> None:
    if k < 1:
        raise InvalidArgumentError(f"K must be at least 1, got {k}")


def mc_estimate_T(
    system: GeneratorEncoderSystem,
    f: Feature,
    k: int,
    motion: MotionLike,
    seed: SeedSpec,
) -> Feature:
    """
    One-generation estimate T_hat(f).

    Args:
        system: Generator-encoder system.
        f: Current conditioning feature.
        k: Frames aggregated K.
        motion: Driving signal (realization, distribution or None).
        seed: Seed address of the generation.

    Returns:
        Mean of the K encoded frames.

    Raises:
        InvalidArgumentError: If K < 1.
    """
    _check_k(k)
    return feature_mean(generate_sequence(system, f, motion, k, seed), k)


def mc_estimate_trials(
    system: GeneratorEncoderSystem,
    f: Feature,
    k: int,
    trials: int,
    seed: SeedSpec,
    motion: MotionLike = None,
) -> np.ndarray:
    """Independent estimates T_hat(f) of ``trials`` generations, shape (trials, d)."""
    _check_k(k)
    return generate_batch(system, f, k, trials, seed, motion).mean(axis=1)
