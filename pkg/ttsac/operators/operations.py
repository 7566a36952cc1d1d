"""
Operations on generator-encoder systems.

Generation of encoded sequences, the exact conditioning operator T and the
Lipschitz constants used by the variance bound.
"""

from typing import Optional

import numpy as np

from ttsac.core.errors import InvalidArgumentError
from ttsac.operators.base import GeneratorEncoderSystem
from ttsac.schemas.features import Feature, FeatureSequence, MotionLike
from ttsac.schemas.seeds import SeedSpec
from ttsac.utils.monte_carlo import run_trials


def _check_length(length: int) -> None:
    if length < 1:
        raise InvalidArgumentError(f"sequence length must be at least 1, got {length}")


def generate_sequence(
    system: GeneratorEncoderSystem,
    f: Feature,
    motion: MotionLike,
    length: int,
    seed: SeedSpec,
) -> FeatureSequence:
    """
    Encoded frames {(E o G)(f, A)_t}_{t=1..T} of one generation.

    Args:
        system: Generator-encoder system.
        f: Conditioning feature.
        motion: Realized driving signal, a motion distribution, or None for the
            system's own distribution.
        length: Number of frames T.
        seed: Seed address of this generation.

    Returns:
        FeatureSequence of T frames, deterministic given ``seed``.

    Raises:
        InvalidArgumentError: On dimension mismatch or T < 1.
    """
    _check_length(length)
    system.check_feature(f.values)
    frames = system.sample_frames(f.values, length, 1, seed, motion)
    return FeatureSequence(values=frames[0])


def generate_batch(
    system: GeneratorEncoderSystem,
    f: Feature,
    length: int,
    trials: int,
    seed: SeedSpec,
    motion: MotionLike = None,
) -> np.ndarray:
    """Frames of ``trials`` independent generations, shape (trials, T, d), in seeded blocks."""
    _check_length(length)
    system.check_feature(f.values)

    def sampler(block_seed: SeedSpec, size: int) -> np.ndarray:
        return system.sample_frames(f.values, length, size, block_seed, motion)

    return run_trials(sampler, trials, seed)


def apply_T(
    system: GeneratorEncoderSystem,
    f: Feature,
    motion: MotionLike = None,
    horizon: int = 1,
) -> Feature:
    """
    Exact conditioning operator T(f) = E_t[(E o G)(f, A)_t] over t = 1..horizon.

    For the affine family this is A f + b + delta * (T + 1) / 2.

    Raises:
        UnsupportedOperationError: For the nonlinear family.
    """
    _check_length(horizon)
    system.require_closed_form("apply_T")
    system.check_feature(f.values)
    return Feature(values=system.expected_frames(f.values, horizon, motion).mean(axis=0))


def lipschitz_constant(system: GeneratorEncoderSystem) -> float:
    """L_G: ||A||_2 (affine), c ||W||_2 (nonlinear), ||M||_2 = 1 (pipeline)."""
    return system.lipschitz_constant()


def fixed_point(
    system: GeneratorEncoderSystem,
    horizon: int = 1,
    start: Optional[Feature] = None,
) -> Feature:
    """Stable feature f* = T(f*) (closed form, or Banach iteration for the nonlinear family)."""
    _check_length(horizon)
    initial = None if start is None else start.values
    return Feature(values=system.fixed_point(horizon, initial))


def lipschitz_probe(
    system: GeneratorEncoderSystem,
    pairs: int,
    seed: SeedSpec,
    spread: float = 1.0,
) -> float:
    """
    Largest difference quotient ||G(x) - G(y)|| / ||x - y|| over random pairs.

    Points are drawn from N(0, spread^2 I); the result never exceeds L_G.
    """
    if pairs < 1:
        raise InvalidArgumentError(f"pairs must be positive, got {pairs}")

    def sampler(block_seed: SeedSpec, size: int) -> np.ndarray:
        points = spread * block_seed.rng().standard_normal((2, size, system.dim))
        numerator = np.linalg.norm(
            system.generator_map(points[0]) - system.generator_map(points[1]), axis=1
        )
        denominator = np.linalg.norm(points[0] - points[1], axis=1)
        return numerator / denominator

    return float(run_trials(sampler, pairs, seed).max())
