"""
Identity self-consistency objective.

L(f) = E_t ||(E o G)(f, A)_t - f||^2 over t = 1..horizon. For closed-form
families it splits into the squared mean deviation plus the per-frame noise
trace. Its first-order gradient (Jacobian term dropped) is 2 (f - T(f)),
which vanishes exactly at a self-consistent feature.
"""

import numpy as np

from ttsac.operators.base import GeneratorEncoderSystem
from ttsac.operators.operations import apply_T
from ttsac.schemas.features import Feature, MotionLike


def self_consistency_objective(
    system: GeneratorEncoderSystem,
    f: Feature,
    motion: MotionLike = None,
    horizon: int = 1,
) -> float:
    """
    Closed-form L(f) = mean_t ||m_t(f) - f||^2 + sum_components tr(Gamma_0).

    Raises:
        UnsupportedOperationError: For the nonlinear family.
    """
    system.require_closed_form("the self-consistency objective")
    system.check_feature(f.values)
    deviations = system.expected_frames(f.values, horizon, motion) - f.values[None, :]
    noise_trace = sum(float(np.trace(component.gamma0)) for component in system.feature_noise())
    return float(np.mean(np.sum(deviations**2, axis=1))) + noise_trace


def self_consistency_gradient(
    system: GeneratorEncoderSystem,
    f: Feature,
    motion: MotionLike = None,
    horizon: int = 1,
) -> Feature:
    """First-order gradient 2 (f - T(f))."""
    return Feature(values=2.0 * (f.values - apply_T(system, f, motion, horizon).values))
