"""
Sequence metrics.

Feature-space analogs of identity similarity and temporal smoothness, used to
compare a baseline generation with its refined regeneration.
"""

import numpy as np

from ttsac.core.errors import DegenerateInputError, InvalidArgumentError
from ttsac.schemas.features import Feature, FeatureSequence
from ttsac.schemas.metrics import HIGHER_IS_BETTER, MetricsDelta, SequenceMetrics

SMOOTHNESS_EPSILON = 1e-12


def frame_similarities(seq: FeatureSequence, mu: Feature) -> np.ndarray:
    """Cosine of every frame to mu."""
    if seq.dim != mu.dim:
        raise InvalidArgumentError(f"dimension mismatch: {seq.dim} != {mu.dim}")
    mu_norm = float(np.linalg.norm(mu.values))
    if mu_norm == 0.0:
        raise DegenerateInputError("the reference mean must be non-zero")
    frame_norms = np.linalg.norm(seq.values, axis=1)
    if np.any(frame_norms == 0.0):
        raise DegenerateInputError("cosine similarity is undefined for a zero frame")
    return np.clip(seq.values @ mu.values / (frame_norms * mu_norm), -1.0, 1.0)


def evaluate(seq: FeatureSequence, mu: Feature) -> SequenceMetrics:
    """
    Metrics of a sequence against the subject mean mu.

    smoothness = 1 - (1/(T-1)) sum_t min(1, ||f_{t+1} - f_t|| / (||mu|| + 1e-12)),
    and 1 for a single frame.

    Raises:
        DegenerateInputError: If mu (or a frame) is the zero vector.
    """
    similarities = frame_similarities(seq, mu)
    mu_norm = float(np.linalg.norm(mu.values))
    if seq.length > 1:
        steps = np.linalg.norm(np.diff(seq.values, axis=0), axis=1)
        smoothness = 1.0 - float(np.mean(np.minimum(1.0, steps / (mu_norm + SMOOTHNESS_EPSILON))))
    else:
        smoothness = 1.0
    return SequenceMetrics(
        mean_identity_sim=float(np.clip(similarities.mean(), -1.0, 1.0)),
        drift_norm=float(np.linalg.norm(seq.values.mean(axis=0) - mu.values)),
        smoothness=min(1.0, max(0.0, smoothness)),
        terminal_deviation=float(np.linalg.norm(seq.values[-1] - mu.values)),
    )


def compare(baseline: SequenceMetrics, refined: SequenceMetrics) -> MetricsDelta:
    """Fieldwise refined - baseline."""
    return MetricsDelta(
        **{name: getattr(refined, name) - getattr(baseline, name) for name in HIGHER_IS_BETTER}
    )
