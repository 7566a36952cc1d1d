"""
Feature-space primitives.

Aggregation of the first K encoded frames and the cosine similarity used by
the identity metrics.
"""

import numpy as np

from ttsac.core.errors import DegenerateInputError, InvalidArgumentError
from ttsac.schemas.features import Feature, FeatureSequence


def feature_mean(seq: FeatureSequence, first_k: int) -> Feature:
    """
    Mean of the first K frames, (1/K) * sum_{t=1..K} f_t.

    Args:
        seq: Encoded frame sequence.
        first_k: Number of leading frames K, 1 <= K <= len(seq).

    Returns:
        Aggregated feature of the same dimension.

    Raises:
        InvalidArgumentError: If K is zero or exceeds the sequence length.
    """
    if first_k < 1 or first_k > seq.length:
        raise InvalidArgumentError(
            f"first_k must lie in [1, {seq.length}], got {first_k}",
            details={"first_k": first_k, "length": seq.length},
        )
    return Feature(values=seq.values[:first_k].mean(axis=0))


def cosine_similarity(a: Feature, b: Feature) -> float:
    """
    Cosine of the angle between two non-zero features of equal dimension.

    Raises:
        InvalidArgumentError: On dimension mismatch.
        DegenerateInputError: If either vector is zero.
    """
    if a.dim != b.dim:
        raise InvalidArgumentError(f"dimension mismatch: {a.dim} != {b.dim}")
    norm_a = float(np.linalg.norm(a.values))
    norm_b = float(np.linalg.norm(b.values))
    if norm_a == 0.0 or norm_b == 0.0:
        raise DegenerateInputError("cosine similarity is undefined for a zero vector")
    cosine = float(np.dot(a.values, b.values)) / (norm_a * norm_b)
    return min(1.0, max(-1.0, cosine))
