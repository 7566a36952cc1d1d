"""
Metric schemas.
"""

from typing import Dict

from pydantic import BaseModel, Field

HIGHER_IS_BETTER = {
    "mean_identity_sim": True,
    "drift_norm": False,
    "smoothness": True,
    "terminal_deviation": False,
}


class SequenceMetrics(BaseModel):
    """
    Feature-space quality of a generated sequence against a subject mean.

    Attributes:
        mean_identity_sim: Mean cosine of the frames to mu.
        drift_norm: ||feature_mean(seq) - mu||.
        smoothness: 1 - mean clamped consecutive difference relative to ||mu||.
        terminal_deviation: ||f_T - mu||.
    """

    mean_identity_sim: float = Field(..., ge=-1.0, le=1.0)
    drift_norm: float = Field(..., ge=0.0)
    smoothness: float = Field(..., ge=0.0, le=1.0)
    terminal_deviation: float = Field(..., ge=0.0)


class MetricsDelta(BaseModel):
    """
    Signed differences refined - baseline.

    Attributes:
        mean_identity_sim: Positive is an improvement.
        drift_norm: Negative is an improvement.
        smoothness: Positive is an improvement.
        terminal_deviation: Negative is an improvement.
    """

    mean_identity_sim: float
    drift_norm: float
    smoothness: float
    terminal_deviation: float

    @property
    def improvements(self) -> Dict[str, bool]:
        result = {}
        for name, higher in HIGHER_IS_BETTER.items():
            delta = getattr(self, name)
            result[name] = delta > 0.0 if higher else delta < 0.0
        return result
