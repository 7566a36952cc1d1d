"""
Adaptation schemas.

Configuration and state of the test-time conditioning refinement.
"""

from typing import Dict, FrozenSet, Mapping, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ttsac.schemas.arrays import ArrayModel
from ttsac.schemas.features import Feature, FeatureSequence

IDENTITY = "identity"
MOTION = "motion"


class AdaptationConfig(BaseModel):
    """
    Refinement settings.

    Attributes:
        k: Frames aggregated per estimate.
        passes: Refinement iterations.
        streams: Streams refined; the identity stream is always included.
    """

    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1, description="Frames aggregated K")
    passes: int = Field(default=1, ge=1, description="Refinement passes")
    streams: FrozenSet[str] = Field(
        default=frozenset({IDENTITY}), description="Streams to refine"
    )

    @field_validator("streams")
    @classmethod
    def _with_identity(cls, value: FrozenSet[str]) -> FrozenSet[str]:
        return frozenset(value) | {IDENTITY}


class ConditioningState(ArrayModel):
    """
    Conditioning features per stream.

    Attributes:
        streams: Stream identifier to feature; ``identity`` is mandatory.
    """

    streams: Dict[str, Feature] = Field(..., description="Feature per stream")

    @model_validator(mode="after")
    def _has_identity(self) -> "ConditioningState":
        if IDENTITY not in self.streams:
            raise ValueError("the identity stream is mandatory")
        return self

    @property
    def identity(self) -> Feature:
        return self.streams[IDENTITY]

    def replace(self, updates: Mapping[str, Feature]) -> "ConditioningState":
        return ConditioningState(streams={**self.streams, **updates})

    @classmethod
    def of(cls, identity: Feature, **others: Feature) -> "ConditioningState":
        return cls(streams={IDENTITY: identity, **others})


class RefinementTrace(ArrayModel):
    """
    Iterates f^(0..passes) and residuals ||f^(k) - T_hat(f^(k))||.

    For several refined streams the residual is the Euclidean norm over all
    refined streams.
    """

    iterates: Tuple[ConditioningState, ...]
    residuals: Tuple[float, ...]

    @model_validator(mode="after")
    def _lengths(self) -> "RefinementTrace":
        if len(self.iterates) != len(self.residuals) or not self.iterates:
            raise ValueError("iterates and residuals must be non-empty and of equal length")
        return self

    @property
    def passes(self) -> int:
        return len(self.iterates) - 1


class TwoPassResult(ArrayModel):
    """
    Output of two-pass inference.

    Attributes:
        initial: Identity-stream frames of the first pass.
        refined: Identity-stream frames of the second pass.
        initial_streams: First-pass frames per stream.
        refined_streams: Second-pass frames per stream.
        state: Refined conditioning state.
        trace: Refinement trace starting at the initial state.
    """

    initial: FeatureSequence
    refined: FeatureSequence
    initial_streams: Dict[str, FeatureSequence]
    refined_streams: Dict[str, FeatureSequence]
    state: ConditioningState
    trace: RefinementTrace
