"""
Feature-space schemas.

This module defines the conditioning feature, the encoded frame sequence
and the driving motion signal shared by every system family.
"""

from typing import Tuple, Union

import numpy as np
from pydantic import Field, model_validator

from ttsac.schemas.arrays import ArrayModel, Matrix, Vector


class Feature(ArrayModel):
    """
    A d-dimensional conditioning or encoded-frame feature.

    Attributes:
        values: Finite real vector of length d.
    """

    values: Vector = Field(..., description="Feature coordinates")

    @model_validator(mode="after")
    def _non_empty(self) -> "Feature":
        if self.values.shape[0] < 1:
            raise ValueError("feature dimension must be positive")
        return self

    @property
    def dim(self) -> int:
        return int(self.values.shape[0])

    @classmethod
    def zeros(cls, dim: int) -> "Feature":
        return cls(values=np.zeros(dim))


class FeatureSequence(ArrayModel):
    """
    Ordered encoded frames f_1..f_T stored as a (T, d) matrix.

    Attributes:
        values: Row t-1 holds frame t.
    """

    values: Matrix = Field(..., description="Frames stacked row-wise")

    @model_validator(mode="after")
    def _non_empty(self) -> "FeatureSequence":
        length, dim = self.values.shape
        if length < 1 or dim < 1:
            raise ValueError("a feature sequence needs at least one frame of positive dimension")
        return self

    @property
    def length(self) -> int:
        return int(self.values.shape[0])

    @property
    def dim(self) -> int:
        return int(self.values.shape[1])

    @property
    def frames(self) -> Tuple[Feature, ...]:
        return tuple(Feature(values=row) for row in self.values)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, index: int) -> Feature:
        return Feature(values=self.values[index])

    @classmethod
    def from_frames(cls, frames: "list[Feature] | Tuple[Feature, ...]") -> "FeatureSequence":
        return cls(values=np.stack([frame.values for frame in frames]))


class MotionProfile(ArrayModel):
    """
    Distribution of the driving signal a_t = base_t + drift_rate * t * direction.

    Attributes:
        direction: Per-frame drift direction u in R^m.
        drift_rate: Drift beta per frame.
        scale: Standard deviation of the zero-mean i.i.d. base noise.
    """

    direction: Vector = Field(..., description="Drift direction u")
    drift_rate: float = Field(default=0.0, description="Drift beta per frame")
    scale: float = Field(default=0.0, ge=0.0, description="Base noise standard deviation")

    @property
    def dim(self) -> int:
        return int(self.direction.shape[0])

    def mean_inputs(self, length: int) -> np.ndarray:
        """Expected inputs E[a_t] = beta * t * u for t = 1..length."""
        steps = np.arange(1, length + 1, dtype=np.float64)
        return self.drift_rate * steps[:, None] * self.direction[None, :]

    def sample(self, length: int, rng: np.random.Generator) -> "MotionSequence":
        """
        Draw one realization of the driving signal.

        Args:
            length: Number of frames T.
            rng: Generator for the base noise (row t-1 drives frame t).

        Returns:
            MotionSequence with inputs of shape (length, m).
        """
        base = self.scale * rng.standard_normal((length, self.dim))
        return MotionSequence(
            inputs=base + self.mean_inputs(length),
            mean_shift=self.direction,
            drift_rate=self.drift_rate,
        )

    @classmethod
    def stationary(cls, dim: int) -> "MotionProfile":
        return cls(direction=np.zeros(dim))


class MotionSequence(ArrayModel):
    """
    A realized driving signal.

    Attributes:
        inputs: (T, m) matrix, row t-1 holds a_t.
        mean_shift: Drift direction the realization was drawn with.
        drift_rate: Drift beta the realization was drawn with.
    """

    inputs: Matrix = Field(..., description="Driving inputs stacked row-wise")
    mean_shift: Vector = Field(..., description="Per-frame drift direction")
    drift_rate: float = Field(default=0.0, description="Drift beta per frame")

    @model_validator(mode="after")
    def _shapes(self) -> "MotionSequence":
        if self.inputs.shape[0] < 1:
            raise ValueError("a motion sequence needs at least one frame")
        if self.inputs.shape[1] != self.mean_shift.shape[0]:
            raise ValueError("mean_shift dimension must match the motion inputs")
        return self

    @property
    def length(self) -> int:
        return int(self.inputs.shape[0])

    @property
    def dim(self) -> int:
        return int(self.inputs.shape[1])

    @classmethod
    def still(cls, length: int, dim: int) -> "MotionSequence":
        return cls(inputs=np.zeros((length, dim)), mean_shift=np.zeros(dim))


MotionLike = Union[MotionProfile, MotionSequence, None]
"""A motion distribution, a fixed realization, or None for the system default."""
