"""
Affine generator-encoder family.

Encoded frame t is A f + b + delta * t + eps_t with AR(1) noise eps. The
driving signal enters only through the drift delta.
"""

from typing import Any, ClassVar, Optional, Tuple

import numpy as np
from pydantic import Field, model_validator

from ttsac.core.errors import DegenerateInputError
from ttsac.operators.base import GeneratorEncoderSystem, drift_trajectory
from ttsac.schemas.arrays import Matrix, Vector
from ttsac.schemas.features import MotionLike
from ttsac.schemas.noise import LaggedCovarianceModel
from ttsac.schemas.seeds import Purpose, SeedSpec
from ttsac.utils.linalg import spectral_norm


class AffineSystem(GeneratorEncoderSystem):
    """
    Affine system with conditioning operator T(f) = A f + b + delta * (T + 1) / 2.

    Attributes:
        matrix: Linear part A (d x d).
        offset: Offset b.
        noise: Per-frame AR(1) noise model.
        drift: Per-frame mean shift delta.
    """

    family: ClassVar[str] = "affine"

    matrix: Matrix = Field(..., description="Linear part A")
    offset: Vector = Field(..., description="Offset b")
    noise: LaggedCovarianceModel = Field(..., description="Per-frame AR(1) noise")
    drift: Vector = Field(..., description="Per-frame mean shift delta")

    @model_validator(mode="before")
    @classmethod
    def _default_drift(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("drift") is None and data.get("offset") is not None:
            data = {**data, "drift": np.zeros(np.shape(data["offset"])[0])}
        return data

    @model_validator(mode="after")
    def _shapes(self) -> "AffineSystem":
        d = self.offset.shape[0]
        if self.matrix.shape != (d, d):
            raise ValueError(f"matrix must be {d}x{d}, got {self.matrix.shape}")
        if self.noise.dim != d or self.drift.shape != (d,):
            raise ValueError("noise and drift must match the offset dimension")
        return self

    @property
    def dim(self) -> int:
        return int(self.offset.shape[0])

    @property
    def spectral_norm(self) -> float:
        return spectral_norm(self.matrix)

    @property
    def is_contractive(self) -> bool:
        return self.spectral_norm < 1.0

    def expected_frames(
        self, f: np.ndarray, length: int, motion: MotionLike = None
    ) -> np.ndarray:
        self.check_feature(f)
        return (self.matrix @ f + self.offset)[None, :] + drift_trajectory(self.drift, length)

    def sample_frames(
        self,
        f: np.ndarray,
        length: int,
        trials: int,
        seed: SeedSpec,
        motion: MotionLike = None,
    ) -> np.ndarray:
        mean = self.expected_frames(f, length)
        if self.noise.is_zero:
            return np.broadcast_to(mean, (trials, length, self.dim)).copy()
        return mean[None] + self.noise.sample(trials, length, seed.child(Purpose.NOISE).rng())

    def generator_map(self, x: np.ndarray) -> np.ndarray:
        return x @ self.matrix.T + self.offset

    def generator_jacobian(self, x: np.ndarray) -> np.ndarray:
        return np.array(self.matrix)

    def lipschitz_constant(self) -> float:
        return self.spectral_norm

    def feature_noise(self) -> Tuple[LaggedCovarianceModel, ...]:
        return (self.noise,)

    def fixed_point(self, horizon: int, start: Optional[np.ndarray] = None) -> np.ndarray:
        """(I - A)^{-1} (b + delta * (H + 1) / 2)."""
        rhs = self.offset + self.drift * (horizon + 1) / 2.0
        try:
            return np.linalg.solve(np.eye(self.dim) - self.matrix, rhs)
        except np.linalg.LinAlgError as exc:
            raise DegenerateInputError("I - A is singular; the affine map has no unique fixed point") from exc

    def without_noise(self) -> "AffineSystem":
        return self.model_copy(update={"noise": LaggedCovarianceModel.zero(self.dim)})
