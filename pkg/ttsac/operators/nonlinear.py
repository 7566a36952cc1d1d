"""
Nonlinear contractive family.

Encoded frame t is c * tanh(W f + eps_t) + b + delta * t. The noise enters
before the saturation, so the frame expectation has no closed form.
"""

from typing import Any, ClassVar, Optional, Tuple

import numpy as np
from pydantic import Field, model_validator

from ttsac.core.errors import DegenerateInputError, UnsupportedOperationError
from ttsac.operators.base import GeneratorEncoderSystem, drift_trajectory
from ttsac.schemas.arrays import Matrix, Vector
from ttsac.schemas.features import MotionLike
from ttsac.schemas.noise import LaggedCovarianceModel
from ttsac.schemas.seeds import Purpose, SeedSpec
from ttsac.utils.linalg import spectral_norm

BANACH_TOLERANCE = 1e-14
BANACH_MAX_ITER = 10_000


class NonlinearSystem(GeneratorEncoderSystem):
    """
    Saturating system f -> c * tanh(W f) + b with ||W||_2 <= 1 and 0 < c < 1.

    Attributes:
        weight: Matrix W.
        gain: Scalar gain c.
        offset: Offset b.
        noise: AR(1) noise added inside the tanh.
        drift: Per-frame mean shift delta added outside the tanh.
    """

    family: ClassVar[str] = "nonlinear"
    closed_form: ClassVar[bool] = False
    constant_jacobian: ClassVar[bool] = False

    weight: Matrix = Field(..., description="Matrix W with spectral norm at most 1")
    gain: float = Field(..., gt=0.0, lt=1.0, description="Gain c in (0, 1)")
    offset: Vector = Field(..., description="Offset b")
    noise: LaggedCovarianceModel = Field(..., description="AR(1) noise inside the tanh")
    drift: Vector = Field(..., description="Per-frame mean shift delta")

    @model_validator(mode="before")
    @classmethod
    def _default_drift(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("drift") is None and data.get("offset") is not None:
            data = {**data, "drift": np.zeros(np.shape(data["offset"])[0])}
        return data

    @model_validator(mode="after")
    def _shapes(self) -> "NonlinearSystem":
        d = self.offset.shape[0]
        if self.weight.shape != (d, d):
            raise ValueError(f"weight must be {d}x{d}, got {self.weight.shape}")
        if self.noise.dim != d or self.drift.shape != (d,):
            raise ValueError("noise and drift must match the offset dimension")
        if spectral_norm(self.weight) > 1.0 + 1e-12:
            raise ValueError("weight must have spectral norm at most 1")
        return self

    @property
    def dim(self) -> int:
        return int(self.offset.shape[0])

    def expected_frames(
        self, f: np.ndarray, length: int, motion: MotionLike = None
    ) -> np.ndarray:
        raise UnsupportedOperationError(
            "the conditioning operator T has no closed form for the nonlinear family; "
            "use the Monte Carlo estimator instead",
        )

    def sample_frames(
        self,
        f: np.ndarray,
        length: int,
        trials: int,
        seed: SeedSpec,
        motion: MotionLike = None,
    ) -> np.ndarray:
        self.check_feature(f)
        pre = self.weight @ f
        if self.noise.is_zero:
            inner = np.broadcast_to(pre, (trials, length, self.dim))
        else:
            inner = pre + self.noise.sample(trials, length, seed.child(Purpose.NOISE).rng())
        return self.gain * np.tanh(inner) + self.offset + drift_trajectory(self.drift, length)

    def generator_map(self, x: np.ndarray) -> np.ndarray:
        return self.gain * np.tanh(x @ self.weight.T) + self.offset

    def generator_jacobian(self, x: np.ndarray) -> np.ndarray:
        slope = 1.0 - np.tanh(self.weight @ x) ** 2
        return self.gain * slope[:, None] * self.weight

    def lipschitz_constant(self) -> float:
        return self.gain * spectral_norm(self.weight)

    def feature_noise(self) -> Tuple[LaggedCovarianceModel, ...]:
        raise UnsupportedOperationError(
            "noise enters before the tanh; encoded-frame covariance has no closed form",
        )

    def fixed_point(self, horizon: int, start: Optional[np.ndarray] = None) -> np.ndarray:
        """Banach iteration on the noiseless map; requires a noiseless system."""
        if not self.noise.is_zero:
            raise UnsupportedOperationError("the stochastic nonlinear operator has no closed form")
        shift = self.offset + self.drift * (horizon + 1) / 2.0
        current = np.zeros(self.dim) if start is None else np.array(start, dtype=np.float64)
        for _ in range(BANACH_MAX_ITER):
            following = self.gain * np.tanh(self.weight @ current) + shift
            if np.linalg.norm(following - current) <= BANACH_TOLERANCE:
                return following
            current = following
        raise DegenerateInputError("Banach iteration did not converge")

    def without_noise(self) -> "NonlinearSystem":
        return self.model_copy(update={"noise": LaggedCovarianceModel.zero(self.dim)})
