"""
Linear render/encode pipeline.

The generator renders a feature into a p-dimensional space, G(f, a_t) =
M f + P a_t + eta_t, and the encoder reads it back with Q = M^T, so
E(G(f, a_t)) = f + Q P a_t + Q eta_t. An optional identity pull moves the
frames toward a subject mean mu at rate lambda:

    f_t = f + (1 - (1 - lambda)^t) (mu - f) + Q P a_t + Q eta_t

With lambda = 0 the pull vanishes and f is a fixed point of T whenever the
driving signal has zero mean.
"""

from typing import ClassVar, Optional, Tuple

import numpy as np
from pydantic import Field, model_validator

from ttsac.core.errors import DegenerateInputError, InvalidArgumentError
from ttsac.operators.base import GeneratorEncoderSystem
from ttsac.schemas.arrays import Matrix, Vector
from ttsac.schemas.features import MotionLike, MotionProfile, MotionSequence
from ttsac.schemas.noise import LaggedCovarianceModel
from ttsac.schemas.seeds import Purpose, SeedSpec
from ttsac.utils.linalg import spectral_norm

LEFT_INVERSE_TOLERANCE = 1e-10


class LinearPipelineSystem(GeneratorEncoderSystem):
    """
    Toy render/encode pipeline with exact encoder consistency Q M = I.

    Attributes:
        render: Render matrix M (p x d) with orthonormal columns.
        encoder: Encoder matrix Q (d x p), a left inverse of M.
        coupling: Motion-coupling matrix P (p x m).
        render_noise: AR(1) noise eta_t in render space.
        motion: Distribution of the driving signal.
        prior: Subject mean mu the identity pull moves toward.
        prior_rate: Identity pull rate lambda in [0, 1).
    """

    family: ClassVar[str] = "linear-pipeline"

    render: Matrix = Field(..., description="Render matrix M")
    encoder: Matrix = Field(..., description="Encoder matrix Q")
    coupling: Matrix = Field(..., description="Motion-coupling matrix P")
    render_noise: LaggedCovarianceModel = Field(..., description="Render-space AR(1) noise")
    motion: MotionProfile = Field(..., description="Driving signal distribution")
    prior: Optional[Vector] = Field(default=None, description="Subject mean mu")
    prior_rate: float = Field(default=0.0, ge=0.0, lt=1.0, description="Identity pull rate")

    @model_validator(mode="after")
    def _consistency(self) -> "LinearPipelineSystem":
        p, d = self.render.shape
        if p < d:
            raise ValueError(f"render dimension p={p} must be at least d={d}")
        if self.encoder.shape != (d, p):
            raise ValueError(f"encoder must be {d}x{p}, got {self.encoder.shape}")
        if self.coupling.shape != (p, self.motion.dim):
            raise ValueError(f"coupling must be {p}x{self.motion.dim}, got {self.coupling.shape}")
        if self.render_noise.dim != p:
            raise ValueError("render noise must live in render space")
        identity = np.eye(d)
        if np.max(np.abs(self.encoder @ self.render - identity)) > LEFT_INVERSE_TOLERANCE:
            raise ValueError("encoder must be a left inverse of render (Q M = I)")
        if np.max(np.abs(self.render.T @ self.render - identity)) > LEFT_INVERSE_TOLERANCE:
            raise ValueError("render must have orthonormal columns")
        if self.prior is not None and self.prior.shape != (d,):
            raise ValueError("prior must be a feature of dimension d")
        if self.prior_rate > 0.0 and self.prior is None:
            raise ValueError("a positive prior_rate needs a prior")
        return self

    @property
    def dim(self) -> int:
        return int(self.render.shape[1])

    @property
    def render_dim(self) -> int:
        return int(self.render.shape[0])

    @property
    def motion_gain(self) -> np.ndarray:
        """Q P, the feature-space response to a unit driving input."""
        return self.encoder @ self.coupling

    @property
    def drift_direction(self) -> np.ndarray:
        """Q P u, the feature-space drift per unit of beta."""
        return self.motion_gain @ self.motion.direction

    def identity_weights(self, length: int) -> np.ndarray:
        """w_t = 1 - (1 - lambda)^t for t = 1..length."""
        steps = np.arange(1, length + 1, dtype=np.float64)
        return 1.0 - (1.0 - self.prior_rate) ** steps

    def _conditioned(self, f: np.ndarray, length: int) -> np.ndarray:
        self.check_feature(f)
        base = np.broadcast_to(f, (length, self.dim))
        if self.prior is None or self.prior_rate == 0.0:
            return np.array(base)
        return base + self.identity_weights(length)[:, None] * (self.prior - f)[None, :]

    def _mean_inputs(self, length: int, motion: MotionLike) -> np.ndarray:
        if isinstance(motion, MotionSequence):
            if motion.length < length or motion.dim != self.motion.dim:
                raise InvalidArgumentError(
                    f"motion sequence must cover {length} frames of dimension {self.motion.dim}",
                )
            return np.array(motion.inputs[:length])
        profile = motion if motion is not None else self.motion
        if profile.dim != self.motion.dim:
            raise InvalidArgumentError(f"motion profile must have dimension {self.motion.dim}")
        return profile.mean_inputs(length)

    def expected_frames(
        self, f: np.ndarray, length: int, motion: MotionLike = None
    ) -> np.ndarray:
        return self._conditioned(f, length) + self._mean_inputs(length, motion) @ self.motion_gain.T

    def sample_frames(
        self,
        f: np.ndarray,
        length: int,
        trials: int,
        seed: SeedSpec,
        motion: MotionLike = None,
    ) -> np.ndarray:
        frames = np.broadcast_to(
            self.expected_frames(f, length, motion), (trials, length, self.dim)
        ).copy()
        if not isinstance(motion, MotionSequence):
            profile = motion if motion is not None else self.motion
            if profile.scale > 0.0:
                base = profile.scale * seed.child(Purpose.MOTION).rng().standard_normal(
                    (trials, length, profile.dim)
                )
                frames += base @ self.motion_gain.T
        if not self.render_noise.is_zero:
            eta = self.render_noise.sample(trials, length, seed.child(Purpose.NOISE).rng())
            frames += eta @ self.encoder.T
        return frames

    def sample_motion(self, length: int, seed: SeedSpec) -> Optional[MotionSequence]:
        return self.motion.sample(length, seed.rng())

    def with_motion(self, motion: MotionProfile) -> "LinearPipelineSystem":
        if motion.dim != self.motion.dim:
            raise InvalidArgumentError(f"motion profile must have dimension {self.motion.dim}")
        return self.model_copy(update={"motion": motion})

    def generator_map(self, x: np.ndarray) -> np.ndarray:
        return x @ self.render.T

    def generator_jacobian(self, x: np.ndarray) -> np.ndarray:
        return np.array(self.render)

    def lipschitz_constant(self) -> float:
        return spectral_norm(self.render)

    def feature_noise(self) -> Tuple[LaggedCovarianceModel, ...]:
        components = [self.render_noise.project(self.encoder)]
        if self.motion.scale > 0.0:
            gain = self.motion_gain
            components.append(
                LaggedCovarianceModel(gamma0=self.motion.scale**2 * (gain @ gain.T), correlation=0.0)
            )
        return tuple(components)

    def fixed_point(self, horizon: int, start: Optional[np.ndarray] = None) -> np.ndarray:
        """
        Fixed point of T averaged over ``horizon`` frames.

        With an identity pull, f* = mu + Q P mean(a) / mean(w). Without one every
        feature is fixed when the driving signal has zero mean, and ``start`` is returned.
        """
        shift = self.motion.mean_inputs(horizon).mean(axis=0) @ self.motion_gain.T
        if self.prior is not None and self.prior_rate > 0.0:
            return self.prior + shift / self.identity_weights(horizon).mean()
        if np.any(shift):
            raise DegenerateInputError("a drifting pipeline without identity pull has no fixed point")
        if start is None:
            raise InvalidArgumentError("every feature is a fixed point; pass start to choose one")
        self.check_feature(np.asarray(start, dtype=np.float64))
        return np.array(start, dtype=np.float64)

    def without_noise(self) -> "LinearPipelineSystem":
        return self.model_copy(
            update={
                "render_noise": LaggedCovarianceModel.zero(self.render_dim),
                "motion": self.motion.model_copy(update={"scale": 0.0}),
            }
        )
