"""
System Factory Module.

This module builds seeded synthetic systems from the harness system spec.
Controllers receive one factory instance and never construct systems
directly.
"""

from typing import Optional

import numpy as np

from ttsac.core.config import Settings, settings
from ttsac.core.errors import DegenerateInputError, InvalidArgumentError
from ttsac.operators.affine import AffineSystem
from ttsac.operators.base import GeneratorEncoderSystem
from ttsac.operators.nonlinear import NonlinearSystem
from ttsac.operators.pipeline import LinearPipelineSystem
from ttsac.schemas.experiment import Family, SystemSpec
from ttsac.schemas.features import MotionProfile
from ttsac.schemas.noise import LaggedCovarianceModel
from ttsac.schemas.seeds import SeedSpec
from ttsac.utils.linalg import orthonormal_columns, random_orthogonal, unit_vector
from ttsac.utils.logger import logger


class SystemFactory:
    """
    Builder of seeded synthetic generator-encoder systems.

    Attributes:
        settings: Process settings (dimension limits).
    """

    def __init__(self, config: Optional[Settings] = None) -> None:
        """
        Initialize the factory.

        Args:
            config: Settings instance, defaults to the global settings.
        """
        self.settings = config or settings
        logger.debug("SystemFactory initialized")

    def _check_dim(self, name: str, value: int) -> None:
        if value < 1 or value > self.settings.MAX_DIM:
            raise InvalidArgumentError(
                f"{name} must lie in [1, {self.settings.MAX_DIM}], got {value}",
            )

    def build(
        self,
        spec: SystemSpec,
        dim: int,
        seed: SeedSpec,
        prior: Optional[np.ndarray] = None,
    ) -> GeneratorEncoderSystem:
        """
        Build the system described by ``spec``.

        Args:
            spec: System spec from the experiment config.
            dim: Feature dimension d.
            seed: Seed address for the random structure (matrices, directions).
            prior: Subject mean for the pipeline identity pull.

        Returns:
            A system of the requested family.
        """
        self._check_dim("dim", dim)
        logger.debug(f"Building {spec.family.value} system: d={dim}, seed path={seed.path}")
        if spec.family is Family.AFFINE:
            return self.affine(spec, dim, seed)
        if spec.family is Family.NONLINEAR:
            return self.nonlinear(spec, dim, seed)
        return self.pipeline(spec, dim, seed, prior=prior)

    def _drift(self, spec: SystemSpec, dim: int, rng: np.random.Generator) -> np.ndarray:
        if spec.drift_direction is not None:
            direction = np.asarray(spec.drift_direction, dtype=np.float64)
            if direction.shape != (dim,) or not np.any(direction):
                raise InvalidArgumentError(f"drift_direction must be a non-zero vector of length {dim}")
            direction = direction / np.linalg.norm(direction)
        else:
            direction = unit_vector(dim, rng)
        return spec.drift * direction

    def affine(self, spec: SystemSpec, dim: int, seed: SeedSpec) -> AffineSystem:
        """A = spectral_scale * orthogonal, so every singular value equals spectral_scale."""
        rng = seed.rng()
        matrix = spec.spectral_scale * random_orthogonal(dim, rng)
        offset = rng.standard_normal(dim)
        return AffineSystem(
            matrix=matrix,
            offset=offset,
            noise=LaggedCovarianceModel.isotropic(dim, spec.sigma2, spec.rho),
            drift=self._drift(spec, dim, rng),
        )

    def nonlinear(self, spec: SystemSpec, dim: int, seed: SeedSpec) -> NonlinearSystem:
        rng = seed.rng()
        weight = spec.weight_norm * random_orthogonal(dim, rng)
        offset = rng.standard_normal(dim)
        return NonlinearSystem(
            weight=weight,
            gain=spec.gain,
            offset=offset,
            noise=LaggedCovarianceModel.isotropic(dim, spec.sigma2, spec.rho),
            drift=self._drift(spec, dim, rng),
        )

    def pipeline(
        self,
        spec: SystemSpec,
        dim: int,
        seed: SeedSpec,
        prior: Optional[np.ndarray] = None,
        prior_rate: float = 0.0,
    ) -> LinearPipelineSystem:
        """
        Seeded pipeline: M from QR of a Gaussian matrix, Q = M^T.

        The drift direction u is scaled so that ||Q P u|| = 1, which makes the
        feature-space drift per frame equal to ``spec.drift``. Render noise uses
        Gamma_0 = (sigma2 / d) I_p, so the encoded noise has trace sigma2.
        """
        render_dim = spec.render_dim if spec.render_dim is not None else max(16, dim)
        self._check_dim("render_dim", render_dim)
        self._check_dim("motion_dim", spec.motion_dim)
        if render_dim < dim:
            raise InvalidArgumentError(f"render_dim ({render_dim}) must be at least dim ({dim})")
        rng = seed.rng()
        render = orthonormal_columns(render_dim, dim, rng)
        encoder = render.T.copy()
        coupling = rng.standard_normal((render_dim, spec.motion_dim)) / np.sqrt(render_dim)
        raw = unit_vector(spec.motion_dim, rng)
        response = float(np.linalg.norm(encoder @ coupling @ raw))
        if response == 0.0:
            raise DegenerateInputError("motion coupling annihilates the drift direction")
        return LinearPipelineSystem(
            render=render,
            encoder=encoder,
            coupling=coupling,
            render_noise=LaggedCovarianceModel(
                gamma0=(spec.sigma2 / dim) * np.eye(render_dim), correlation=spec.rho
            ),
            motion=MotionProfile(
                direction=raw / response,
                drift_rate=spec.drift,
                scale=spec.motion_scale,
            ),
            prior=prior,
            prior_rate=prior_rate,
        )
