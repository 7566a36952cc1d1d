"""
Lagged covariance schema.

Per-frame feature noise follows a stationary AR(1) process whose lag-tau
covariance is Gamma_tau = rho^tau * Gamma_0.
"""

import math

import numpy as np
from pydantic import Field, PrivateAttr, model_validator

from ttsac.schemas.arrays import ArrayModel, Matrix
from ttsac.utils.linalg import PSD_TOLERANCE, is_psd, psd_sqrt


class LaggedCovarianceModel(ArrayModel):
    """
    AR(1) lagged covariance family {Gamma_tau}.

    Attributes:
        gamma0: Symmetric PSD lag-0 covariance Gamma_0.
        correlation: AR(1) coefficient rho in [0, 1).
    """

    gamma0: Matrix = Field(..., description="Lag-0 covariance Gamma_0")
    correlation: float = Field(
        default=0.0,
        ge=0.0,
        lt=1.0,
        description="AR(1) correlation rho, legal range [0, 1)",
    )

    _root: np.ndarray = PrivateAttr()

    @model_validator(mode="after")
    def _check_gamma0(self) -> "LaggedCovarianceModel":
        rows, cols = self.gamma0.shape
        if rows != cols or rows < 1:
            raise ValueError(f"gamma0 must be a non-empty square matrix, got {self.gamma0.shape}")
        if not is_psd(self.gamma0):
            raise ValueError(
                f"gamma0 must be symmetric positive semidefinite (tolerance {PSD_TOLERANCE})"
            )
        return self

    def model_post_init(self, __context: object) -> None:
        root = psd_sqrt(self.gamma0)
        root.setflags(write=False)
        self._root = root

    @property
    def dim(self) -> int:
        return int(self.gamma0.shape[0])

    @property
    def is_zero(self) -> bool:
        return not np.any(self.gamma0)

    def gamma(self, lag: int) -> np.ndarray:
        """Lag-tau covariance rho^|tau| * Gamma_0."""
        return (self.correlation ** abs(lag)) * self.gamma0

    def sample(self, trials: int, length: int, rng: np.random.Generator) -> np.ndarray:
        """
        Draw AR(1) noise paths.

        eps_1 ~ N(0, Gamma_0) and eps_t = rho * eps_{t-1} + sqrt(1 - rho^2) * xi_t with
        xi_t ~ N(0, Gamma_0), so every frame is marginally N(0, Gamma_0).

        Args:
            trials: Number of independent paths.
            length: Frames per path.
            rng: Source of standard normals, consumed in C order (trial, frame, coordinate).

        Returns:
            Array of shape (trials, length, d).
        """
        shocks = rng.standard_normal((trials, length, self.dim)) @ self._root
        if self.correlation == 0.0:
            return shocks
        innovation = math.sqrt(1.0 - self.correlation**2)
        paths = np.empty_like(shocks)
        paths[:, 0] = shocks[:, 0]
        for t in range(1, length):
            paths[:, t] = self.correlation * paths[:, t - 1] + innovation * shocks[:, t]
        return paths

    def project(self, matrix: np.ndarray) -> "LaggedCovarianceModel":
        """Covariance of ``matrix @ eps_t``: same rho, Gamma_0 mapped to B Gamma_0 B^T."""
        mapped = matrix @ self.gamma0 @ matrix.T
        return LaggedCovarianceModel(gamma0=(mapped + mapped.T) / 2.0, correlation=self.correlation)

    @classmethod
    def isotropic(cls, dim: int, total_variance: float, correlation: float = 0.0) -> "LaggedCovarianceModel":
        """Gamma_0 = (total_variance / dim) * I so that tr(Gamma_0) = total_variance."""
        return cls(gamma0=(total_variance / dim) * np.eye(dim), correlation=correlation)

    @classmethod
    def zero(cls, dim: int) -> "LaggedCovarianceModel":
        return cls(gamma0=np.zeros((dim, dim)))
