"""
Generator-encoder system interface.

A system embodies the composition E o G: given a conditioning feature f and
a driving signal it produces encoded frame features f_1..f_T. Systems are
immutable; every random draw is addressed by a SeedSpec.
"""

from abc import ABC, abstractmethod
from typing import ClassVar, Optional, Tuple

import numpy as np

from ttsac.core.errors import InvalidArgumentError, UnsupportedOperationError
from ttsac.schemas.arrays import ArrayModel
from ttsac.schemas.features import MotionLike, MotionProfile, MotionSequence
from ttsac.schemas.noise import LaggedCovarianceModel
from ttsac.schemas.seeds import SeedSpec


class GeneratorEncoderSystem(ArrayModel, ABC):
    """
    Base class of the synthetic system families.

    Class attributes:
        family: Family name used in configs and records.
        closed_form: Whether E[(E o G)(f, A)_t] has a closed form.
        constant_jacobian: Whether the generator map G is affine.
    """

    family: ClassVar[str] = "abstract"
    closed_form: ClassVar[bool] = True
    constant_jacobian: ClassVar[bool] = True

    @property
    @abstractmethod
    def dim(self) -> int:
        """Feature dimension d."""

    @abstractmethod
    def expected_frames(
        self, f: np.ndarray, length: int, motion: MotionLike = None
    ) -> np.ndarray:
        """Exact E[f_t] for t = 1..length as a (length, d) array."""

    @abstractmethod
    def sample_frames(
        self,
        f: np.ndarray,
        length: int,
        trials: int,
        seed: SeedSpec,
        motion: MotionLike = None,
    ) -> np.ndarray:
        """Encoded frames of ``trials`` independent generations, shape (trials, length, d)."""

    @abstractmethod
    def generator_map(self, x: np.ndarray) -> np.ndarray:
        """The feature-to-output map G, applied along the last axis."""

    @abstractmethod
    def generator_jacobian(self, x: np.ndarray) -> np.ndarray:
        """Jacobian J_G(x)."""

    @abstractmethod
    def lipschitz_constant(self) -> float:
        """Global Lipschitz constant L_G of the generator map."""

    @abstractmethod
    def feature_noise(self) -> Tuple[LaggedCovarianceModel, ...]:
        """Independent AR(1) components whose sum is the per-frame feature noise."""

    @abstractmethod
    def fixed_point(self, horizon: int, start: Optional[np.ndarray] = None) -> np.ndarray:
        """Solution of f = T(f) for the operator averaged over ``horizon`` frames."""

    @abstractmethod
    def without_noise(self) -> "GeneratorEncoderSystem":
        """Copy of the system with every random component removed."""

    def sample_motion(self, length: int, seed: SeedSpec) -> Optional[MotionSequence]:
        """Realize the system's own driving signal; None when motion plays no role."""
        return None

    def with_motion(self, motion: MotionProfile) -> "GeneratorEncoderSystem":
        """Copy driven by another motion distribution; families without motion return self."""
        return self

    def check_feature(self, f: np.ndarray) -> None:
        if f.shape != (self.dim,):
            raise InvalidArgumentError(
                f"{self.family} system expects features of dimension {self.dim}, got {f.shape}",
            )

    def require_closed_form(self, operation: str) -> None:
        if not self.closed_form:
            raise UnsupportedOperationError(
                f"{operation} has no closed form for the {self.family} family; "
                "use the Monte Carlo estimator instead",
            )


def drift_trajectory(drift: np.ndarray, length: int) -> np.ndarray:
    """Rows delta * t for t = 1..length."""
    steps = np.arange(1, length + 1, dtype=np.float64)
    return steps[:, None] * drift[None, :]
