"""
Shared pytest fixtures.
"""

from typing import Callable

import numpy as np
import pytest

from ttsac.operators.affine import AffineSystem
from ttsac.operators.factory import SystemFactory
from ttsac.schemas.noise import LaggedCovarianceModel
from ttsac.schemas.seeds import SeedSpec


@pytest.fixture
def seed() -> SeedSpec:
    return SeedSpec(master_seed=42)


@pytest.fixture
def factory() -> SystemFactory:
    return SystemFactory()


@pytest.fixture
def half_identity() -> AffineSystem:
    """Noiseless A = 0.5 I, b = (1, 0): fixed point (2, 0)."""
    return AffineSystem(
        matrix=0.5 * np.eye(2),
        offset=np.array([1.0, 0.0]),
        noise=LaggedCovarianceModel.zero(2),
    )


@pytest.fixture
def scalar_affine() -> Callable[..., AffineSystem]:
    """Builder of d = 1 affine systems with A = 0, b = 0 and AR(1) noise."""

    def build(sigma2: float = 1.0, rho: float = 0.0, drift: float = 0.0) -> AffineSystem:
        return AffineSystem(
            matrix=np.zeros((1, 1)),
            offset=np.zeros(1),
            noise=LaggedCovarianceModel(gamma0=[[sigma2]], correlation=rho),
            drift=np.array([drift]),
        )

    return build
