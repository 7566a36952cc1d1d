"""
Tests for the synthetic generator-encoder systems.
"""

import numpy as np
import pytest
from pydantic import ValidationError

from ttsac.core.errors import InvalidArgumentError, UnsupportedOperationError
from ttsac.operators.affine import AffineSystem
from ttsac.operators.factory import SystemFactory
from ttsac.operators.nonlinear import NonlinearSystem
from ttsac.operators.operations import (
    apply_T,
    fixed_point,
    generate_batch,
    generate_sequence,
    lipschitz_constant,
    lipschitz_probe,
)
from ttsac.operators.pipeline import LinearPipelineSystem
from ttsac.schemas.experiment import Family, SystemSpec
from ttsac.schemas.features import Feature, MotionProfile, MotionSequence
from ttsac.schemas.noise import LaggedCovarianceModel
from ttsac.schemas.seeds import SeedSpec


def _affine(matrix: np.ndarray, offset: np.ndarray, drift: np.ndarray = None) -> AffineSystem:
    dim = offset.shape[0]
    return AffineSystem(
        matrix=matrix, offset=offset, noise=LaggedCovarianceModel.zero(dim), drift=drift
    )


class TestAffineSystem:
    def test_identity_system_repeats_feature(self, seed: SeedSpec) -> None:
        system = _affine(np.eye(2), np.zeros(2))
        seq = generate_sequence(system, Feature(values=[3.0, 1.0]), None, 4, seed)
        assert np.array_equal(seq.values, np.tile([3.0, 1.0], (4, 1)))

    def test_direct_evaluation(self, half_identity: AffineSystem, seed: SeedSpec) -> None:
        seq = generate_sequence(half_identity, Feature.zeros(2), None, 1, seed)
        assert np.array_equal(seq.values, [[1.0, 0.0]])

    def test_apply_T(self, half_identity: AffineSystem) -> None:
        assert np.array_equal(apply_T(half_identity, Feature.zeros(2)).values, [1.0, 0.0])

    def test_fixed_point(self, half_identity: AffineSystem) -> None:
        f_star = fixed_point(half_identity)
        assert np.allclose(f_star.values, [2.0, 0.0], atol=1e-12)
        assert np.allclose(apply_T(half_identity, f_star).values, f_star.values, atol=1e-10)

    def test_apply_T_with_drift(self, seed: SeedSpec) -> None:
        system = _affine(0.5 * np.eye(2), np.zeros(2), np.array([0.1, 0.0]))
        result = apply_T(system, Feature.zeros(2), horizon=3)
        assert np.allclose(result.values, [0.2, 0.0], atol=1e-15)
        seq = generate_sequence(system, Feature.zeros(2), None, 3, seed)
        assert np.allclose(seq.values.mean(axis=0), result.values, atol=1e-15)

    def test_lipschitz_of_diagonal(self) -> None:
        system = _affine(np.diag([2.0, 0.5]), np.zeros(2))
        assert lipschitz_constant(system) == pytest.approx(2.0)
        assert not system.is_contractive

    def test_contraction_of_T(self) -> None:
        rng = np.random.default_rng(4)
        matrix = rng.standard_normal((3, 3))
        matrix *= 0.8 / np.linalg.norm(matrix, 2)
        system = _affine(matrix, rng.standard_normal(3))
        f1, f2 = Feature(values=rng.standard_normal(3)), Feature(values=rng.standard_normal(3))
        gap = np.linalg.norm(apply_T(system, f1).values - apply_T(system, f2).values)
        assert gap <= system.spectral_norm * np.linalg.norm(f1.values - f2.values) + 1e-12

    def test_dimension_mismatch(self, half_identity: AffineSystem, seed: SeedSpec) -> None:
        with pytest.raises(InvalidArgumentError):
            generate_sequence(half_identity, Feature.zeros(3), None, 2, seed)

    def test_length_must_be_positive(self, half_identity: AffineSystem, seed: SeedSpec) -> None:
        with pytest.raises(InvalidArgumentError):
            generate_sequence(half_identity, Feature.zeros(2), None, 0, seed)

    def test_generation_is_deterministic(self, seed: SeedSpec) -> None:
        system = AffineSystem(
            matrix=0.5 * np.eye(2),
            offset=np.ones(2),
            noise=LaggedCovarianceModel.isotropic(2, 1.0, 0.5),
        )
        first = generate_sequence(system, Feature.zeros(2), None, 10, seed)
        second = generate_sequence(system, Feature.zeros(2), None, 10, seed)
        assert first == second
        other = generate_sequence(system, Feature.zeros(2), None, 10, seed.trial(1))
        assert first != other

    def test_batch_shape(self, seed: SeedSpec) -> None:
        system = AffineSystem(
            matrix=np.zeros((1, 1)),
            offset=np.zeros(1),
            noise=LaggedCovarianceModel.isotropic(1, 1.0, 0.0),
        )
        frames = generate_batch(system, Feature.zeros(1), 3, 10, seed)
        assert frames.shape == (10, 3, 1)


class TestNonlinearSystem:
    def test_lipschitz_probe_below_bound(self, factory: SystemFactory, seed: SeedSpec) -> None:
        spec = SystemSpec(family=Family.NONLINEAR, gain=0.8, weight_norm=0.9)
        system = factory.build(spec, 4, seed)
        assert lipschitz_constant(system) == pytest.approx(0.72)
        assert lipschitz_probe(system, 100_000, seed.child("probe")) <= 0.72 + 1e-12

    def test_apply_T_is_unsupported(self, factory: SystemFactory, seed: SeedSpec) -> None:
        system = factory.build(SystemSpec(family=Family.NONLINEAR), 3, seed)
        with pytest.raises(UnsupportedOperationError):
            apply_T(system, Feature.zeros(3))

    def test_rejects_expansive_weight(self) -> None:
        with pytest.raises(ValidationError):
            NonlinearSystem(
                weight=2.0 * np.eye(2),
                gain=0.5,
                offset=np.zeros(2),
                noise=LaggedCovarianceModel.zero(2),
                drift=np.zeros(2),
            )

    def test_noiseless_fixed_point(self, factory: SystemFactory, seed: SeedSpec) -> None:
        system = factory.build(SystemSpec(family=Family.NONLINEAR), 3, seed).without_noise()
        f_star = fixed_point(system).values
        image = system.gain * np.tanh(system.weight @ f_star) + system.offset
        assert np.allclose(image, f_star, atol=1e-12)


class TestLinearPipelineSystem:
    def test_encoder_is_left_inverse(self, factory: SystemFactory, seed: SeedSpec) -> None:
        system = factory.build(SystemSpec(family=Family.LINEAR_PIPELINE), 8, seed)
        assert np.max(np.abs(system.encoder @ system.render - np.eye(8))) <= 1e-10
        assert lipschitz_constant(system) == pytest.approx(1.0)

    def test_noiseless_still_frame_returns_feature(
        self, factory: SystemFactory, seed: SeedSpec
    ) -> None:
        system = factory.build(SystemSpec(family=Family.LINEAR_PIPELINE, sigma2=0.0), 4, seed)
        f = Feature(values=[1.0, -2.0, 0.5, 3.0])
        seq = generate_sequence(system, f, MotionSequence.still(3, system.motion.dim), 3, seed)
        assert np.allclose(seq.values, np.tile(f.values, (3, 1)), atol=1e-12)

    def test_drift_matches_hand_product(self, factory: SystemFactory, seed: SeedSpec) -> None:
        spec = SystemSpec(family=Family.LINEAR_PIPELINE, sigma2=0.0, drift=0.1)
        system = factory.build(spec, 4, seed)
        f = Feature(values=[0.5, 0.0, -1.0, 2.0])
        seq = generate_sequence(system, f, None, 5, seed)

        qpu = np.zeros(4)
        for i in range(4):
            for j in range(system.render_dim):
                for k in range(system.motion.dim):
                    qpu[i] += system.encoder[i, j] * system.coupling[j, k] * system.motion.direction[k]
        expected = np.array([f.values + 0.1 * t * qpu for t in range(1, 6)])
        assert np.allclose(seq.values, expected, atol=1e-12)
        assert np.linalg.norm(qpu) == pytest.approx(1.0)

    def test_stationary_pipeline_fixes_every_feature(
        self, factory: SystemFactory, seed: SeedSpec
    ) -> None:
        system = factory.build(SystemSpec(family=Family.LINEAR_PIPELINE), 3, seed)
        f = Feature(values=[0.2, -0.4, 1.0])
        assert np.allclose(apply_T(system, f, horizon=5).values, f.values, atol=1e-12)
        assert np.array_equal(fixed_point(system, start=f).values, f.values)

    def test_rejects_inconsistent_encoder(self) -> None:
        render = np.eye(3)[:, :2]
        with pytest.raises(ValidationError):
            LinearPipelineSystem(
                render=render,
                encoder=2.0 * render.T,
                coupling=np.zeros((3, 1)),
                render_noise=LaggedCovarianceModel.zero(3),
                motion=MotionProfile(direction=[1.0]),
            )

    def test_identity_pull_fixed_point(self, factory: SystemFactory, seed: SeedSpec) -> None:
        mu = np.array([3.0, 0.0, -1.0])
        system = factory.pipeline(
            SystemSpec(family=Family.LINEAR_PIPELINE), 3, seed, prior=mu, prior_rate=0.2
        )
        f_star = fixed_point(system, horizon=4)
        assert np.allclose(f_star.values, mu, atol=1e-12)
        assert np.allclose(apply_T(system, f_star, horizon=4).values, mu, atol=1e-12)
