"""
Tests for feature primitives, seeds and the AR(1) noise model.
"""

import numpy as np
import pytest
from pydantic import ValidationError

from ttsac.core.errors import DegenerateInputError, InvalidArgumentError, LabError
from ttsac.core.features import cosine_similarity, feature_mean
from ttsac.schemas.features import Feature, FeatureSequence, MotionProfile
from ttsac.schemas.noise import LaggedCovarianceModel
from ttsac.schemas.seeds import Purpose, SeedSpec


class TestFeatureMean:
    def test_mean_of_two_frames(self) -> None:
        seq = FeatureSequence(values=[[1.0, 0.0], [3.0, 0.0]])
        assert np.array_equal(feature_mean(seq, 2).values, [2.0, 0.0])

    def test_single_frame(self) -> None:
        seq = FeatureSequence(values=[[5.0, 5.0]])
        assert np.array_equal(feature_mean(seq, 1).values, [5.0, 5.0])

    def test_uses_only_leading_frames(self) -> None:
        seq = FeatureSequence(values=[[1.0], [3.0], [100.0]])
        assert feature_mean(seq, 2).values[0] == 2.0

    @pytest.mark.parametrize("first_k", [0, 3, -1])
    def test_out_of_range(self, first_k: int) -> None:
        seq = FeatureSequence(values=[[1.0], [2.0]])
        with pytest.raises(InvalidArgumentError):
            feature_mean(seq, first_k)

    def test_linear(self) -> None:
        rng = np.random.default_rng(0)
        x, y = rng.standard_normal((2, 6, 3))
        combined = FeatureSequence(values=2.5 * x + y)
        expected = 2.5 * feature_mean(FeatureSequence(values=x), 4).values + feature_mean(
            FeatureSequence(values=y), 4
        ).values
        assert np.allclose(feature_mean(combined, 4).values, expected, atol=1e-12)

    def test_long_ar1_mean_concentrates(self) -> None:
        noise = LaggedCovarianceModel.isotropic(2, 2.0, 0.5)
        paths = noise.sample(1000, 100, SeedSpec(master_seed=3).rng())
        means = np.array(
            [feature_mean(FeatureSequence(values=path), 100).values for path in paths]
        )
        # per-coordinate sigma is 1; the mean's std is about 0.17
        assert np.mean(np.all(np.abs(means) <= 0.5, axis=1)) >= 0.98


class TestCosineSimilarity:
    @pytest.mark.parametrize(
        "a, b, expected",
        [((1.0, 0.0), (1.0, 0.0), 1.0), ((1.0, 0.0), (0.0, 1.0), 0.0), ((1.0, 0.0), (-2.0, 0.0), -1.0)],
    )
    def test_examples(self, a: tuple, b: tuple, expected: float) -> None:
        assert cosine_similarity(Feature(values=a), Feature(values=b)) == expected

    def test_scale_invariant(self) -> None:
        a = Feature(values=[0.3, -1.2, 2.0])
        b = Feature(values=[1.0, 0.5, -0.7])
        scaled = Feature(values=7.0 * a.values)
        assert cosine_similarity(scaled, b) == pytest.approx(cosine_similarity(a, b), abs=1e-15)

    def test_zero_vector(self) -> None:
        with pytest.raises(DegenerateInputError):
            cosine_similarity(Feature(values=[0.0, 0.0]), Feature(values=[1.0, 0.0]))

    def test_dimension_mismatch(self) -> None:
        with pytest.raises(InvalidArgumentError):
            cosine_similarity(Feature(values=[1.0]), Feature(values=[1.0, 0.0]))


class TestFeatureTypes:
    def test_rejects_non_finite(self) -> None:
        with pytest.raises(ValidationError):
            Feature(values=[1.0, float("nan")])

    def test_values_are_read_only(self) -> None:
        feature = Feature(values=[1.0, 2.0])
        with pytest.raises(ValueError):
            feature.values[0] = 3.0

    def test_motion_mean_inputs(self) -> None:
        profile = MotionProfile(direction=[1.0, 0.0], drift_rate=0.5)
        assert np.array_equal(profile.mean_inputs(3), [[0.5, 0.0], [1.0, 0.0], [1.5, 0.0]])

    def test_stationary_motion_sample_is_zero_mean_noise(self) -> None:
        profile = MotionProfile(direction=[0.0, 0.0], scale=0.0)
        motion = profile.sample(4, np.random.default_rng(1))
        assert np.array_equal(motion.inputs, np.zeros((4, 2)))

    def test_lab_errors_are_value_errors(self) -> None:
        assert issubclass(InvalidArgumentError, ValueError)
        assert issubclass(InvalidArgumentError, LabError)
        assert InvalidArgumentError("x").exit_code == 1


class TestSeedSpec:
    def test_same_spec_same_draws(self) -> None:
        spec = SeedSpec(master_seed=7).trial(3).child(Purpose.NOISE)
        assert np.array_equal(spec.rng().standard_normal(5), spec.rng().standard_normal(5))

    def test_trials_differ(self, seed: SeedSpec) -> None:
        first = seed.trial(0).rng().standard_normal(5)
        second = seed.trial(1).rng().standard_normal(5)
        assert not np.array_equal(first, second)

    def test_trial_and_purpose_keys_do_not_collide(self, seed: SeedSpec) -> None:
        assert seed.trial(1).path != seed.child(1).path

    def test_string_tags_are_stable(self, seed: SeedSpec) -> None:
        assert seed.child("motion") == seed.child("motion")
        assert seed.child("motion") != seed.child("identity")

    def test_negative_trial(self, seed: SeedSpec) -> None:
        with pytest.raises(ValueError):
            seed.trial(-1)

    def test_master_seed_range(self) -> None:
        SeedSpec(master_seed=2**64 - 1)
        with pytest.raises(ValidationError):
            SeedSpec(master_seed=2**64)

    def test_sequence_uses_spawn_key(self) -> None:
        spec = SeedSpec(master_seed=5, path=(0, 2))
        assert spec.sequence().spawn_key == (0, 2)


class TestLaggedCovarianceModel:
    def test_rejects_non_psd(self) -> None:
        with pytest.raises(ValidationError):
            LaggedCovarianceModel(gamma0=[[1.0, 2.0], [2.0, 1.0]])

    def test_rejects_asymmetric(self) -> None:
        with pytest.raises(ValidationError):
            LaggedCovarianceModel(gamma0=[[1.0, 0.5], [0.0, 1.0]])

    @pytest.mark.parametrize("rho", [1.0, -0.1])
    def test_rejects_correlation_outside_range(self, rho: float) -> None:
        with pytest.raises(ValidationError):
            LaggedCovarianceModel(gamma0=[[1.0]], correlation=rho)

    def test_gamma_lag(self) -> None:
        model = LaggedCovarianceModel(gamma0=2.0 * np.eye(2), correlation=0.5)
        assert np.array_equal(model.gamma(2), 0.5 * np.eye(2))
        assert np.array_equal(model.gamma(-2), model.gamma(2))

    def test_isotropic_trace(self) -> None:
        model = LaggedCovarianceModel.isotropic(4, 2.0)
        assert np.trace(model.gamma0) == pytest.approx(2.0)

    def test_lagged_covariance_of_samples(self) -> None:
        gamma0 = np.array([[1.0, 0.3], [0.3, 0.5]])
        model = LaggedCovarianceModel(gamma0=gamma0, correlation=0.6)
        paths = model.sample(2000, 100, SeedSpec(master_seed=11).rng())
        for lag in range(0, 6):
            left = paths[:, : 100 - lag].reshape(-1, 2)
            right = paths[:, lag:].reshape(-1, 2)
            empirical = left.T @ right / left.shape[0]
            assert np.max(np.abs(empirical - model.gamma(lag))) <= 0.02 * np.max(gamma0)
