"""
Tests for the closed-form analytics and their Monte Carlo verifiers.
"""

from typing import Callable

import numpy as np
import pytest

from ttsac.adaptation import refine
from ttsac.analytics import (
    aggregated_covariance,
    aggregated_covariance_double_sum,
    argmin_k,
    bias_variance_decompose,
    contraction_bound_holds,
    decompose_linearized,
    empirical_aggregated_covariance,
    estimate_contraction_rate,
    k_sweep,
    lag_weight,
    optimal_k,
    output_variance_bound,
)
from ttsac.core.errors import InvalidArgumentError, UnsupportedOperationError
from ttsac.operators.affine import AffineSystem
from ttsac.operators.factory import SystemFactory
from ttsac.schemas.adaptation import AdaptationConfig, ConditioningState
from ttsac.schemas.experiment import Family, SystemSpec
from ttsac.schemas.features import Feature
from ttsac.schemas.noise import LaggedCovarianceModel
from ttsac.schemas.seeds import SeedSpec


class TestAggregatedCovariance:
    def test_scalar_example(self) -> None:
        model = LaggedCovarianceModel(gamma0=[[1.0]], correlation=0.5)
        assert aggregated_covariance(model, 3)[0, 0] == pytest.approx(11.0 / 18.0, abs=1e-15)

    def test_single_frame(self) -> None:
        model = LaggedCovarianceModel(gamma0=[[2.0, 0.5], [0.5, 1.0]], correlation=0.7)
        assert np.array_equal(aggregated_covariance(model, 1), model.gamma0)

    def test_independent_frames(self) -> None:
        gamma0 = np.array([[1.0, 0.2], [0.2, 0.6]])
        model = LaggedCovarianceModel(gamma0=gamma0, correlation=0.0)
        assert lag_weight(0.0, 7) == 1.0
        assert np.allclose(aggregated_covariance(model, 7), gamma0 / 7, rtol=0.0, atol=1e-15)

    @pytest.mark.parametrize("rho", [0.0, 0.3, 0.5, 0.9])
    def test_matches_double_sum(self, rho: float) -> None:
        model = LaggedCovarianceModel(gamma0=[[1.5, 0.4], [0.4, 0.8]], correlation=rho)
        for k in range(1, 33):
            closed = aggregated_covariance(model, k)
            oracle = aggregated_covariance_double_sum(model, k)
            assert np.max(np.abs(closed - oracle)) <= 1e-12 * max(np.max(np.abs(closed)), 1.0)

    def test_correlation_inflates_variance(self) -> None:
        independent = LaggedCovarianceModel(gamma0=[[1.0]], correlation=0.0)
        correlated = LaggedCovarianceModel(gamma0=[[1.0]], correlation=0.6)
        for k in range(2, 10):
            assert aggregated_covariance(correlated, k)[0, 0] > aggregated_covariance(independent, k)[0, 0]

    def test_components_add(self) -> None:
        first = LaggedCovarianceModel(gamma0=[[1.0]], correlation=0.5)
        second = LaggedCovarianceModel(gamma0=[[0.5]], correlation=0.0)
        combined = aggregated_covariance([first, second], 4)
        assert combined[0, 0] == pytest.approx(
            aggregated_covariance(first, 4)[0, 0] + 0.125, abs=1e-15
        )

    def test_rejects_k_below_one(self) -> None:
        with pytest.raises(InvalidArgumentError):
            aggregated_covariance(LaggedCovarianceModel.isotropic(1, 1.0), 0)

    @pytest.mark.parametrize("rho, k, expected, tolerance", [(0.0, 4, 0.25, 0.01), (0.5, 3, 11.0 / 18.0, 0.025)])
    def test_empirical_matches_closed_form(
        self,
        scalar_affine: Callable[..., AffineSystem],
        seed: SeedSpec,
        rho: float,
        k: int,
        expected: float,
        tolerance: float,
    ) -> None:
        system = scalar_affine(sigma2=1.0, rho=rho)
        empirical = empirical_aggregated_covariance(system, Feature.zeros(1), k, 50_000, seed)
        assert abs(empirical[0, 0] - expected) <= tolerance


class TestOutputVarianceBound:
    def test_diagonal_generator(self, seed: SeedSpec) -> None:
        system = AffineSystem(
            matrix=np.diag([2.0, 0.5]),
            offset=np.zeros(2),
            noise=LaggedCovarianceModel.zero(2),
        )
        result = output_variance_bound(system, np.eye(2), trials=20_000, seed=seed)
        assert result.bound == pytest.approx(8.0)
        assert result.exact == pytest.approx(4.25)
        assert abs(result.empirical - 4.25) <= 4.0 * result.standard_error
        assert result.holds()

    def test_nonlinear_bound_holds(self, factory: SystemFactory, seed: SeedSpec) -> None:
        system = factory.build(SystemSpec(family=Family.NONLINEAR), 4, seed)
        result = output_variance_bound(system, 0.5 * np.eye(4), trials=5_000, seed=seed)
        assert result.exact is None
        assert result.empirical <= result.bound

    def test_rejects_non_psd(self, half_identity: AffineSystem) -> None:
        with pytest.raises(InvalidArgumentError):
            output_variance_bound(half_identity, np.array([[1.0, 2.0], [2.0, 1.0]]), trials=10)


class TestContraction:
    def _trace(self, half_identity: AffineSystem, start: np.ndarray, seed: SeedSpec):
        state = ConditioningState.of(Feature(values=start))
        _, trace = refine(half_identity, state, AdaptationConfig(k=1, passes=6), None, seed)
        return trace

    def test_rate_of_noiseless_iteration(self, half_identity: AffineSystem, seed: SeedSpec) -> None:
        trace = self._trace(half_identity, np.array([10.0, 0.0]), seed)
        fit = estimate_contraction_rate(trace, Feature(values=[2.0, 0.0]))
        assert fit.rate == pytest.approx(0.5, abs=1e-9)
        assert not fit.converged
        assert contraction_bound_holds(np.array(fit.errors), 0.5)

    def test_start_at_fixed_point(self, half_identity: AffineSystem, seed: SeedSpec) -> None:
        trace = self._trace(half_identity, np.array([2.0, 0.0]), seed)
        fit = estimate_contraction_rate(trace, Feature(values=[2.0, 0.0]))
        assert fit.converged
        assert fit.rate == 0.0

    def test_bound_violation_detected(self) -> None:
        assert not contraction_bound_holds(np.array([1.0, 0.9, 0.8]), 0.5)

    def test_needs_three_iterates(self, half_identity: AffineSystem, seed: SeedSpec) -> None:
        state = ConditioningState.of(Feature.zeros(2))
        _, trace = refine(half_identity, state, AdaptationConfig(k=1, passes=1), None, seed)
        with pytest.raises(InvalidArgumentError):
            estimate_contraction_rate(trace, Feature(values=[2.0, 0.0]))


class TestBiasVariance:
    def test_hand_case(self) -> None:
        bias_sq, variance = decompose_linearized(np.eye(2), np.array([0.3, 0.0]), 0.1 * np.eye(2))
        assert bias_sq == pytest.approx(0.09)
        assert variance == pytest.approx(0.2)

    def test_drift_free_has_no_bias(self) -> None:
        system = AffineSystem(
            matrix=np.eye(1),
            offset=np.zeros(1),
            noise=LaggedCovarianceModel(gamma0=[[1.0]]),
        )
        report = bias_variance_decompose(system, 4, trials=0)
        assert report.bias_sq == 0.0
        assert report.variance == pytest.approx(0.25, abs=1e-15)
        assert report.empirical_total is None

    def test_pipeline_decomposition(self, factory: SystemFactory, seed: SeedSpec) -> None:
        spec = SystemSpec(family=Family.LINEAR_PIPELINE, drift=0.2, rho=0.0, sigma2=1.0)
        system = factory.build(spec, 8, seed)
        report = bias_variance_decompose(system, 4, trials=20_000, seed=seed.child("noise"))
        assert report.bias_sq == pytest.approx(0.09, rel=1e-9)
        assert report.variance == pytest.approx(0.25, rel=1e-9)
        assert abs(report.empirical_total - report.total) <= 4.0 * report.empirical_standard_error

    def test_nonlinear_is_unsupported(self, factory: SystemFactory, seed: SeedSpec) -> None:
        system = factory.build(SystemSpec(family=Family.NONLINEAR), 3, seed)
        with pytest.raises(UnsupportedOperationError):
            bias_variance_decompose(system, 2, trials=0)


class TestChoiceOfK:
    def test_optimal_k(self) -> None:
        curve = optimal_k(1.0, lambda k: 0.1 * (k - 1), 6)
        assert curve.k_star == 4
        assert curve.values == pytest.approx((1.0, 0.51, 0.373333, 0.34, 0.36, 0.416667), abs=1e-6)

    def test_no_bias_picks_k_max(self) -> None:
        assert optimal_k(1.0, lambda k: 0.0, 9).k_star == 9

    def test_no_variance_picks_one(self) -> None:
        assert optimal_k(0.0, lambda k: 0.1 * (k - 1), 9).k_star == 1

    def test_ties_go_to_smaller_k(self) -> None:
        assert argmin_k([2.0, 1.0, 1.0]) == 2

    def test_rejects_k_max_below_one(self) -> None:
        with pytest.raises(InvalidArgumentError):
            optimal_k(1.0, lambda k: 0.0, 0)

    def test_sweep_recovers_k_star(self, factory: SystemFactory, seed: SeedSpec) -> None:
        spec = SystemSpec(family=Family.LINEAR_PIPELINE, drift=0.2, rho=0.0, sigma2=1.0)
        system = factory.build(spec, 8, seed)
        result = k_sweep(system, Feature.zeros(8), 12, 5_000, seed.child("noise"))

        assert result.k_max == 12
        assert result.k_star_analytic == 4
        assert result.k_star_empirical in (3, 4, 5)
        for point in result.points:
            expected = 1.0 / point.k + 0.01 * (point.k - 1) ** 2
            assert point.total == pytest.approx(expected, rel=1e-9)
            assert abs(point.empirical_total - point.total) <= 4.0 * point.empirical_standard_error + 1e-12
