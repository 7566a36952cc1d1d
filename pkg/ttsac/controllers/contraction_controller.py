"""
Contraction Controller Module.

This module runs the refinement iteration on a noiseless copy of a contractive
system and checks linear convergence toward the known fixed point, plus the
stochastic single-step behaviour of the Monte Carlo estimator.
"""

from typing import List

import numpy as np

from ttsac.adaptation.estimator import mc_estimate_trials
from ttsac.adaptation.objective import self_consistency_gradient, self_consistency_objective
from ttsac.adaptation.refinement import refine
from ttsac.analytics.contraction import (
    ROUNDOFF,
    contraction_bound_holds,
    estimate_contraction_rate,
)
from ttsac.analytics.covariance import aggregated_covariance
from ttsac.controllers.base import SuiteController
from ttsac.core.errors import UsageError
from ttsac.operators.affine import AffineSystem
from ttsac.operators.base import GeneratorEncoderSystem
from ttsac.operators.nonlinear import NonlinearSystem
from ttsac.operators.operations import apply_T, fixed_point
from ttsac.schemas.adaptation import AdaptationConfig, ConditioningState
from ttsac.schemas.experiment import (
    ExperimentConfig,
    ExperimentRecord,
    PlotSeries,
    PlotSpec,
    Suite,
    SuiteOutcome,
)
from ttsac.schemas.features import Feature
from ttsac.schemas.seeds import Purpose
from ttsac.utils.logger import logger

RATE_TOLERANCE = 1e-9
NONLINEAR_RATE_SLACK = 0.02
STATIONARITY_TOLERANCE = 1e-10
UNBIASED_Z = 4.0
STEP_Z = 3.0


class ContractionController(SuiteController):
    """
    Controller for the contraction suite.

    Supports the affine family (rate equals ||A||) and the nonlinear family
    (rate bounded by c ||W||).
    """

    suite = Suite.CONTRACTION

    def _contraction_constant(self, system: GeneratorEncoderSystem) -> float:
        if isinstance(system, AffineSystem):
            return system.spectral_norm
        if isinstance(system, NonlinearSystem):
            return system.lipschitz_constant()
        raise UsageError(
            f"the contraction suite supports the affine and nonlinear families, got {system.family}",
        )

    def execute(self, cfg: ExperimentConfig) -> SuiteOutcome:
        """
        Run the contraction suite.

        Args:
            cfg: Validated experiment config; ``passes`` must be at least 2.

        Returns:
            SuiteOutcome with one record per iterate, a summary record and,
            for the affine family, a stochastic single-step record.
        """
        if cfg.passes < 2:
            raise UsageError("the contraction suite needs passes >= 2 to fit a rate")
        logger.info(
            f"Running contraction suite: family={cfg.system.family.value}, "
            f"K={cfg.k}, passes={cfg.passes}"
        )
        system = self.build_system(cfg)
        constant = self._contraction_constant(system)
        noiseless = system.without_noise()
        start = Feature.zeros(system.dim)
        f_star = fixed_point(noiseless, horizon=cfg.k)

        _, trace = refine(
            noiseless,
            ConditioningState.of(start),
            AdaptationConfig(k=cfg.k, passes=cfg.passes),
            None,
            self.master(cfg),
        )
        fit = estimate_contraction_rate(trace, f_star)
        errors = np.asarray(fit.errors)
        envelope = constant ** np.arange(errors.shape[0]) * errors[0]
        residuals = np.asarray(trace.residuals)

        records: List[ExperimentRecord] = []
        for index, (error, bound, residual) in enumerate(zip(errors, envelope, residuals)):
            row = self.record(cfg, k=cfg.k, passes=cfg.passes, stage="iteration", iteration=index)
            row.estimate("error", error, bound)
            row.value("residual", float(residual))
            row.check(
                "within_envelope",
                error <= bound * (1.0 + RATE_TOLERANCE) + ROUNDOFF * errors[0],
            )
            records.append(row.build())

        summary = self.record(cfg, k=cfg.k, passes=cfg.passes, stage="summary")
        summary.value("contraction_constant", constant)
        summary.value("converged", fit.converged)
        summary.check("bound_holds", contraction_bound_holds(errors, constant, RATE_TOLERANCE))
        floor = ROUNDOFF * residuals[0]
        summary.check("residuals_decrease", bool(np.all(np.diff(residuals) <= floor)))
        if isinstance(system, AffineSystem):
            summary.estimate("rate", fit.rate, constant)
            summary.check(
                "rate_matches_spectral_norm",
                fit.converged or abs(fit.rate - constant) <= RATE_TOLERANCE,
            )
            # ratios are only defined until the residual vanishes
            active = residuals[:-1] > floor
            ratios = residuals[1:][active] / residuals[:-1][active]
            summary.check(
                "residual_ratio_matches_spectral_norm",
                bool(np.all(np.abs(ratios - constant) <= RATE_TOLERANCE))
                and bool(np.all(residuals[1:][~active] <= floor)),
            )
            gradient = self_consistency_gradient(system, f_star, horizon=cfg.k)
            objective = self_consistency_objective(system, f_star, horizon=cfg.k)
            summary.value("objective_at_fixed_point", objective)
            summary.check(
                "stationary_gradient",
                float(np.max(np.abs(gradient.values))) <= STATIONARITY_TOLERANCE,
            )
        else:
            summary.estimate("rate", fit.rate)
            summary.value("rate_bound", constant)
            summary.check("rate_within_bound", fit.rate <= constant + NONLINEAR_RATE_SLACK)
        records.append(summary.build())

        if isinstance(system, AffineSystem):
            records.append(self._single_step(cfg, system, start, f_star, constant))

        plot = PlotSpec(
            title=f"Refinement error ({system.family})",
            x_label="iteration",
            y_label="||f(k) - f*||",
            series=[
                PlotSeries(name="error", x=list(range(errors.shape[0])), y=errors.tolist()),
                PlotSeries(name="bound", x=list(range(errors.shape[0])), y=envelope.tolist()),
            ],
        )
        return SuiteOutcome(records=records, plot=plot)

    def _single_step(
        self,
        cfg: ExperimentConfig,
        system: AffineSystem,
        start: Feature,
        f_star: Feature,
        constant: float,
    ) -> ExperimentRecord:
        """Unbiasedness of T_hat and one-step contraction in expectation."""
        samples = mc_estimate_trials(
            system, start, cfg.k, cfg.trials, self.master(cfg).child(Purpose.NOISE)
        )
        mean = samples.mean(axis=0)
        target = apply_T(system, start, horizon=cfg.k).values
        cov = aggregated_covariance(system.feature_noise(), cfg.k)
        sigma = np.sqrt(np.diag(cov))
        entry_bound = UNBIASED_Z * sigma / np.sqrt(cfg.trials)
        step_se = float(np.sqrt(np.trace(cov) / cfg.trials))

        distance = float(np.linalg.norm(mean - f_star.values))
        step_bound = constant * float(np.linalg.norm(start.values - f_star.values))

        row = self.record(cfg, k=cfg.k, passes=cfg.passes, stage="single-step")
        row.value("max_unbiasedness_error", float(np.max(np.abs(mean - target))))
        row.estimate("step_distance", distance, step_bound, step_se)
        row.check("unbiased", bool(np.all(np.abs(mean - target) <= entry_bound)))
        row.check("one_step_contracts", distance <= step_bound + STEP_Z * step_se)
        return row.build()
