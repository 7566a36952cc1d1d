"""
Covariance Controller Module.

This module checks the closed-form covariance of the aggregated feature
against the naive double-sum oracle and against a Monte Carlo estimate.
"""

import numpy as np

from ttsac.analytics.covariance import (
    aggregated_covariance,
    aggregated_covariance_double_sum,
    covariance_standard_error,
    empirical_aggregated_covariance,
)
from ttsac.controllers.base import SuiteController
from ttsac.schemas.experiment import ExperimentConfig, Suite, SuiteOutcome
from ttsac.schemas.features import Feature
from ttsac.schemas.seeds import Purpose
from ttsac.utils.logger import logger

ORACLE_TOLERANCE = 1e-12
SCALAR_BAND_Z = 3.0
MATRIX_BAND_Z = 4.0


class CovarianceController(SuiteController):
    """
    Controller for the aggregated covariance suite.

    The empirical covariance of f_bar over M trials must fall inside a
    standard-error band around the closed form: 3 SE for a scalar feature,
    4 SE entrywise for d > 1.
    """

    suite = Suite.COVARIANCE

    def execute(self, cfg: ExperimentConfig) -> SuiteOutcome:
        """
        Run the covariance suite.

        Args:
            cfg: Validated experiment config.

        Returns:
            SuiteOutcome with one record and no plot.
        """
        logger.info(f"Running covariance suite: d={cfg.dim}, K={cfg.k}, M={cfg.trials}")
        system = self.build_system(cfg)
        self.require_closed_form(system)
        noise = system.feature_noise()

        analytic = aggregated_covariance(noise, cfg.k)
        oracle = aggregated_covariance_double_sum(noise, cfg.k)
        empirical = empirical_aggregated_covariance(
            system,
            Feature.zeros(system.dim),
            cfg.k,
            cfg.trials,
            self.master(cfg).child(Purpose.NOISE),
        )
        standard_error = covariance_standard_error(analytic, cfg.trials)
        z = SCALAR_BAND_Z if system.dim == 1 else MATRIX_BAND_Z

        deviation = np.abs(empirical - analytic)
        with np.errstate(divide="ignore", invalid="ignore"):
            scores = np.where(standard_error > 0.0, deviation / standard_error, 0.0)
        max_z = float(scores.max())
        scale = max(float(np.max(np.abs(analytic))), 1.0)
        oracle_error = float(np.max(np.abs(analytic - oracle)))

        builder = self.record(cfg, k=cfg.k)
        trace_se = float(np.sqrt(2.0 * np.sum(analytic**2) / (cfg.trials - 1)))
        builder.estimate("trace", np.trace(empirical), np.trace(analytic), trace_se)
        if system.dim == 1:
            builder.estimate(
                "variance", empirical[0, 0], analytic[0, 0], standard_error[0, 0]
            )
        builder.value("max_entry_z", max_z)
        builder.value("band_z", z)
        builder.value("oracle_max_error", oracle_error)

        builder.check("within_band", max_z <= z)
        builder.check("closed_form_matches_double_sum", oracle_error <= ORACLE_TOLERANCE * scale)
        if all(component.correlation == 0.0 for component in noise):
            iid = sum(component.gamma0 for component in noise) / cfg.k
            builder.check("iid_scaling", bool(np.allclose(analytic, iid, rtol=0.0, atol=1e-15)))
        return SuiteOutcome(records=[builder.build()])
