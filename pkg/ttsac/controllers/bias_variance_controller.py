"""
Bias-Variance Controller Module.

This module compares the analytic bias-variance decomposition with its Monte
Carlo estimate at the configured K.
"""

from ttsac.analytics.bias_variance import bias_variance_decompose
from ttsac.controllers.base import SuiteController
from ttsac.schemas.experiment import ExperimentConfig, Suite, SuiteOutcome
from ttsac.schemas.features import Feature
from ttsac.schemas.seeds import Purpose
from ttsac.utils.logger import logger

TOTAL_Z = 3.0


class BiasVarianceController(SuiteController):
    """Controller for the bias-variance suite (affine and linear-pipeline families)."""

    suite = Suite.BIAS_VARIANCE

    def execute(self, cfg: ExperimentConfig) -> SuiteOutcome:
        logger.info(
            f"Running bias-variance suite: family={cfg.system.family.value}, "
            f"K={cfg.k}, drift={cfg.system.drift}"
        )
        system = self.build_system(cfg)
        self.require_closed_form(system)
        report = bias_variance_decompose(
            system,
            cfg.k,
            Feature.zeros(system.dim),
            trials=cfg.trials,
            seed=self.master(cfg).child(Purpose.NOISE),
        )
        empirical = float(report.empirical_total or 0.0)
        standard_error = float(report.empirical_standard_error or 0.0)

        row = self.record(cfg, k=cfg.k)
        row.estimate("total", empirical, report.total, standard_error)
        row.value("bias_sq", report.bias_sq)
        row.value("variance", report.variance)
        row.check("total_within_3se", abs(empirical - report.total) <= TOTAL_Z * standard_error)
        return SuiteOutcome(records=[row.build()])
