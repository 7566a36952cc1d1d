"""
K-Sweep Controller Module.

This module sweeps the aggregation window K = 1..K_max and compares the
empirical bias-variance curve and its argmin with the analytic ones.
"""

import math
from typing import List

from ttsac.analytics.ksweep import k_sweep
from ttsac.controllers.base import SuiteController
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

POINT_Z = 4.0
MONOTONE_Z = 3.0


class KSweepController(SuiteController):
    """
    Controller for the K-sweep suite.

    With drift the empirical curve must reach its minimum before K_max and
    rise again; without drift the analytic optimum is K_max and the empirical
    curve is non-increasing within noise.
    """

    suite = Suite.K_SWEEP

    def execute(self, cfg: ExperimentConfig) -> SuiteOutcome:
        """
        Run the K sweep.

        Args:
            cfg: Validated experiment config.

        Returns:
            SuiteOutcome with one record per K, a summary record and a plot
            with the analytic and empirical totals.
        """
        logger.info(
            f"Running k-sweep suite: K_max={cfg.k_max}, drift={cfg.system.drift}, M={cfg.trials}"
        )
        system = self.build_system(cfg)
        self.require_closed_form(system)
        result = k_sweep(
            system,
            Feature.zeros(system.dim),
            cfg.k_max,
            cfg.trials,
            self.master(cfg).child(Purpose.NOISE),
        )

        records: List[ExperimentRecord] = []
        for point in result.points:
            se = float(point.empirical_standard_error or 0.0)
            empirical = float(point.empirical_total or 0.0)
            row = self.record(cfg, k_max=cfg.k_max, stage="point", k=point.k)
            row.estimate("total", empirical, point.total, se)
            row.value("bias_sq", point.bias_sq)
            row.value("variance", point.variance)
            row.check("total_within_4se", abs(empirical - point.total) <= POINT_Z * se + 1e-12)
            records.append(row.build())

        analytic = result.analytic_totals()
        empirical_totals = result.empirical_totals()
        errors = [float(point.empirical_standard_error or 0.0) for point in result.points]

        summary = self.record(cfg, k_max=cfg.k_max, stage="summary")
        summary.value("k_star_analytic", result.k_star_analytic)
        summary.value("k_star_empirical", result.k_star_empirical)
        summary.check(
            "k_star_within_one", abs(result.k_star_empirical - result.k_star_analytic) <= 1
        )
        if cfg.system.drift > 0.0 and result.k_max >= 2:
            summary.check("minimum_before_k_max", result.k_star_empirical < result.k_max)
            summary.check("degrades_at_k_max", empirical_totals[-1] > min(empirical_totals))
        elif cfg.system.drift == 0.0:
            summary.check("analytic_k_star_is_k_max", result.k_star_analytic == result.k_max)
            summary.check(
                "empirical_nonincreasing",
                all(
                    after <= before + MONOTONE_Z * math.hypot(se_before, se_after)
                    for before, after, se_before, se_after in zip(
                        empirical_totals, empirical_totals[1:], errors, errors[1:]
                    )
                ),
            )
        records.append(summary.build())

        ks = [float(point.k) for point in result.points]
        plot = PlotSpec(
            title="Bias-variance objective over K",
            x_label="K",
            y_label="E||G(f_bar) - G(mu)||^2",
            series=[
                PlotSeries(name="analytic", x=ks, y=list(analytic)),
                PlotSeries(name="empirical", x=ks, y=list(empirical_totals)),
            ],
        )
        return SuiteOutcome(records=records, plot=plot)
