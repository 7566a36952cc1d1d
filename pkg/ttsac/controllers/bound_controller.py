"""
Bound Controller Module.

This module checks the output variance bound
E||G(f_bar) - G(mu)||^2 <= L_G^2 tr(Cov(f_bar)) for every requested family
and aggregation size K.
"""

from typing import List, Tuple

import numpy as np

from ttsac.adaptation.estimator import mc_estimate_trials
from ttsac.analytics.bounds import output_variance_bound
from ttsac.analytics.covariance import aggregated_covariance
from ttsac.controllers.base import SuiteController
from ttsac.operators.base import GeneratorEncoderSystem
from ttsac.operators.operations import apply_T
from ttsac.schemas.experiment import (
    EMPIRICAL_ONLY,
    ExperimentConfig,
    ExperimentRecord,
    PlotSeries,
    PlotSpec,
    Suite,
    SuiteOutcome,
)
from ttsac.schemas.features import Feature
from ttsac.schemas.seeds import Purpose, SeedSpec
from ttsac.utils.logger import logger

BOUND_SLACK = 0.05
EXACT_Z = 3.0


class BoundController(SuiteController):
    """
    Controller for the output variance bound suite.

    Closed-form families use the analytic covariance and mean of f_bar; the
    nonlinear family uses their Monte Carlo estimates.
    """

    suite = Suite.BOUND

    def _aggregate(
        self, system: GeneratorEncoderSystem, k: int, trials: int, seed: SeedSpec
    ) -> Tuple[np.ndarray, np.ndarray]:
        start = Feature.zeros(system.dim)
        if system.closed_form:
            cov = aggregated_covariance(system.feature_noise(), k)
            return cov, apply_T(system, start, horizon=k).values
        samples = mc_estimate_trials(system, start, k, trials, seed)
        cov = np.atleast_2d(np.cov(samples, rowvar=False, ddof=1))
        return cov, samples.mean(axis=0)

    def execute(self, cfg: ExperimentConfig) -> SuiteOutcome:
        """
        Run the bound suite over ``cfg.families`` x ``cfg.k_values``.

        Args:
            cfg: Validated experiment config.

        Returns:
            SuiteOutcome with one record per (family, K) and a ratio plot.
        """
        logger.info(
            f"Running bound suite: families={[family.value for family in cfg.families]}, "
            f"K={cfg.k_values}, M={cfg.trials}"
        )
        master = self.master(cfg)
        records: List[ExperimentRecord] = []
        series: List[PlotSeries] = []
        for family in cfg.families:
            system = self.build_system(cfg, family)
            ratios: List[float] = []
            for k in cfg.k_values:
                cov, mu = self._aggregate(
                    system, k, cfg.trials, master.child(Purpose.NOISE).child(family.value).trial(k)
                )
                result = output_variance_bound(
                    system,
                    cov,
                    mu,
                    trials=cfg.trials,
                    seed=master.child(Purpose.PROBE).child(family.value).trial(k),
                )
                row = self.record(cfg, family=family.value, k=k)
                reference = result.exact if result.exact is not None else EMPIRICAL_ONLY
                row.estimate("output_variance", result.empirical, reference, result.standard_error)
                row.value("bound", result.bound)
                row.value("lipschitz", system.lipschitz_constant())
                row.check("bound_holds", result.holds(BOUND_SLACK))
                if result.exact is not None:
                    row.check(
                        "exact_within_3se",
                        abs(result.empirical - result.exact) <= EXACT_Z * result.standard_error,
                    )
                records.append(row.build())
                ratios.append(result.empirical / result.bound if result.bound > 0.0 else 0.0)
            series.append(PlotSeries(name=family.value, x=list(cfg.k_values), y=ratios))

        plot = PlotSpec(
            title="Output variance over its Lipschitz bound",
            x_label="K",
            y_label="empirical / bound",
            series=series,
        )
        return SuiteOutcome(records=records, plot=plot)
