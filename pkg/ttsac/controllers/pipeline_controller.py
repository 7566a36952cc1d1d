"""
Pipeline Controller Module.

This module runs two-pass inference on the linear render/encode pipeline over
paired seeds and measures what the refined second pass gains over the
baseline first pass.

Each paired seed draws a subject mean mu and a static reference
f_r = mu + e with e orthogonal to mu. The identity pull moves the generated
frames from f_r toward mu at rate beta (``system.drift``), so refining the
conditioning from the first K frames should raise identity similarity and
shrink the drift norm. With beta = 0 the deltas must be zero within noise.
"""

from typing import Dict, List, Mapping, Tuple

import numpy as np

from ttsac.adaptation.refinement import two_pass_inference
from ttsac.controllers.base import SuiteController
from ttsac.core.errors import UsageError
from ttsac.metrics.evaluation import compare, evaluate, frame_similarities
from ttsac.operators.base import GeneratorEncoderSystem
from ttsac.schemas.adaptation import IDENTITY, MOTION, AdaptationConfig, ConditioningState
from ttsac.schemas.experiment import (
    ExperimentConfig,
    ExperimentRecord,
    Family,
    PlotSeries,
    PlotSpec,
    Suite,
    SuiteOutcome,
    SystemSpec,
)
from ttsac.schemas.features import Feature
from ttsac.schemas.metrics import HIGHER_IS_BETTER, MetricsDelta
from ttsac.schemas.seeds import Purpose, SeedSpec
from ttsac.utils.linalg import unit_vector
from ttsac.utils.logger import logger
from ttsac.utils.monte_carlo import mean_and_standard_error

BENEFIT_Z = 2.0
NULL_Z = 3.0
CHECKED_METRICS = ("mean_identity_sim", "drift_norm")


def subject_and_reference(
    dim: int, norm: float, offset: float, seed: SeedSpec
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Draw a subject mean of the given norm and a reference at distance ``offset``.

    The offset is orthogonal to the subject mean; it vanishes when d = 1.
    """
    rng = seed.rng()
    mu = norm * unit_vector(dim, rng)
    if dim == 1:
        return mu, mu.copy()
    raw = rng.standard_normal(dim)
    raw -= (raw @ mu) / (mu @ mu) * mu
    length = float(np.linalg.norm(raw))
    if length == 0.0:
        return mu, mu.copy()
    return mu, mu + offset * raw / length


class PipelineController(SuiteController):
    """
    Controller for the end-to-end two-pass pipeline suite.

    Records one row per paired seed and a summary row per stream with the mean
    delta of every metric and its standard error.
    """

    suite = Suite.PIPELINE

    def _stream_dims(self, cfg: ExperimentConfig) -> Dict[str, int]:
        dims = {IDENTITY: cfg.dim}
        if MOTION in cfg.streams:
            dims[MOTION] = cfg.system.motion_dim
        return dims

    def _pair(
        self,
        cfg: ExperimentConfig,
        spec: SystemSpec,
        dims: Mapping[str, int],
        seed: SeedSpec,
    ) -> Tuple[Dict[str, MetricsDelta], Dict[str, Tuple[np.ndarray, np.ndarray]]]:
        systems: Dict[str, GeneratorEncoderSystem] = {}
        features: Dict[str, Feature] = {}
        subjects: Dict[str, Feature] = {}
        master = self.master(cfg)
        for stream, dim in dims.items():
            mu, reference = subject_and_reference(
                dim,
                spec.identity_norm,
                spec.reference_offset,
                seed.child(Purpose.SUBJECT).child(stream),
            )
            systems[stream] = self.factory.pipeline(
                spec,
                dim,
                master.child(Purpose.SYSTEM).child(stream),
                prior=mu,
                prior_rate=cfg.system.drift,
            )
            features[stream] = Feature(values=reference)
            subjects[stream] = Feature(values=mu)

        state = ConditioningState(streams=features)
        result = two_pass_inference(
            systems,
            state,
            AdaptationConfig(k=cfg.k, passes=cfg.passes, streams=frozenset(cfg.streams)),
            None,
            cfg.length,
            seed,
        )
        deltas: Dict[str, MetricsDelta] = {}
        similarities: Dict[str, Tuple[np.ndarray, np.ndarray]] = {}
        for stream in dims:
            baseline_seq = result.initial_streams[stream]
            refined_seq = result.refined_streams[stream]
            deltas[stream] = compare(
                evaluate(baseline_seq, subjects[stream]), evaluate(refined_seq, subjects[stream])
            )
            similarities[stream] = (
                frame_similarities(baseline_seq, subjects[stream]),
                frame_similarities(refined_seq, subjects[stream]),
            )
        return deltas, similarities

    def execute(self, cfg: ExperimentConfig) -> SuiteOutcome:
        """
        Run the pipeline suite over ``cfg.trials`` paired seeds.

        Args:
            cfg: Validated experiment config (family linear-pipeline).

        Returns:
            SuiteOutcome with per-pair rows, per-stream summaries and a plot of
            the mean per-frame identity similarity of both passes.

        Raises:
            UsageError: If the family is not linear-pipeline, the identity pull
                rate is not below 1 or T < K.
        """
        if cfg.system.family is not Family.LINEAR_PIPELINE:
            raise UsageError(
                f"the pipeline suite runs the linear-pipeline family, got {cfg.system.family.value}"
            )
        if cfg.system.drift >= 1.0:
            raise UsageError(
                f"the pipeline identity pull rate must lie in [0, 1), got {cfg.system.drift}"
            )
        if cfg.length < cfg.k:
            raise UsageError(f"sequence length T={cfg.length} must be at least K={cfg.k}")
        logger.info(
            f"Running pipeline suite: beta={cfg.system.drift}, T={cfg.length}, K={cfg.k}, "
            f"pairs={cfg.trials}, streams={cfg.streams}"
        )
        spec = cfg.system.model_copy(update={"drift": 0.0})
        dims = self._stream_dims(cfg)
        master = self.master(cfg)

        records: List[ExperimentRecord] = []
        collected: Dict[str, List[MetricsDelta]] = {stream: [] for stream in dims}
        baseline_curve = np.zeros(cfg.length)
        refined_curve = np.zeros(cfg.length)
        for index in range(cfg.trials):
            deltas, similarities = self._pair(cfg, spec, dims, master.trial(index))
            baseline_curve += similarities[IDENTITY][0]
            refined_curve += similarities[IDENTITY][1]
            row = self.record(cfg, k=cfg.k, length=cfg.length, stage="pair", pair=index)
            for stream, delta in deltas.items():
                collected[stream].append(delta)
                for name in HIGHER_IS_BETTER:
                    row.estimate(f"{stream}_{name}_delta", getattr(delta, name))
            records.append(row.build())

        for stream, stream_deltas in collected.items():
            records.append(self._summary(cfg, stream, stream_deltas))

        frames = [float(t) for t in range(1, cfg.length + 1)]
        plot = PlotSpec(
            title="Identity similarity per frame",
            x_label="frame",
            y_label="mean cosine to mu",
            series=[
                PlotSeries(name="baseline", x=frames, y=(baseline_curve / cfg.trials).tolist()),
                PlotSeries(name="refined", x=frames, y=(refined_curve / cfg.trials).tolist()),
            ],
        )
        return SuiteOutcome(records=records, plot=plot)

    def _summary(
        self, cfg: ExperimentConfig, stream: str, deltas: List[MetricsDelta]
    ) -> ExperimentRecord:
        row = self.record(cfg, k=cfg.k, length=cfg.length, stage="summary", stream=stream)
        stats: Dict[str, Tuple[float, float]] = {}
        for name in HIGHER_IS_BETTER:
            samples = np.array([getattr(delta, name) for delta in deltas])
            stats[name] = mean_and_standard_error(samples)
            row.estimate(f"{name}_delta", stats[name][0], standard_error=stats[name][1])

        for name in CHECKED_METRICS:
            mean, se = stats[name]
            if cfg.system.drift > 0.0:
                improved = mean > BENEFIT_Z * se if HIGHER_IS_BETTER[name] else mean < -BENEFIT_Z * se
                row.check(f"{name}_improves", improved)
            else:
                row.check(f"{name}_unchanged", abs(mean) <= NULL_Z * se)
        return row.build()
