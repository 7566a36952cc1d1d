"""
Tests for sequence metrics.
"""

import numpy as np
import pytest

from ttsac.core.errors import DegenerateInputError, InvalidArgumentError
from ttsac.metrics import compare, evaluate, frame_similarities
from ttsac.operators.factory import SystemFactory
from ttsac.operators.operations import generate_sequence
from ttsac.schemas.experiment import Family, SystemSpec
from ttsac.schemas.features import Feature, FeatureSequence
from ttsac.schemas.metrics import SequenceMetrics
from ttsac.schemas.seeds import SeedSpec

MU = Feature(values=[3.0, 4.0])


class TestEvaluate:
    def test_constant_sequence_at_mean(self) -> None:
        metrics = evaluate(FeatureSequence(values=np.tile(MU.values, (5, 1))), MU)
        assert metrics.mean_identity_sim == pytest.approx(1.0)
        assert metrics.drift_norm == 0.0
        assert metrics.smoothness == 1.0
        assert metrics.terminal_deviation == 0.0

    def test_flipped_frames(self) -> None:
        metrics = evaluate(FeatureSequence(values=[MU.values, -MU.values]), MU)
        assert metrics.mean_identity_sim == pytest.approx(0.0, abs=1e-15)
        # the frame mean is zero, so it lies ||mu|| away from mu
        assert metrics.drift_norm == pytest.approx(5.0)
        assert metrics.smoothness == 0.0
        assert metrics.terminal_deviation == pytest.approx(10.0)

    def test_single_frame_is_smooth(self) -> None:
        metrics = evaluate(FeatureSequence(values=[[1.0, 1.0]]), MU)
        assert metrics.smoothness == 1.0

    def test_linear_drift(self) -> None:
        direction = np.array([0.8, -0.6])
        frames = np.array([MU.values + 0.1 * t * direction for t in range(1, 21)])
        metrics = evaluate(FeatureSequence(values=frames), MU)
        assert metrics.drift_norm == pytest.approx(1.05)
        assert metrics.terminal_deviation == pytest.approx(2.0)
        assert metrics.smoothness == pytest.approx(1.0 - 0.1 / 5.0)

    def test_noiseless_drifting_pipeline(self, factory: SystemFactory, seed: SeedSpec) -> None:
        spec = SystemSpec(family=Family.LINEAR_PIPELINE, sigma2=0.0, drift=0.1)
        system = factory.build(spec, 2, seed)
        seq = generate_sequence(system, MU, None, 20, seed)
        assert evaluate(seq, MU).drift_norm == pytest.approx(0.1 * 10.5, rel=1e-9)

    def test_zero_mean_is_degenerate(self) -> None:
        with pytest.raises(DegenerateInputError):
            evaluate(FeatureSequence(values=[[1.0, 0.0]]), Feature.zeros(2))

    def test_zero_frame_is_degenerate(self) -> None:
        with pytest.raises(DegenerateInputError):
            frame_similarities(FeatureSequence(values=[[0.0, 0.0]]), MU)

    def test_dimension_mismatch(self) -> None:
        with pytest.raises(InvalidArgumentError):
            evaluate(FeatureSequence(values=[[1.0, 0.0, 0.0]]), MU)


class TestCompare:
    baseline = SequenceMetrics(
        mean_identity_sim=0.5, drift_norm=2.0, smoothness=0.75, terminal_deviation=3.0
    )
    refined = SequenceMetrics(
        mean_identity_sim=0.75, drift_norm=1.0, smoothness=0.5, terminal_deviation=3.0
    )

    def test_fieldwise_difference(self) -> None:
        delta = compare(self.baseline, self.refined)
        assert delta.mean_identity_sim == 0.25
        assert delta.drift_norm == -1.0
        assert delta.smoothness == -0.25
        assert delta.terminal_deviation == 0.0

    def test_antisymmetric(self) -> None:
        forward = compare(self.baseline, self.refined).model_dump()
        backward = compare(self.refined, self.baseline).model_dump()
        assert all(forward[name] == -backward[name] for name in forward)

    def test_improvements(self) -> None:
        assert compare(self.baseline, self.refined).improvements == {
            "mean_identity_sim": True,
            "drift_norm": True,
            "smoothness": False,
            "terminal_deviation": False,
        }
