"""
Test-time conditioning refinement.

A refinement pass replaces every refined stream's feature by the Monte Carlo
estimate T_hat computed from the current state (f_r <- f_bar). Several passes
form the approximate fixed-point iteration; two-pass inference generates,
refines from the first K frames and regenerates.
"""

import math
from typing import Dict, FrozenSet, List, Mapping, Tuple, Union

from ttsac.adaptation.estimator import mc_estimate_T
from ttsac.core.errors import InvalidArgumentError
from ttsac.core.features import feature_mean
from ttsac.operators.base import GeneratorEncoderSystem
from ttsac.operators.operations import generate_sequence
from ttsac.schemas.adaptation import (
    IDENTITY,
    AdaptationConfig,
    ConditioningState,
    RefinementTrace,
    TwoPassResult,
)
from ttsac.schemas.features import Feature, FeatureSequence, MotionLike, MotionProfile
from ttsac.schemas.seeds import Purpose, SeedSpec
from ttsac.utils.logger import logger

SystemsLike = Union[GeneratorEncoderSystem, Mapping[str, GeneratorEncoderSystem]]
"""One system for the identity stream, or one system per stream."""

MotionsLike = Union[MotionLike, Mapping[str, MotionLike]]
"""One driving signal for the identity stream, or one per stream."""


def _systems_by_stream(systems: SystemsLike) -> Dict[str, GeneratorEncoderSystem]:
    if isinstance(systems, GeneratorEncoderSystem):
        return {IDENTITY: systems}
    return dict(systems)


def _motion_for(motion: MotionsLike, stream: str) -> MotionLike:
    if isinstance(motion, Mapping):
        return motion.get(stream)
    return motion if stream == IDENTITY else None


def _check_streams(
    table: Mapping[str, GeneratorEncoderSystem],
    state: ConditioningState,
    streams: FrozenSet[str],
) -> None:
    missing_state = sorted(streams - set(state.streams))
    if missing_state:
        raise InvalidArgumentError(f"refined streams {missing_state} are absent from the state")
    missing_system = sorted(streams - set(table))
    if missing_system:
        raise InvalidArgumentError(f"refined streams {missing_system} have no system")


def _residual(state: ConditioningState, estimates: Mapping[str, Feature]) -> float:
    total = 0.0
    for stream, estimate in estimates.items():
        difference = state.streams[stream].values - estimate.values
        total += float(difference @ difference)
    return math.sqrt(total)


def _estimate_streams(
    table: Mapping[str, GeneratorEncoderSystem],
    state: ConditioningState,
    streams: FrozenSet[str],
    k: int,
    motion: MotionsLike,
    seed: SeedSpec,
) -> Dict[str, Feature]:
    return {
        stream: mc_estimate_T(
            table[stream], state.streams[stream], k, _motion_for(motion, stream), seed.child(stream)
        )
        for stream in sorted(streams)
    }


def _iterate(
    table: Mapping[str, GeneratorEncoderSystem],
    state: ConditioningState,
    streams: FrozenSet[str],
    k: int,
    passes: int,
    motion: MotionsLike,
    seed: SeedSpec,
) -> Tuple[ConditioningState, List[ConditioningState], List[float]]:
    """Run ``passes`` refinements; one extra estimate yields the final residual."""
    current = state
    iterates = [state]
    residuals: List[float] = []
    for index in range(passes + 1):
        estimates = _estimate_streams(table, current, streams, k, motion, seed.trial(index))
        residuals.append(_residual(current, estimates))
        if index == passes:
            break
        current = current.replace(estimates)
        iterates.append(current)
        logger.debug(f"Refinement pass {index + 1}/{passes}: residual={residuals[-1]:.6g}")
    return current, iterates, residuals


def refine(
    systems: SystemsLike,
    state: ConditioningState,
    cfg: AdaptationConfig,
    motion: MotionsLike,
    seed: SeedSpec,
) -> Tuple[ConditioningState, RefinementTrace]:
    """
    Refine the conditioning state for ``cfg.passes`` passes.

    Args:
        systems: System of the identity stream, or a mapping stream -> system.
        state: Initial conditioning state.
        cfg: Adaptation config (K, passes, refined streams).
        motion: Driving signal for the identity stream, or a mapping per stream.
        seed: Seed address; pass k of stream s uses ``seed.child(REFINE).trial(k).child(s)``.

    Returns:
        The refined state and the trace of passes + 1 iterates and residuals.

    Raises:
        InvalidArgumentError: If a refined stream is absent from the state or has no system.
    """
    table = _systems_by_stream(systems)
    _check_streams(table, state, cfg.streams)
    final, iterates, residuals = _iterate(
        table, state, cfg.streams, cfg.k, cfg.passes, motion, seed.child(Purpose.REFINE)
    )
    return final, RefinementTrace(iterates=tuple(iterates), residuals=tuple(residuals))


def _realize_motion(
    system: GeneratorEncoderSystem, motion: MotionLike, length: int, seed: SeedSpec
) -> MotionLike:
    if isinstance(motion, MotionProfile):
        return motion.sample(length, seed.rng())
    if motion is None:
        return system.sample_motion(length, seed)
    return motion


def two_pass_inference(
    systems: SystemsLike,
    state: ConditioningState,
    cfg: AdaptationConfig,
    motion: MotionsLike,
    length: int,
    seed: SeedSpec,
) -> TwoPassResult:
    """
    Generate, refine the conditioning from the first K frames, regenerate.

    Both passes are driven by the same realized driving signal; the second
    pass draws fresh noise. The first refinement is the mean of the first K
    first-pass frames; further passes (cfg.passes > 1) use fresh generations.

    Args:
        systems: System of the identity stream, or a mapping stream -> system.
        state: Initial conditioning state.
        cfg: Adaptation config.
        motion: Driving signal(s); distributions and None are realized once per stream.
        length: Frames T per pass, T >= K.
        seed: Seed address of the whole two-pass run.

    Returns:
        TwoPassResult with both passes (identity stream and per stream), the
        refined state and the trace.

    Raises:
        InvalidArgumentError: If T < K or a refined stream is unavailable.
    """
    if length < cfg.k:
        raise InvalidArgumentError(f"sequence length T={length} must be at least K={cfg.k}")
    table = _systems_by_stream(systems)
    _check_streams(table, state, cfg.streams)
    generated = [stream for stream in sorted(state.streams) if stream in table]

    motions = {
        stream: _realize_motion(
            table[stream],
            _motion_for(motion, stream),
            length,
            seed.child(Purpose.MOTION).child(stream),
        )
        for stream in generated
    }

    def generate(current: ConditioningState, purpose: Purpose) -> Dict[str, FeatureSequence]:
        return {
            stream: generate_sequence(
                table[stream],
                current.streams[stream],
                motions[stream],
                length,
                seed.child(purpose).child(stream),
            )
            for stream in generated
        }

    initial = generate(state, Purpose.PASS1)
    estimates = {stream: feature_mean(initial[stream], cfg.k) for stream in sorted(cfg.streams)}
    first_residual = _residual(state, estimates)
    final, iterates, residuals = _iterate(
        table,
        state.replace(estimates),
        cfg.streams,
        cfg.k,
        cfg.passes - 1,
        motions,
        seed.child(Purpose.REFINE),
    )
    refined = generate(final, Purpose.PASS2)
    logger.debug(
        f"Two-pass inference: T={length}, K={cfg.k}, passes={cfg.passes}, "
        f"initial residual={first_residual:.6g}"
    )
    return TwoPassResult(
        initial=initial[IDENTITY],
        refined=refined[IDENTITY],
        initial_streams=initial,
        refined_streams=refined,
        state=final,
        trace=RefinementTrace(
            iterates=(state, *iterates), residuals=(first_residual, *residuals)
        ),
    )
