"""
Linear convergence of the refinement iteration.

For a contraction with constant c, ||f^(k) - f*|| <= c^k ||f^(0) - f*||. The
rate is recovered as the exponentiated least-squares slope of log error
against the pass index.
"""

from typing import Optional

import numpy as np

from ttsac.core.errors import InvalidArgumentError
from ttsac.schemas.adaptation import IDENTITY, RefinementTrace
from ttsac.schemas.analytics import ContractionFit
from ttsac.schemas.features import Feature

ROUNDOFF = 1e-12


def iterate_errors(trace: RefinementTrace, f_star: Feature, stream: str = IDENTITY) -> np.ndarray:
    """||f^(k) - f*|| for every iterate of ``stream``."""
    return np.array(
        [np.linalg.norm(state.streams[stream].values - f_star.values) for state in trace.iterates]
    )


def estimate_contraction_rate(
    trace: RefinementTrace, f_star: Feature, stream: str = IDENTITY
) -> ContractionFit:
    """
    Fit the linear convergence rate of a refinement trace.

    Args:
        trace: Trace with at least three iterates.
        f_star: Known fixed point.
        stream: Stream whose iterates are fitted.

    Returns:
        ContractionFit; rate 0 with ``converged`` set once an iterate reaches f*
        up to round-off relative to the initial error.

    Raises:
        InvalidArgumentError: With fewer than three iterates.
    """
    if len(trace.iterates) < 3:
        raise InvalidArgumentError(
            f"at least 3 iterates are required, got {len(trace.iterates)}"
        )
    errors = iterate_errors(trace, f_star, stream)
    if np.any(errors <= ROUNDOFF * errors[0]):
        return ContractionFit(rate=0.0, converged=True, errors=tuple(errors.tolist()))
    steps = np.arange(errors.shape[0], dtype=np.float64)
    slope, _ = np.polyfit(steps, np.log(errors), 1)
    return ContractionFit(rate=float(np.exp(slope)), converged=False, errors=tuple(errors.tolist()))


def contraction_bound_holds(
    errors: np.ndarray, rate: float, tolerance: Optional[float] = 1e-9
) -> bool:
    """
    ||f^(k) - f*|| <= rate^k ||f^(0) - f*|| (1 + tolerance) for every k.

    Errors within round-off of zero always satisfy the envelope, so a rate of 0
    is checkable.
    """
    steps = np.arange(errors.shape[0], dtype=np.float64)
    envelope = rate**steps * errors[0] * (1.0 + (tolerance or 0.0)) + ROUNDOFF * errors[0]
    return bool(np.all(errors <= envelope))
