"""
Output variance bound.

If G is L_G-Lipschitz then E||G(f_bar) - G(mu)||^2 <= L_G^2 tr(Cov(f_bar)).
The left side is estimated with f_bar ~ N(mu, Cov), drawn with the project
normal sampler.
"""

from typing import Optional

import numpy as np

from ttsac.core.errors import InvalidArgumentError
from ttsac.operators.base import GeneratorEncoderSystem
from ttsac.schemas.analytics import OutputVarianceBound
from ttsac.schemas.seeds import SeedSpec
from ttsac.utils.linalg import PSD_TOLERANCE, is_psd, psd_sqrt
from ttsac.utils.monte_carlo import mean_and_standard_error, run_trials


def output_variance_bound(
    system: GeneratorEncoderSystem,
    cov_agg: np.ndarray,
    mu: Optional[np.ndarray] = None,
    trials: int = 20_000,
    seed: Optional[SeedSpec] = None,
) -> OutputVarianceBound:
    """
    Compare L_G^2 tr(Cov) with a Monte Carlo estimate of E||G(f_bar) - G(mu)||^2.

    Args:
        system: System exposing the generator map and its Lipschitz constant.
        cov_agg: Covariance of the aggregated feature.
        mu: Mean of the aggregated feature (zeros by default).
        trials: Monte Carlo trials.
        seed: Seed address of the draws.

    Returns:
        OutputVarianceBound, with the exact tr(J Cov J^T) for affine generators.

    Raises:
        InvalidArgumentError: If cov_agg is not a PSD d x d matrix.
    """
    cov = np.asarray(cov_agg, dtype=np.float64)
    if cov.shape != (system.dim, system.dim) or not is_psd(cov):
        raise InvalidArgumentError(
            f"covariance must be a symmetric PSD {system.dim}x{system.dim} matrix "
            f"(eigenvalue tolerance {PSD_TOLERANCE})",
        )
    center = np.zeros(system.dim) if mu is None else np.asarray(mu, dtype=np.float64)
    system.check_feature(center)
    lipschitz = system.lipschitz_constant()
    bound = lipschitz**2 * float(np.trace(cov))

    root = psd_sqrt(cov)
    anchor = system.generator_map(center)

    def sampler(block_seed: SeedSpec, size: int) -> np.ndarray:
        draws = center + block_seed.rng().standard_normal((size, system.dim)) @ root
        deviation = system.generator_map(draws) - anchor
        return np.sum(deviation**2, axis=1)

    empirical, standard_error = mean_and_standard_error(
        run_trials(sampler, trials, seed or SeedSpec())
    )
    exact = None
    if system.constant_jacobian:
        jacobian = system.generator_jacobian(center)
        exact = float(np.trace(jacobian @ cov @ jacobian.T))
    return OutputVarianceBound(
        bound=bound, empirical=empirical, standard_error=standard_error, exact=exact
    )
