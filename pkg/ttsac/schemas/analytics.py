"""
Analytics schemas.
"""

from typing import Optional, Tuple

from pydantic import BaseModel, Field, computed_field, model_validator


class BiasVarianceReport(BaseModel):
    """
    Bias-variance decomposition of E||G(f_bar) - G(mu)||^2.

    Attributes:
        k: Frames aggregated.
        bias_sq: ||J (mu_K - mu)||^2.
        variance: tr(J Cov(f_bar) J^T).
        total: bias_sq + variance.
        empirical_total: Monte Carlo estimate of the left side.
        empirical_standard_error: Standard error of ``empirical_total``.
    """

    k: int = Field(..., ge=1)
    bias_sq: float = Field(..., ge=0.0)
    variance: float = Field(..., ge=0.0)
    empirical_total: Optional[float] = None
    empirical_standard_error: Optional[float] = None

    @computed_field  # type: ignore[prop-decorator]
    @property
    def total(self) -> float:
        return self.bias_sq + self.variance


class KSweepResult(BaseModel):
    """
    Analytic and empirical objective over K = 1..K_max.

    Attributes:
        points: Decomposition for every K.
        k_star_analytic: argmin of the analytic total.
        k_star_empirical: argmin of the empirical total.
    """

    points: Tuple[BiasVarianceReport, ...]
    k_star_analytic: int
    k_star_empirical: int

    @model_validator(mode="after")
    def _ordered(self) -> "KSweepResult":
        if [point.k for point in self.points] != list(range(1, len(self.points) + 1)):
            raise ValueError("points must cover K = 1..K_max in order")
        return self

    @property
    def k_max(self) -> int:
        return len(self.points)

    def analytic_totals(self) -> Tuple[float, ...]:
        return tuple(point.total for point in self.points)

    def empirical_totals(self) -> Tuple[float, ...]:
        return tuple(float(point.empirical_total or 0.0) for point in self.points)


class ObjectiveCurve(BaseModel):
    """
    sigma2 / K + Bias(K)^2 for K = 1..K_max.

    Attributes:
        values: Objective at K = 1..K_max.
        k_star: argmin, ties toward smaller K.
    """

    values: Tuple[float, ...]
    k_star: int


class ContractionFit(BaseModel):
    """
    Fitted linear convergence rate.

    Attributes:
        rate: exp of the least-squares slope of log ||f^(k) - f*||.
        converged: An iterate hit the fixed point exactly.
        errors: ||f^(k) - f*|| per iterate.
    """

    rate: float
    converged: bool
    errors: Tuple[float, ...]


class OutputVarianceBound(BaseModel):
    """
    Output variance bound E||G(f_bar) - G(mu)||^2 <= L_G^2 tr(Cov(f_bar)).

    Attributes:
        bound: L_G^2 tr(Cov).
        empirical: Monte Carlo estimate of the left side.
        standard_error: Standard error of ``empirical``.
        exact: tr(J Cov J^T) when the generator is affine.
    """

    bound: float
    empirical: float
    standard_error: float
    exact: Optional[float] = None

    def holds(self, slack: float = 0.05) -> bool:
        return self.empirical <= self.bound * (1.0 + slack)
