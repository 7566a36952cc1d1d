"""
Suite Controller Base Module.

This module holds the shared plumbing of the experiment suites: the
controller interface and the builder that turns estimates and checks into a
flat ExperimentRecord.
"""

from abc import ABC, abstractmethod
from typing import ClassVar, Dict, List, Optional, Union

from ttsac.core.errors import UsageError
from ttsac.operators.base import GeneratorEncoderSystem
from ttsac.operators.factory import SystemFactory
from ttsac.schemas.experiment import (
    EMPIRICAL_ONLY,
    Estimate,
    ExperimentConfig,
    ExperimentRecord,
    Family,
    Scalar,
    Suite,
    SuiteOutcome,
)
from ttsac.schemas.seeds import Purpose, SeedSpec
from ttsac.utils.logger import logger


class RecordBuilder:
    """
    Incremental builder of one ExperimentRecord.

    Attributes:
        suite: Suite of the record.
        seed: Master seed.
        params: Row parameters.
    """

    def __init__(self, suite: Suite, seed: int, **params: Scalar) -> None:
        self.suite = suite
        self.seed = seed
        self.params: Dict[str, Scalar] = dict(params)
        self._estimates: Dict[str, Estimate] = {}
        self._values: Dict[str, Scalar] = {}
        self._checks: Dict[str, bool] = {}

    def estimate(
        self,
        name: str,
        value: float,
        reference: Union[float, str] = EMPIRICAL_ONLY,
        standard_error: Optional[float] = None,
    ) -> "RecordBuilder":
        self._estimates[name] = Estimate(
            value=float(value),
            reference=reference if isinstance(reference, str) else float(reference),
            standard_error=None if standard_error is None else float(standard_error),
        )
        return self

    def value(self, name: str, value: Scalar) -> "RecordBuilder":
        self._values[name] = value
        return self

    def check(self, name: str, ok: bool) -> bool:
        self._checks[name] = bool(ok)
        if not ok:
            logger.warning(f"{self.suite.value}: check '{name}' failed ({self.params})")
        return bool(ok)

    def build(self) -> ExperimentRecord:
        return ExperimentRecord(
            suite=self.suite,
            seed=self.seed,
            params=self.params,
            estimates=self._estimates,
            values=self._values,
            checks=self._checks,
        )


class SuiteController(ABC):
    """
    Base controller for one experiment suite.

    Attributes:
        factory: SystemFactory used to build seeded systems.
    """

    suite: ClassVar[Suite]

    def __init__(self, factory: SystemFactory) -> None:
        """
        Initialize the controller.

        Args:
            factory: SystemFactory instance for building systems.
        """
        self.factory = factory
        logger.info(f"{type(self).__name__} initialized")

    @abstractmethod
    def execute(self, cfg: ExperimentConfig) -> SuiteOutcome:
        """Run the suite and return its records and plot."""

    def run(self, cfg: ExperimentConfig) -> List[ExperimentRecord]:
        return self.execute(cfg).records

    @staticmethod
    def master(cfg: ExperimentConfig) -> SeedSpec:
        return SeedSpec(master_seed=cfg.seed)

    def build_system(
        self, cfg: ExperimentConfig, family: Optional[Family] = None
    ) -> GeneratorEncoderSystem:
        spec = cfg.system if family is None else cfg.system.model_copy(update={"family": family})
        seed = self.master(cfg).child(Purpose.SYSTEM).child(spec.family.value)
        return self.factory.build(spec, cfg.dim, seed)

    def record(self, cfg: ExperimentConfig, **params: Scalar) -> RecordBuilder:
        base: Dict[str, Scalar] = {
            "dim": cfg.dim,
            "family": cfg.system.family.value,
            "rho": cfg.system.rho,
            "sigma2": cfg.system.sigma2,
            "drift": cfg.system.drift,
            "trials": cfg.trials,
        }
        base.update(params)
        return RecordBuilder(self.suite, cfg.seed, **base)

    def require_closed_form(self, system: GeneratorEncoderSystem) -> None:
        if not system.closed_form:
            raise UsageError(
                f"the {self.suite.value} suite needs a closed-form family, got {system.family}",
            )
