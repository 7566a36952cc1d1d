"""
Dependency Injection Module.

This module wires the system factory into the suite controllers. The CLI asks
for a controller by suite; tests may pass their own factory.
"""

from typing import Callable, Dict, Optional

from ttsac.controllers.base import SuiteController
from ttsac.controllers.bias_variance_controller import BiasVarianceController
from ttsac.controllers.bound_controller import BoundController
from ttsac.controllers.contraction_controller import ContractionController
from ttsac.controllers.covariance_controller import CovarianceController
from ttsac.controllers.ksweep_controller import KSweepController
from ttsac.controllers.pipeline_controller import PipelineController
from ttsac.operators.factory import SystemFactory
from ttsac.schemas.experiment import Suite


system_factory: SystemFactory = SystemFactory()


def get_system_factory() -> SystemFactory:
    """
    Dependency to get the shared SystemFactory.

    Returns:
        SystemFactory instance.
    """
    return system_factory


def get_covariance_controller(factory: Optional[SystemFactory] = None) -> CovarianceController:
    """
    Dependency to get the CovarianceController.

    Args:
        factory: SystemFactory instance, the shared one by default.

    Returns:
        CovarianceController instance.
    """
    return CovarianceController(factory or get_system_factory())


def get_contraction_controller(factory: Optional[SystemFactory] = None) -> ContractionController:
    """
    Dependency to get the ContractionController.

    Args:
        factory: SystemFactory instance, the shared one by default.

    Returns:
        ContractionController instance.
    """
    return ContractionController(factory or get_system_factory())


def get_bound_controller(factory: Optional[SystemFactory] = None) -> BoundController:
    """
    Dependency to get the BoundController.

    Args:
        factory: SystemFactory instance, the shared one by default.

    Returns:
        BoundController instance.
    """
    return BoundController(factory or get_system_factory())


def get_bias_variance_controller(
    factory: Optional[SystemFactory] = None,
) -> BiasVarianceController:
    """
    Dependency to get the BiasVarianceController.

    Args:
        factory: SystemFactory instance, the shared one by default.

    Returns:
        BiasVarianceController instance.
    """
    return BiasVarianceController(factory or get_system_factory())


def get_k_sweep_controller(factory: Optional[SystemFactory] = None) -> KSweepController:
    """
    Dependency to get the KSweepController.

    Args:
        factory: SystemFactory instance, the shared one by default.

    Returns:
        KSweepController instance.
    """
    return KSweepController(factory or get_system_factory())


def get_pipeline_controller(factory: Optional[SystemFactory] = None) -> PipelineController:
    """
    Dependency to get the PipelineController.

    Args:
        factory: SystemFactory instance, the shared one by default.

    Returns:
        PipelineController instance.
    """
    return PipelineController(factory or get_system_factory())


CONTROLLERS: Dict[Suite, Callable[[Optional[SystemFactory]], SuiteController]] = {
    Suite.COVARIANCE: get_covariance_controller,
    Suite.CONTRACTION: get_contraction_controller,
    Suite.BOUND: get_bound_controller,
    Suite.BIAS_VARIANCE: get_bias_variance_controller,
    Suite.K_SWEEP: get_k_sweep_controller,
    Suite.PIPELINE: get_pipeline_controller,
}


def get_controller(suite: Suite, factory: Optional[SystemFactory] = None) -> SuiteController:
    """
    Dependency to get the controller of a suite.

    Args:
        suite: Suite to run.
        factory: Optional SystemFactory override.

    Returns:
        The suite's controller.
    """
    return CONTROLLERS[suite](factory)
