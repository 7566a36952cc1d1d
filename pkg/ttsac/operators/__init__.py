"""
Operators module initialization.

This module contains the synthetic generator-encoder systems and the
operations that generate from them.
"""

from .affine import AffineSystem
from .base import GeneratorEncoderSystem
from .factory import SystemFactory
from .nonlinear import NonlinearSystem
from .operations import (
    apply_T,
    fixed_point,
    generate_batch,
    generate_sequence,
    lipschitz_constant,
    lipschitz_probe,
)
from .pipeline import LinearPipelineSystem

__all__ = [
    "GeneratorEncoderSystem",
    "AffineSystem",
    "NonlinearSystem",
    "LinearPipelineSystem",
    "SystemFactory",
    "apply_T",
    "fixed_point",
    "generate_batch",
    "generate_sequence",
    "lipschitz_constant",
    "lipschitz_probe",
]
