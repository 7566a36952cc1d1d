"""
TT-SAC Verification Laboratory Package.

This package contains synthetic generator-encoder systems, the test-time
self-adaptive conditioning procedure and the numerical suites that check
its variance, contraction and bias-variance properties.
"""

__version__ = "0.1.0"
