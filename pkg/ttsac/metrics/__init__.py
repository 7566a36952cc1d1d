"""
Metrics module initialization.
"""

from .evaluation import compare, evaluate, frame_similarities

__all__ = ["compare", "evaluate", "frame_similarities"]
