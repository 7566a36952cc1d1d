"""
Array-backed Pydantic base types.

Domain values hold numpy arrays. They are validated into read-only float64
arrays on construction and serialized as nested lists.
"""

from typing import Annotated, Any, Callable

import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer


def _as_array(ndim: int) -> Callable[[Any], np.ndarray]:
    def convert(value: Any) -> np.ndarray:
        array = np.array(value, dtype=np.float64)
        if array.ndim != ndim:
            raise ValueError(f"expected a {ndim}-dimensional array, got shape {array.shape}")
        if not np.all(np.isfinite(array)):
            raise ValueError("all entries must be finite")
        array.setflags(write=False)
        return array

    return convert


def _to_list(array: np.ndarray) -> list:
    return array.tolist()


Vector = Annotated[
    np.ndarray,
    BeforeValidator(_as_array(1)),
    PlainSerializer(_to_list, return_type=list),
]
"""Finite, read-only 1-D float array."""

Matrix = Annotated[
    np.ndarray,
    BeforeValidator(_as_array(2)),
    PlainSerializer(_to_list, return_type=list),
]
"""Finite, read-only 2-D float array (dense, row-major)."""


def _values_equal(left: Any, right: Any) -> bool:
    if isinstance(left, np.ndarray) or isinstance(right, np.ndarray):
        return isinstance(left, np.ndarray) and isinstance(right, np.ndarray) and (
            left.shape == right.shape and bool(np.array_equal(left, right))
        )
    return bool(left == right)


class ArrayModel(BaseModel):
    """
    Immutable model that may carry numpy arrays.

    Equality is bitwise on array fields.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return all(
            _values_equal(getattr(self, name), getattr(other, name))
            for name in type(self).model_fields
        )

    __hash__ = None  # type: ignore[assignment]
