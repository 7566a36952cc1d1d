"""
Seed derivation schema.

A SeedSpec is a master seed plus a path of integer keys. The random stream
for a path is ``numpy.random.SeedSequence(master_seed, spawn_key=path)``
feeding the default PCG64 bit generator; normals always come from
``Generator.standard_normal`` (ziggurat). Trial i appends ``(0, i)`` to the
path, a named purpose appends ``(1, tag)``, so trial and purpose keys never
collide. Within a stream, frame t reads row t-1 of the draw matrix.
"""

import zlib
from enum import IntEnum
from typing import Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

MAX_SEED = 2**64 - 1

_TRIAL_KEY = 0
_PURPOSE_KEY = 1


class Purpose(IntEnum):
    """Fixed purpose tags for derived streams."""

    NOISE = 1
    MOTION = 2
    PASS1 = 3
    PASS2 = 4
    REFINE = 5
    SYSTEM = 6
    SUBJECT = 7
    PROBE = 8


class SeedSpec(BaseModel):
    """
    Deterministic seed address.

    Attributes:
        master_seed: 64-bit unsigned master seed.
        path: Derivation keys appended by ``trial`` and ``child``.
    """

    model_config = ConfigDict(frozen=True)

    master_seed: int = Field(default=42, ge=0, le=MAX_SEED, description="64-bit master seed")
    path: Tuple[int, ...] = Field(default=(), description="Derivation path")

    def trial(self, index: int) -> "SeedSpec":
        """Independent stream for Monte Carlo trial (or block) ``index``."""
        if index < 0:
            raise ValueError(f"trial index must be non-negative, got {index}")
        return SeedSpec(master_seed=self.master_seed, path=self.path + (_TRIAL_KEY, index))

    def child(self, tag: Union[int, str]) -> "SeedSpec":
        """Independent stream for a named purpose; strings are keyed by CRC-32."""
        key = zlib.crc32(tag.encode("utf-8")) if isinstance(tag, str) else int(tag)
        return SeedSpec(master_seed=self.master_seed, path=self.path + (_PURPOSE_KEY, key))

    def sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(self.master_seed, spawn_key=self.path)

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.sequence())
