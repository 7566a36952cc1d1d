"""
Blocked Monte Carlo runner.

Trials are split into blocks of MC_BLOCK_SIZE; block b draws from
``seed.trial(b)``. Blocks may run on a thread pool, and their outputs are
concatenated in ascending block order, so results do not depend on the
worker count.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Tuple

import numpy as np

from ttsac.core.config import settings
from ttsac.core.errors import InvalidArgumentError
from ttsac.schemas.seeds import SeedSpec
from ttsac.utils.logger import logger

BlockSampler = Callable[[SeedSpec, int], np.ndarray]
"""Callable (block seed, block size) -> array whose first axis indexes trials."""


def plan_blocks(trials: int, block_size: int) -> List[Tuple[int, int]]:
    """(block index, block size) pairs covering ``trials``."""
    if trials < 1:
        raise InvalidArgumentError(f"trials must be positive, got {trials}")
    if block_size < 1:
        raise InvalidArgumentError(f"block size must be positive, got {block_size}")
    return [
        (index, min(block_size, trials - start))
        for index, start in enumerate(range(0, trials, block_size))
    ]


def run_trials(
    sampler: BlockSampler,
    trials: int,
    seed: SeedSpec,
    block_size: Optional[int] = None,
    workers: Optional[int] = None,
) -> np.ndarray:
    """
    Run ``trials`` Monte Carlo trials in seeded blocks.

    Args:
        sampler: Produces the outputs of one block.
        trials: Total number of trials M.
        seed: Parent seed; block b uses ``seed.trial(b)``.
        block_size: Trials per block, defaults to MC_BLOCK_SIZE.
        workers: Thread count, defaults to MC_WORKERS.

    Returns:
        Block outputs concatenated along axis 0 in block order.
    """
    blocks = plan_blocks(trials, block_size or settings.MC_BLOCK_SIZE)
    pool_size = min(workers or settings.MC_WORKERS, len(blocks))
    logger.debug(f"Running {trials} trials in {len(blocks)} blocks on {pool_size} worker(s)")

    def work(block: Tuple[int, int]) -> np.ndarray:
        index, size = block
        return sampler(seed.trial(index), size)

    if pool_size <= 1:
        outputs = [work(block) for block in blocks]
    else:
        with ThreadPoolExecutor(max_workers=pool_size) as pool:
            outputs = list(pool.map(work, blocks))
    return np.concatenate(outputs, axis=0)


def mean_and_standard_error(samples: np.ndarray) -> Tuple[float, float]:
    """Sample mean and its standard error std(ddof=1) / sqrt(M) of a 1-D sample."""
    count = samples.shape[0]
    mean = float(samples.mean())
    if count < 2:
        return mean, 0.0
    return mean, float(samples.std(ddof=1) / np.sqrt(count))
