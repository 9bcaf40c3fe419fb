"""
Reproducible random streams and the Monte-Carlo worker pool.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

import numpy as np

logger = logging.getLogger(__name__)

T = TypeVar("T")

# Stream identifiers keep unrelated consumers of one master seed apart.
STREAM_DATA = 0
STREAM_REFERENCE = 1
STREAM_CALIBRATION = 2
STREAM_ALTERNATIVE = 3
STREAM_SMOOTHING = 4


def make_rng(seed: int, *spawn_key: int) -> np.random.Generator:
    """
    Build a generator for one (seed, stream, index) triple.

    The key is counter based: trial 17 of stream 2 gets the same numbers no
    matter which worker runs it or in which order.
    """
    if seed < 0:
        raise ValueError(f"Seed must be nonnegative, got {seed}")
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in spawn_key))
    return np.random.Generator(np.random.PCG64(sequence))


def run_trials(task: Callable[[int], T], indices: Sequence[int], jobs: int = 1) -> List[T]:
    """
    Evaluate ``task`` on every index, in parallel when ``jobs > 1``.

    Results come back in the order of ``indices``.
    """
    if jobs <= 1 or len(indices) <= 1:
        return [task(i) for i in indices]
    logger.debug(f"Dispatching {len(indices)} trials to {jobs} workers")
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(task, indices))
