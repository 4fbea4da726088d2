"""Chunked, deterministic map-reduce over independent random streams.

Chunk ``i`` always draws from ``RngStream(seed, i)`` and results are returned in
chunk order, so outputs depend on ``(seed, chunk_size)`` but never on the
number of worker threads.  numpy releases the GIL inside its random fills and
LAPACK loops, which is where nearly all the time goes.
"""
from __future__ import annotations

import os
from collections.abc import Callable, Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TypeVar

from .statesampler import RngStream

T = TypeVar("T")

THREADS_ENV = "SEPSCOPE_THREADS"


def default_threads() -> int:
    value = os.environ.get(THREADS_ENV)
    if value:
        try:
            threads = int(value)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {value!r}") from None
        if threads < 1:
            raise ValueError(f"{THREADS_ENV} must be positive")
        return threads
    return os.cpu_count() or 1


@dataclass(frozen=True)
class ChunkPlan:
    total: int
    chunk_size: int

    def __post_init__(self):
        if self.total < 0 or self.chunk_size < 1:
            raise ValueError("need total >= 0 and chunk_size >= 1")

    @property
    def n_chunks(self) -> int:
        return -(-self.total // self.chunk_size)

    def sizes(self) -> list[int]:
        full, rest = divmod(self.total, self.chunk_size)
        return [self.chunk_size] * full + ([rest] if rest else [])


def map_chunks(
    fn: Callable[[RngStream, int], T],
    plan: ChunkPlan,
    seed: int,
    threads: int | None = None,
) -> list[T]:
    """Apply ``fn(stream, size)`` to every chunk of ``plan``; results in chunk order."""
    tasks = [(RngStream(seed, i), size) for i, size in enumerate(plan.sizes())]
    threads = threads or default_threads()
    if threads == 1 or len(tasks) <= 1:
        return [fn(stream, size) for stream, size in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda t: fn(*t), tasks))


def iter_chunks(
    fn: Callable[[RngStream, int], T],
    chunk_size: int,
    seed: int,
    threads: int | None = None,
    max_chunks: int | None = None,
) -> Iterator[T]:
    """Open-ended variant of :func:`map_chunks` for quota-driven sampling.

    Chunks are evaluated in waves of ``threads`` and yielded strictly in order;
    the consumer stops iteration once it has what it needs.
    """
    threads = threads or default_threads()
    index = 0
    with ThreadPoolExecutor(max_workers=threads) as pool:
        while max_chunks is None or index < max_chunks:
            wave = threads if max_chunks is None else min(threads, max_chunks - index)
            streams = [RngStream(seed, index + j) for j in range(wave)]
            yield from pool.map(lambda s: fn(s, chunk_size), streams)
            index += wave
