"""Intra-stage parallelism helpers.

The CHAMBERLENS_THREADS environment variable caps worker counts for the
embarrassingly-parallel stages; results are always emitted in input order
so parallel and serial runs are indistinguishable.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

_ENV_VAR = "CHAMBERLENS_THREADS"


def max_workers() -> int:
    raw = os.environ.get(_ENV_VAR, "")
    if raw.strip():
        try:
            n = int(raw)
        except ValueError:
            return os.cpu_count() or 1
        return max(1, n)
    return os.cpu_count() or 1


def map_ordered(fn: Callable[[T], R], items: Sequence[T] | Iterable[T]) -> list[R]:
    """Apply a pure function to every item, preserving input order."""
    items = list(items)
    workers = min(max_workers(), len(items)) if items else 1
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
