# utils/parallel.py - bounded, order-preserving worker pool

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from utils.validators import ConfigError

THREADS_ENV = "QLINFLOW_THREADS"

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(environ: Optional[dict] = None) -> int:
    """
    Worker count from QLINFLOW_THREADS

    Absent means the default (CPU count capped at 8); anything other than a
    positive integer is a configuration error.
    """
    env = os.environ if environ is None else environ
    raw = env.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return min(8, os.cpu_count() or 1)
    try:
        value = int(raw.strip())
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got '{raw}'")
    if value < 1:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got '{raw}'")
    return value


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> List[R]:
    """Map fn over items, results in input order regardless of completion order"""
    items = list(items)
    workers = resolve_threads() if threads is None else threads
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
