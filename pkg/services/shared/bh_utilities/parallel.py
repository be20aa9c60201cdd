"""Thread-pool helper honouring BERS_HORIZON_THREADS."""
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def thread_cap() -> int:
    raw = os.getenv("BERS_HORIZON_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"BERS_HORIZON_THREADS must be an integer, got {raw!r}")
    return max(1, os.cpu_count() or 1)


def ordered_map(fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
    """Map `fn` over `items` with the capped pool; results keep input order."""
    items = list(items)
    workers = min(thread_cap(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
