"""Best-effort parallel map with an environment-variable thread cap."""

import os
from concurrent.futures import ThreadPoolExecutor

ENV_VAR = "HOROLAB_THREADS"


def worker_count() -> int:
    raw = os.environ.get(ENV_VAR, "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def map_ordered(fn, items):
    """Apply fn over items, order-stable, honoring the thread cap."""
    items = list(items)
    n = worker_count()
    if n <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
