"""Worker-count plumbing for the embarrassingly parallel checkers.

Everything in this package is a pure function over immutable values, so
independent checks can run concurrently.  HOMNAMBU_WORKERS caps the
thread count; the default of 1 keeps execution sequential, which is
usually right for exact arithmetic (the interpreter lock serializes
Fraction work anyway).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

WORKERS_ENV = "HOMNAMBU_WORKERS"


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1").strip()
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_tasks(tasks):
    """Run a list of zero-argument callables, possibly in a thread pool;
    returns their results in order."""
    workers = worker_count()
    if workers <= 1 or len(tasks) <= 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        futures = [pool.submit(t) for t in tasks]
        return [f.result() for f in futures]
