#!/usr/bin/env python3
"""Compare the numba int64 kernels against the object-array fallback.

Times fraction-free elimination (rank/kernel) and exact integer matrix
products on random matrices, then on a real workload: the degree-3 by
degree-2 operator composition for the twisted 4-dimensional fixture.

The fallback is selected the same way users select it: through the
HOMNAMBU_PURE_PYTHON environment flag, read per call.
"""

import os
import random
import time

from homnambu import backends, fixtures, linalg
from homnambu import scalar_cohomology as sc
from homnambu import adjoint_cohomology as ac


def timed(fn, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def with_backend(pure, fn, repeats=3):
    old = os.environ.get(backends.PURE_ENV)
    os.environ[backends.PURE_ENV] = "1" if pure else "0"
    try:
        return timed(fn, repeats)
    finally:
        if old is None:
            os.environ.pop(backends.PURE_ENV, None)
        else:
            os.environ[backends.PURE_ENV] = old


def random_matrix(rng, rows, cols, span=9):
    return linalg.mat([[rng.randint(-span, span) for _ in range(cols)] for _ in range(rows)])


def bench_elimination():
    # operator matrices are sparse with small entries, so the int64 path
    # runs to completion; dense random matrices with big entries would
    # overflow the minor bound after a few pivots and fall back anyway
    print("rank of coboundary-operator matrices (twisted 4-dim fixture)")
    print(f"{'matrix':>20} {'numba':>10} {'object':>10} {'speedup':>8}")
    alg = fixtures.twisted_filippov_rotation()
    cases = [
        ("scalar deg2 144x24", sc.coboundary_matrix(alg, 2).to_dense()),
        ("scalar deg3 864x144", sc.coboundary_matrix(alg, 3).to_dense()),
        ("adjoint deg2 576x96", ac.coboundary_matrix(alg, 2).to_dense()),
    ]
    for name, m in cases:
        fast, r1 = with_backend(False, lambda: linalg.rank(m))
        slow, r2 = with_backend(True, lambda: linalg.rank(m))
        assert r1 == r2, "backends disagree"
        print(f"{name:>20} {fast:>9.4f}s {slow:>9.4f}s {slow / fast:>7.1f}x")



def bench_matmul():
    rng = random.Random(11)
    print("\nexact products of random integer matrices")
    print(f"{'size':>10} {'numba':>10} {'object':>10} {'speedup':>8}")
    for size in (60, 120, 240):
        a = random_matrix(rng, size, size)
        b = random_matrix(rng, size, size)

        def work():
            return linalg.matmul(a, b)[0, 0]

        fast, r1 = with_backend(False, work)
        slow, r2 = with_backend(True, work)
        assert r1 == r2
        print(f"{size:>7}x{size:<3} {fast:>9.4f}s {slow:>9.4f}s {slow / fast:>7.1f}x")


def bench_operator_composition():
    print("\ndense operator-composition oracle (4-dim fixture, adjoint degree 3 . degree 2)")
    alg = fixtures.filippov_n3()
    hi = ac.coboundary_matrix(alg, 3).to_dense()
    lo = ac.coboundary_matrix(alg, 2).to_dense()

    def zero_check():
        prod = linalg.matmul(hi, lo)
        return linalg.is_zero_matrix(prod)

    fast, r1 = with_backend(False, zero_check, repeats=1)
    slow, r2 = with_backend(True, zero_check, repeats=1)
    assert r1 == r2
    shape = f"{hi.shape[0]}x{hi.shape[1]} . {lo.shape[0]}x{lo.shape[1]}"
    print(f"{shape:>22} numba {fast:.4f}s  object {slow:.4f}s  speedup {slow / fast:.1f}x")


if __name__ == "__main__":
    print(f"numba available: {backends.numba_enabled()} (backend: {backends.backend_name()})")
    bench_elimination()
    bench_matmul()
    bench_operator_composition()
