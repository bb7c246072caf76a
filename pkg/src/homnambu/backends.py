"""Integer elimination and matrix-product backends.

The exact linear algebra in :mod:`homnambu.linalg` reduces every problem
to fraction-free (Bareiss) elimination and plain products of integer
matrices.  Those two inner loops dominate the runtime of cohomology
reports, so they are jit-compiled with numba for machine int64 operands.
Bareiss intermediate entries are minors of the input, which can outgrow
int64, so the fast kernel tracks the magnitude of the active block and
bails out before any product could overflow; callers then redo the work
on a numpy object array holding Python big integers.  Both paths run the
same source, so results are bit-identical.

Set ``HOMNAMBU_PURE_PYTHON=1`` to skip numba entirely (the fallback is
also used automatically when numba is unavailable).
"""

from __future__ import annotations

import os

import numpy as np

PURE_ENV = "HOMNAMBU_PURE_PYTHON"

# 2 * I64_GUARD**2 must stay below 2**63; see the update formula in
# _echelon_core.
I64_GUARD = 2**31 - 1

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap if not (args and callable(args[0])) else args[0]


def numba_enabled() -> bool:
    return _HAVE_NUMBA and os.environ.get(PURE_ENV, "0").strip() in ("", "0")


def backend_name() -> str:
    return "numba-int64" if numba_enabled() else "object"


def _echelon_core(m, pivots, limit):
    """Fraction-free row echelon form, in place.

    Pivot choice is the first nonzero entry in column order, so the
    output (and everything derived from it) is deterministic.  With
    ``limit > 0`` the routine returns status 1 as soon as an operand in
    the active block exceeds ``limit``; with ``limit = 0`` it never
    bails (object arrays, arbitrary precision).

    Returns ``(status, rank)``; ``pivots[:rank]`` holds pivot columns.
    """
    rows, cols = m.shape
    rank = 0
    prev = 1
    for col in range(cols):
        if rank == rows:
            break
        if limit > 0:
            mx = prev if prev >= 0 else -prev
            for i in range(rank, rows):
                for j in range(col, cols):
                    a = m[i, j]
                    if a < 0:
                        a = -a
                    if a > mx:
                        mx = a
            if mx > limit:
                return 1, rank
        pr = -1
        for i in range(rank, rows):
            if m[i, col] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != rank:
            for j in range(cols):
                tmp = m[rank, j]
                m[rank, j] = m[pr, j]
                m[pr, j] = tmp
        piv = m[rank, col]
        for i in range(rank + 1, rows):
            f = m[i, col]
            for j in range(col + 1, cols):
                m[i, j] = (piv * m[i, j] - f * m[rank, j]) // prev
            m[i, col] = 0
        pivots[rank] = col
        prev = piv
        rank += 1
    return 0, rank


def _matmul_core(a, b, out):
    n, k = a.shape
    m = b.shape[1]
    for i in range(n):
        for j in range(m):
            s = out[i, j]
            for t in range(k):
                s += a[i, t] * b[t, j]
            out[i, j] = s


_echelon_fast = njit(cache=True)(_echelon_core) if _HAVE_NUMBA else None
_matmul_fast = njit(cache=True)(_matmul_core) if _HAVE_NUMBA else None


def _as_object_array(int_rows, rows, cols):
    m = np.empty((rows, cols), dtype=object)
    for i, row in enumerate(int_rows):
        for j, v in enumerate(row):
            m[i, j] = v
    return m


def echelon_int(int_rows, rows, cols):
    """Echelon form of an integer matrix given as nested lists.

    Returns ``(echelon_rows, pivot_cols, rank)`` with Python-int entries.
    """
    if rows == 0 or cols == 0:
        return [], [], 0
    pivots = np.full(min(rows, cols), -1, dtype=np.int64)
    if numba_enabled():
        mx = max((abs(v) for row in int_rows for v in row), default=0)
        if mx <= I64_GUARD:
            m = np.array(int_rows, dtype=np.int64)
            status, rank = _echelon_fast(m, pivots, I64_GUARD)
            if status == 0:
                ech = [[int(v) for v in m[i]] for i in range(rank)]
                return ech, [int(p) for p in pivots[:rank]], rank
    m = _as_object_array(int_rows, rows, cols)
    _, rank = _echelon_core(m, pivots, 0)
    ech = [list(m[i]) for i in range(rank)]
    return ech, [int(p) for p in pivots[:rank]], rank


def matmul_int(a_rows, b_rows, n, k, m):
    """Exact product of integer matrices given as nested lists."""
    if n == 0 or m == 0:
        return [[0] * m for _ in range(n)]
    if k == 0:
        return [[0] * m for _ in range(n)]
    if numba_enabled():
        ma = max((abs(v) for row in a_rows for v in row), default=0)
        mb = max((abs(v) for row in b_rows for v in row), default=0)
        if ma * mb * k < 2**62:
            a = np.array(a_rows, dtype=np.int64)
            b = np.array(b_rows, dtype=np.int64)
            out = np.zeros((n, m), dtype=np.int64)
            _matmul_fast(a, b, out)
            return [[int(v) for v in out[i]] for i in range(n)]
    a = _as_object_array(a_rows, n, k)
    b = _as_object_array(b_rows, k, m)
    out = np.dot(a, b)
    return [list(out[i]) for i in range(n)]
