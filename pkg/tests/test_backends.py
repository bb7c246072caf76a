"""Backend dispatch: numba int64 fast path vs object fallback."""

import subprocess
import sys
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from homnambu import backends, linalg


def _echelon_object(int_rows, rows, cols):
    import numpy as np

    m = backends._as_object_array(int_rows, rows, cols)
    pivots = np.full(min(rows, cols), -1, dtype=np.int64)
    _, rank = backends._echelon_core(m, pivots, 0)
    return [list(m[i]) for i in range(rank)], [int(p) for p in pivots[:rank]], rank


@given(
    st.lists(
        st.lists(st.integers(-20, 20), min_size=4, max_size=4),
        min_size=3,
        max_size=6,
    )
)
@settings(max_examples=80, deadline=None)
def test_fast_and_object_paths_agree(rows):
    got = backends.echelon_int([list(r) for r in rows], len(rows), 4)
    want = _echelon_object([list(r) for r in rows], len(rows), 4)
    assert got == want


def test_huge_entries_fall_back_exactly():
    big = 10**30
    m = linalg.mat([[big, 1], [0, Fraction(1, big)]])
    assert linalg.rank(m) == 2
    x = linalg.solve(m, (big, Fraction(2, big)))
    assert x is not None
    assert linalg.mat_vec(m, x) == (Fraction(big), Fraction(2, big))


def test_matmul_int_overflow_guard():
    a = [[2**40, 1], [0, 1]]
    b = [[2**40, 0], [1, 1]]
    out = backends.matmul_int(a, b, 2, 2, 2)
    assert out == [[2**80 + 1, 1], [1, 1]]


def test_pure_python_env_flag():
    code = (
        "import os; os.environ['HOMNAMBU_PURE_PYTHON'] = '1';\n"
        "from homnambu import backends, linalg\n"
        "assert not backends.numba_enabled()\n"
        "assert backends.backend_name() == 'object'\n"
        "m = linalg.mat([[1, 2, 3], [2, 4, 6], [0, 1, 1]])\n"
        "assert linalg.rank(m) == 2\n"
        "k = linalg.kernel_basis(m)\n"
        "assert k.dim == 1\n"
        "print('ok')\n"
    )
    proc = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, check=True
    )
    assert proc.stdout.strip() == "ok"


def test_backend_reports_numba_by_default(monkeypatch):
    monkeypatch.delenv("HOMNAMBU_PURE_PYTHON", raising=False)
    assert backends.backend_name() == "numba-int64"
