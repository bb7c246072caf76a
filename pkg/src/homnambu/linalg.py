"""Exact linear algebra over the rationals.

Scalars are :class:`fractions.Fraction` (always lowest terms, positive
denominator); matrices are 2-D numpy arrays with ``dtype=object`` whose
entries are Fractions.  Everything here is a pure function of its
arguments, so concurrent use needs no synchronization.

Ranks and kernels are computed over the rationals; they agree with the
values over any extension field, which is why the rest of the package
can work over Q without changing any cohomology dimension.  Elimination
is fraction-free with a fixed pivot rule, and all reported bases are in
reduced echelon form, so outputs are canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from . import backends

ZERO = Fraction(0)
ONE = Fraction(1)


class LinAlgError(ValueError):
    pass


class NotASubspaceError(LinAlgError):
    """Raised when a claimed subspace containment fails."""


def mat(rows) -> np.ndarray:
    """Build an exact matrix from nested sequences of rational-likes."""
    rows = [list(r) for r in rows]
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise LinAlgError("ragged rows")
    m = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            m[i, j] = Fraction(v)
    return m


def zeros(rows: int, cols: int) -> np.ndarray:
    m = np.empty((rows, cols), dtype=object)
    m[:] = ZERO
    return m


def eye(n: int) -> np.ndarray:
    m = zeros(n, n)
    for i in range(n):
        m[i, i] = ONE
    return m


def vec(entries) -> tuple:
    return tuple(Fraction(v) for v in entries)


def is_zero_matrix(m) -> bool:
    return all(not v for v in np.asarray(m, dtype=object).flat)


def _int_rows(m):
    """Clear denominators row by row (row scaling preserves row space,
    null space and pivot structure)."""
    m = np.asarray(m, dtype=object)
    out = []
    for row in m:
        den = 1
        for v in row:
            den = den * v.denominator // gcd(den, v.denominator)
        out.append([int(v * den) for v in row])
    return out


def _echelon(m):
    rows, cols = m.shape
    ech, pivots, rank = backends.echelon_int(_int_rows(m), rows, cols)
    return ech, pivots, rank


def rank(m) -> int:
    """Exact rank over the rationals."""
    m = np.asarray(m, dtype=object)
    return _echelon(m)[2]


def rref(m):
    """Reduced row echelon form over Q.

    Returns ``(R, pivots)`` where R has ``rank`` rows (zero rows dropped).
    """
    m = np.asarray(m, dtype=object)
    ech, pivots, rk = _echelon(m)
    cols = m.shape[1]
    r = np.empty((rk, cols), dtype=object)
    for i in range(rk):
        piv = Fraction(ech[i][pivots[i]])
        for j in range(cols):
            r[i, j] = Fraction(ech[i][j]) / piv
    for i in range(rk - 1, -1, -1):
        p = pivots[i]
        for i2 in range(i):
            c = r[i2, p]
            if c:
                r[i2] = r[i2] - c * r[i]
    return r, tuple(pivots)


def kernel_basis(m) -> "SubspaceBasis":
    """Canonical basis of the right null space (reduced echelon form)."""
    m = np.asarray(m, dtype=object)
    cols = m.shape[1]
    r, pivots = rref(m)
    free = [c for c in range(cols) if c not in set(pivots)]
    vectors = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        for row_idx, p in enumerate(pivots):
            v[p] = -r[row_idx, f]
        vectors.append(tuple(v))
    return SubspaceBasis(cols, tuple(vectors))


def image_basis(m) -> "SubspaceBasis":
    """Canonical basis of the column space (reduced echelon form)."""
    m = np.asarray(m, dtype=object)
    r, _ = rref(m.T)
    return SubspaceBasis(m.shape[0], tuple(tuple(row) for row in r))


def row_space_basis(m) -> "SubspaceBasis":
    m = np.asarray(m, dtype=object)
    r, _ = rref(m)
    return SubspaceBasis(m.shape[1], tuple(tuple(row) for row in r))


def solve(m, b):
    """One exact solution of ``m @ x = b`` or ``None`` when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    m = np.asarray(m, dtype=object)
    rows, cols = m.shape
    b = vec(b)
    if len(b) != rows:
        raise LinAlgError("right-hand side length mismatch")
    aug = np.empty((rows, cols + 1), dtype=object)
    aug[:, :cols] = m
    for i in range(rows):
        aug[i, cols] = b[i]
    r, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [ZERO] * cols
    for row_idx, p in enumerate(pivots):
        x[p] = r[row_idx, cols]
    return tuple(x)


def matmul(a, b) -> np.ndarray:
    """Exact product of two rational matrices.

    Denominators are cleared (one common denominator per factor), the
    integer product runs on the fast backend when it fits in int64, and
    the result is rescaled back.
    """
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    n, k = a.shape
    k2, m = b.shape
    if k != k2:
        raise LinAlgError("shape mismatch in matmul")

    def common_den(x):
        den = 1
        for v in x.flat:
            den = den * v.denominator // gcd(den, v.denominator)
        return den

    def int_rows(x, den):
        if den == 1:
            return [[v.numerator for v in row] for row in x]
        return [[int(v * den) for v in row] for row in x]

    da, db = common_den(a), common_den(b)
    prod = backends.matmul_int(int_rows(a, da), int_rows(b, db), n, k, m)
    scale = Fraction(1, da * db)
    out = np.empty((n, m), dtype=object)
    if scale == 1:
        for i in range(n):
            row = prod[i]
            for j in range(m):
                out[i, j] = Fraction(row[j])
    else:
        for i in range(n):
            row = prod[i]
            for j in range(m):
                out[i, j] = row[j] * scale
    return out


def mat_vec(m, x) -> tuple:
    m = np.asarray(m, dtype=object)
    x = vec(x)
    if m.shape[1] != len(x):
        raise LinAlgError("shape mismatch in mat_vec")
    return tuple(sum((m[i, j] * x[j] for j in range(len(x))), ZERO) for i in range(m.shape[0]))


@dataclass(frozen=True)
class SubspaceBasis:
    """A list of independent vectors spanning a subspace of Q^ambient_dim."""

    ambient_dim: int
    vectors: tuple

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def matrix(self) -> np.ndarray:
        m = np.empty((len(self.vectors), self.ambient_dim), dtype=object)
        for i, v in enumerate(self.vectors):
            for j in range(self.ambient_dim):
                m[i, j] = v[j]
        return m

    def verify(self) -> bool:
        if not self.vectors:
            return True
        if any(len(v) != self.ambient_dim for v in self.vectors):
            return False
        return rank(self.matrix()) == len(self.vectors)

    def contains(self, vector) -> bool:
        if not any(vector):
            return True
        if not self.vectors:
            return False
        stacked = np.vstack([self.matrix(), mat([vector])])
        return rank(stacked) == self.dim


def quotient_dim(z: SubspaceBasis, b: SubspaceBasis) -> int:
    """dim(z) - dim(b), after checking span(b) is inside span(z)."""
    if z.ambient_dim != b.ambient_dim:
        raise NotASubspaceError("ambient dimensions differ")
    dim_z = rank(z.matrix()) if z.vectors else 0
    dim_b = rank(b.matrix()) if b.vectors else 0
    if b.vectors:
        stacked = np.vstack([z.matrix(), b.matrix()]) if z.vectors else b.matrix()
        if rank(stacked) != dim_z:
            raise NotASubspaceError("not a subspace")
    return dim_z - dim_b


# ---------------------------------------------------------------------------
# sparse matrices: coboundary operators are assembled in this form


@dataclass
class SparseMatrix:
    rows: int
    cols: int
    entries: dict  # (row, col) -> Fraction

    def add(self, r: int, c: int, v) -> None:
        if not v:
            return
        key = (r, c)
        new = self.entries.get(key, ZERO) + v
        if new:
            self.entries[key] = new
        else:
            self.entries.pop(key, None)

    def to_dense(self) -> np.ndarray:
        m = zeros(self.rows, self.cols)
        for (r, c), v in self.entries.items():
            m[r, c] = v
        return m

    def is_zero(self) -> bool:
        return not self.entries


def sparse_matmul(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    if a.cols != b.rows:
        raise LinAlgError("shape mismatch in sparse_matmul")
    b_rows = {}
    for (r, c), v in b.entries.items():
        b_rows.setdefault(r, []).append((c, v))
    out = SparseMatrix(a.rows, b.cols, {})
    for (r, k), v in a.entries.items():
        for c, w in b_rows.get(k, ()):
            out.add(r, c, v * w)
    return out


def sparse_mat_vec(a: SparseMatrix, x) -> tuple:
    x = vec(x)
    if a.cols != len(x):
        raise LinAlgError("shape mismatch in sparse_mat_vec")
    out = [ZERO] * a.rows
    for (r, c), v in a.entries.items():
        if x[c]:
            out[r] += v * x[c]
    return tuple(out)
