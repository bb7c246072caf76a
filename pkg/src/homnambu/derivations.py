"""Derivation spaces at twist powers, inner derivations, representations.

A level-k derivation is a d x d matrix D that commutes with the twist
and satisfies the twisted Leibniz rule in which every untouched bracket
slot carries twist^k.  Level -1 is allowed with twist^(-1) = 0: the rule
then forces D to kill every bracket value (for n >= 2 each summand on
the right has at least one zero slot).

Matrices of derivations are flattened row-major (D[r, c] at r*d + c) so
spaces of derivations live in Q^(d^2) as ordinary subspaces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .algebra import AlgebraError, HomNambuAlgebra, ad_matrix, bracket_eval_sparse
from .indices import wedge_basis

ONE = Fraction(1)


class FixedPointError(AlgebraError):
    def __init__(self, component):
        self.component = component
        super().__init__(
            f"fixed-point precondition violated: twist does not fix argument {component}"
        )


class LevelUnderflowError(AlgebraError):
    def __init__(self, level):
        super().__init__(f"level underflow: {level} < -1")


@dataclass(eq=False)
class Derivation:
    matrix: np.ndarray
    level: int


def flatten_matrix(m) -> tuple:
    m = np.asarray(m, dtype=object)
    return tuple(m[r, c] for r in range(m.shape[0]) for c in range(m.shape[1]))


def unflatten_matrix(flat, d) -> np.ndarray:
    m = linalg.zeros(d, d)
    for r in range(d):
        for c in range(d):
            m[r, c] = Fraction(flat[r * d + c])
    return m


def _slot_matrices(alg: HomNambuAlgebra, key, k):
    """For one increasing tuple, the matrices of v -> bracket with v in
    slot i and twist^k applied to every other (basis) slot."""
    d, n = alg.dim, alg.arity
    out = []
    for i in range(n):
        cols = [alg.twist_column_sparse(key[j], k) for j in range(n)]
        m = linalg.zeros(d, d)
        for c in range(d):
            args = cols[:i] + [{c: ONE}] + cols[i + 1:]
            for r, v in bracket_eval_sparse(alg, args).items():
                m[r, c] = v
        out.append(m)
    return out


def derivation_violations(alg: HomNambuAlgebra, matrix, k: int):
    """Exhaustive check of twist commutation and the level-k Leibniz rule.

    Returns violations; ``("twist_commutation", diff)`` for the first
    condition, ``(key, diff)`` per failing bracket tuple for the second.
    """
    if k < -1:
        raise LevelUnderflowError(k)
    d = alg.dim
    matrix = np.asarray(matrix, dtype=object)
    violations = []
    comm = linalg.matmul(matrix, alg.twist) - linalg.matmul(alg.twist, matrix)
    if not linalg.is_zero_matrix(comm):
        violations.append(("twist_commutation", comm))
    for key in wedge_basis(d, alg.arity):
        lhs = linalg.mat_vec(matrix, alg.bracket_basis(key))
        rhs = [Fraction(0)] * d
        for i, slot in enumerate(_slot_matrices(alg, key, k)):
            img = linalg.mat_vec(slot, tuple(matrix[:, key[i]]))
            rhs = [a + b for a, b in zip(rhs, img)]
        diff = tuple(a - b for a, b in zip(lhs, rhs))
        if any(diff):
            violations.append((key, diff))
    return violations


def derivation_space(alg: HomNambuAlgebra, k: int) -> linalg.SubspaceBasis:
    """Canonical basis of all level-k derivations, as flattened matrices.

    Both defining conditions are linear in the d^2 entries of D; the
    space is the kernel of the stacked constraint matrix.
    """
    if k < -1:
        raise LevelUnderflowError(k)
    d, n = alg.dim, alg.arity
    rows = []
    # twist commutation: (D A - A D)[r, c] = 0
    a = alg.twist
    for r in range(d):
        for c in range(d):
            row = [Fraction(0)] * (d * d)
            for j in range(d):
                row[r * d + j] += a[j, c]
                row[j * d + c] -= a[r, j]
            if any(row):
                rows.append(row)
    # twisted Leibniz rule per increasing tuple, per output component
    for key in wedge_basis(d, n):
        value = alg.bracket_basis(key)
        slots = _slot_matrices(alg, key, k)
        for r in range(d):
            row = [Fraction(0)] * (d * d)
            for j in range(d):
                row[r * d + j] += value[j]
            for i in range(n):
                for j in range(d):
                    row[j * d + key[i]] -= slots[i][r, j]
            if any(row):
                rows.append(row)
    if not rows:
        return linalg.SubspaceBasis(d * d, tuple(map(tuple, linalg.eye(d * d))))
    return linalg.kernel_basis(linalg.mat(rows))


def inner_derivation(alg: HomNambuAlgebra, xs, k: int) -> Derivation:
    """y -> [x_1, ..., x_{n-1}, twist^k(y)], a level-(k+1) derivation.

    Every x_i must be fixed by the twist; the membership claim is
    re-verified before returning.
    """
    if k < 1:
        raise AlgebraError("inner derivations need k >= 1")
    xs = [linalg.vec(x) for x in xs]
    if len(xs) != alg.arity - 1:
        raise AlgebraError("inner derivation needs n-1 vectors")
    for pos, x in enumerate(xs):
        if alg.twist_apply(x) != x:
            raise FixedPointError(pos)
    m = linalg.matmul(ad_matrix(alg, xs), alg.twist_power(k))
    bad = derivation_violations(alg, m, k + 1)
    if bad:  # pragma: no cover - guaranteed by the fixed-point hypothesis
        raise AlgebraError(f"inner derivation failed verification: {bad[0]}")
    return Derivation(m, k + 1)


def derivation_commutator(alg: HomNambuAlgebra, d1: Derivation, d2: Derivation) -> Derivation:
    """Commutator of two derivations, verified at level k1 + k2."""
    level = d1.level + d2.level
    if level < -1:
        raise LevelUnderflowError(level)
    m = linalg.matmul(d1.matrix, d2.matrix) - linalg.matmul(d2.matrix, d1.matrix)
    bad = derivation_violations(alg, m, level)
    if bad:
        raise AlgebraError(f"commutator failed verification at level {level}: {bad[0]}")
    return Derivation(m, level)


# -- representations --------------------------------------------------------


@dataclass(eq=False)
class RepresentationMap:
    """Skew multilinear map from (n-1)-tuples of algebra elements to
    endomorphisms of a d'-dimensional module, plus the auxiliary map nu.

    ``rho`` stores matrices on increasing index tuples; other orders are
    sign-normalized on evaluation.  nu defaults to the algebra twist in
    the adjoint construction and is otherwise a free linear map.
    """

    arity: int
    dim: int
    rho: dict
    nu: np.ndarray

    def rho_basis(self, key) -> np.ndarray:
        from .indices import sort_with_sign

        canon, sign = sort_with_sign(key)
        m = self.rho.get(canon)
        if sign == 0 or m is None:
            return linalg.zeros(self.dim, self.dim)
        return m if sign == 1 else -m


def adjoint_representation(alg: HomNambuAlgebra) -> RepresentationMap:
    rho = {
        key: ad_matrix(alg, [alg.basis_vector(i) for i in key])
        for key in wedge_basis(alg.dim, alg.arity - 1)
    }
    return RepresentationMap(arity=alg.arity, dim=alg.dim, rho=rho, nu=alg.twist)


def _rho_eval(rep: RepresentationMap, sparse_args) -> np.ndarray:
    """Multilinear skew expansion of rho on sparse vectors."""
    out = linalg.zeros(rep.dim, rep.dim)
    for combo in itertools.product(*(a.items() for a in sparse_args)):
        coeff = ONE
        for _, c in combo:
            coeff *= c
        if not coeff:
            continue
        m = rep.rho_basis(tuple(i for i, _ in combo))
        out = out + coeff * m
    return out


def check_representation(alg: HomNambuAlgebra, rep: RepresentationMap):
    """Exhaustive check of the representation identity on increasing
    basis tuples x, y; returns violations ``(x, y, difference_matrix)``.

    The right-hand sum inserts ad(x)(y_i) into y's slots:

        rho(a(x)) rho(y) - rho(a(y)) rho(x)
            = sum_i rho(a(y_1), ..., ad(x)(y_i), ..., a(y_{n-1})) o nu

    (with the roles the other way around, the adjoint action of a valid
    algebra fails by an overall sign; at n = 2 this form reduces to the
    usual Hom-Lie condition rho(a(x)) rho(y) - rho(a(y)) rho(x) =
    rho([x, y]) o nu).
    """
    n, d = alg.arity, alg.dim
    alpha_cols = [alg.twist_column_sparse(i) for i in range(d)]
    violations = []
    for x in wedge_basis(d, n - 1):
        for y in wedge_basis(d, n - 1):
            rho_ax = _rho_eval(rep, [alpha_cols[i] for i in x])
            rho_ay = _rho_eval(rep, [alpha_cols[i] for i in y])
            rho_x = rep.rho_basis(x)
            rho_y = rep.rho_basis(y)
            lhs = linalg.matmul(rho_ax, rho_y) - linalg.matmul(rho_ay, rho_x)
            rhs = linalg.zeros(rep.dim, rep.dim)
            for i in range(n - 1):
                ad_x_yi = bracket_eval_sparse(alg, [{j: ONE} for j in x] + [{y[i]: ONE}])
                args = [alpha_cols[y[j]] for j in range(i)]
                args.append(ad_x_yi)
                args += [alpha_cols[y[j]] for j in range(i + 1, n - 1)]
                rhs = rhs + _rho_eval(rep, args)
            rhs = linalg.matmul(rhs, rep.nu)
            diff = lhs - rhs
            if not linalg.is_zero_matrix(diff):
                violations.append((x, y, diff))
    return violations


class SingularMapError(AlgebraError):
    pass


def check_rep_equivalence(rep: RepresentationMap, rep2: RepresentationMap, f) -> bool:
    """True iff f intertwines the two actions: f rho(x) = rho'(x) f on
    every increasing basis tuple.  f must be invertible."""
    f = np.asarray(f, dtype=object)
    if rep.dim != rep2.dim or rep.arity != rep2.arity:
        raise AlgebraError("representations are not comparable")
    if linalg.rank(f) != rep.dim:
        raise SingularMapError("singular f")
    for key in sorted(set(rep.rho) | set(rep2.rho)):
        lhs = linalg.matmul(f, rep.rho_basis(key))
        rhs = linalg.matmul(rep2.rho_basis(key), f)
        if not linalg.is_zero_matrix(lhs - rhs):
            return False
    return True
