"""n-ary multiplicative Hom-Nambu-Lie algebras as exact structure constants.

An algebra is a dimension ``d``, an arity ``n``, a skew-symmetric
n-linear bracket stored on strictly increasing basis tuples, and a d x d
twist matrix.  Skew-symmetry is structural: only increasing tuples are
stored, every other argument order is obtained by sign bookkeeping, and
a repeated argument gives zero.

Exhaustive validators run over basis tuples only.  That suffices: both
sides of the defining identities are multilinear in every slot and skew
within each bracket slot group, so their difference vanishes on all
arguments as soon as it vanishes on increasing basis tuples.  Values are
immutable after construction; validators are pure apart from setting the
``*_checked`` flags on success.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from . import linalg
from .indices import sort_with_sign, sv_add, wedge_basis

ZERO = Fraction(0)
ONE = Fraction(1)


class AlgebraError(ValueError):
    pass


class InconsistentBracketError(AlgebraError):
    """Duplicate bracket entries that disagree after normalization."""


class NotAnEndomorphismError(AlgebraError):
    def __init__(self, tuple_1based):
        self.failing_tuple = tuple_1based
        super().__init__(f"not an endomorphism: fails on basis tuple {tuple_1based}")


class HomNambuAlgebra:
    """Bracket structure constants plus twist; see the module docstring."""

    def __init__(self, dim, arity, coeffs=None, twist=None):
        if dim < 1 or arity < 2:
            raise AlgebraError("need dim >= 1 and arity >= 2")
        self.dim = int(dim)
        self.arity = int(arity)
        if twist is None:
            twist = linalg.eye(dim)
        twist = np.asarray(twist, dtype=object)
        if twist.shape != (dim, dim):
            raise AlgebraError(f"twist must be {dim}x{dim}")
        self.twist = linalg.mat(twist)
        self.coeffs = {}
        for key, value in (coeffs or {}).items():
            self._insert(key, value)
        self.skew_checked = False
        self.hom_nambu_checked = False
        self.multiplicative_checked = False
        self._twist_powers = {0: linalg.eye(dim), 1: self.twist}

    def _insert(self, key, value):
        n, d = self.arity, self.dim
        key = tuple(int(i) for i in key)
        if len(key) != n:
            raise AlgebraError(f"bracket tuple {key} has arity {len(key)}, expected {n}")
        if any(i < 0 or i >= d for i in key):
            raise AlgebraError(f"bracket tuple {key} out of range for dim {d}")
        value = linalg.vec(value)
        if len(value) != d:
            raise AlgebraError(f"bracket value for {key} has length {len(value)}, expected {d}")
        canon, sign = sort_with_sign(key)
        if sign == 0:
            if any(value):
                raise InconsistentBracketError(f"repeated index in {key} with nonzero value")
            return
        value = tuple(sign * v for v in value)
        if canon in self.coeffs:
            if self.coeffs[canon] != value:
                raise InconsistentBracketError(f"conflicting entries for tuple {canon}")
            return
        if any(value):
            self.coeffs[canon] = value

    def __repr__(self):
        return (
            f"HomNambuAlgebra(dim={self.dim}, arity={self.arity}, "
            f"brackets={len(self.coeffs)})"
        )

    # -- basic evaluation ---------------------------------------------------

    def zero_vector(self) -> tuple:
        return (ZERO,) * self.dim

    def basis_vector(self, i: int) -> tuple:
        return tuple(ONE if j == i else ZERO for j in range(self.dim))

    def bracket_basis(self, key) -> tuple:
        """Bracket of basis vectors in any order, via sign normalization."""
        canon, sign = sort_with_sign(key)
        if sign == 0:
            return self.zero_vector()
        value = self.coeffs.get(canon)
        if value is None:
            return self.zero_vector()
        return value if sign == 1 else tuple(-v for v in value)

    def bracket_basis_sparse(self, key) -> dict:
        canon, sign = sort_with_sign(key)
        if sign == 0:
            return {}
        value = self.coeffs.get(canon)
        if value is None:
            return {}
        return {i: sign * v for i, v in enumerate(value) if v}

    def twist_power(self, k: int) -> np.ndarray:
        """alpha^k with the conventions alpha^0 = id and alpha^(-1) = 0."""
        if k < -1:
            raise AlgebraError("twist power below -1")
        if k == -1:
            return linalg.zeros(self.dim, self.dim)
        if k not in self._twist_powers:
            self._twist_powers[k] = linalg.matmul(self.twist, self.twist_power(k - 1))
        return self._twist_powers[k]

    def twist_column_sparse(self, i: int, k: int = 1) -> dict:
        m = self.twist_power(k)
        return {r: m[r, i] for r in range(self.dim) if m[r, i]}

    def twist_apply(self, v, k: int = 1) -> tuple:
        return linalg.mat_vec(self.twist_power(k), v)


def zero_algebra(dim: int, arity: int, twist=None) -> HomNambuAlgebra:
    return HomNambuAlgebra(dim, arity, {}, twist)


def bracket_eval_sparse(alg: HomNambuAlgebra, args) -> dict:
    """Multilinear skew expansion of the bracket on sparse vectors."""
    if len(args) != alg.arity:
        raise AlgebraError(f"bracket needs {alg.arity} arguments, got {len(args)}")
    out = {}
    for combo in itertools.product(*(a.items() for a in args)):
        coeff = ONE
        for _, c in combo:
            coeff *= c
        if not coeff:
            continue
        for idx, v in alg.bracket_basis_sparse(tuple(i for i, _ in combo)).items():
            sv_add(out, idx, coeff * v)
    return out


def bracket_eval(alg: HomNambuAlgebra, args) -> tuple:
    """Bracket of n dense vectors of length d."""
    sparse_args = []
    for a in args:
        a = linalg.vec(a)
        if len(a) != alg.dim:
            raise AlgebraError("argument length mismatch")
        sparse_args.append({i: v for i, v in enumerate(a) if v})
    out = bracket_eval_sparse(alg, sparse_args)
    return tuple(out.get(i, ZERO) for i in range(alg.dim))


def ad_matrix(alg: HomNambuAlgebra, xs) -> np.ndarray:
    """Matrix of y -> [x_1, ..., x_{n-1}, y] for fixed vectors xs."""
    if len(xs) != alg.arity - 1:
        raise AlgebraError("ad needs n-1 vectors")
    sparse_xs = [{i: v for i, v in enumerate(linalg.vec(x)) if v} for x in xs]
    m = linalg.zeros(alg.dim, alg.dim)
    for j in range(alg.dim):
        col = bracket_eval_sparse(alg, sparse_xs + [{j: ONE}])
        for i, v in col.items():
            m[i, j] = v
    return m


# -- validators -------------------------------------------------------------


def check_skew_symmetry(alg: HomNambuAlgebra):
    """Evaluate the bracket on every permutation of every increasing basis
    tuple and compare with the signed stored value.

    Returns a list of violations ``(permuted_tuple, difference)``.
    """
    violations = []
    for key in wedge_basis(alg.dim, alg.arity):
        stored = alg.bracket_basis(key)
        for perm in itertools.permutations(key):
            _, sign = sort_with_sign(perm)
            expected = tuple(sign * v for v in stored)
            got = bracket_eval(alg, [alg.basis_vector(i) for i in perm])
            if got != expected:
                violations.append((perm, tuple(g - e for g, e in zip(got, expected))))
    if not violations:
        alg.skew_checked = True
    return violations


def check_hom_nambu_identity(alg: HomNambuAlgebra):
    """Exhaustive check of the twisted fundamental identity.

    x runs over increasing (n-1)-tuples and y over increasing n-tuples of
    basis indices; this is sufficient by multilinearity and skewness of
    both sides.  Returns violations ``(x, y, lhs_minus_rhs)``.
    """
    n, d = alg.arity, alg.dim
    violations = []
    alpha_cols = [alg.twist_column_sparse(i) for i in range(d)]
    for x in wedge_basis(d, n - 1):
        for y in wedge_basis(d, n):
            lhs = bracket_eval_sparse(
                alg, [alpha_cols[i] for i in x] + [alg.bracket_basis_sparse(y)]
            )
            rhs = {}
            for i in range(n):
                inner = alg.bracket_basis_sparse(x + (y[i],))
                if not inner:
                    continue
                args = [alpha_cols[y[j]] for j in range(i)]
                args.append(inner)
                args += [alpha_cols[y[j]] for j in range(i + 1, n)]
                term = bracket_eval_sparse(alg, args)
                for idx, v in term.items():
                    sv_add(rhs, idx, v)
            diff = dict(lhs)
            for idx, v in rhs.items():
                sv_add(diff, idx, -v)
            if diff:
                violations.append((x, y, diff))
    if not violations:
        alg.hom_nambu_checked = True
    return violations


def check_multiplicativity(alg: HomNambuAlgebra):
    """Check twist(bracket) = bracket(twist, ..., twist) on basis tuples."""
    d = alg.dim
    violations = []
    alpha_cols = [alg.twist_column_sparse(i) for i in range(d)]
    for key in wedge_basis(d, alg.arity):
        lhs = {}
        for idx, v in alg.bracket_basis_sparse(key).items():
            for r, w in alpha_cols[idx].items():
                sv_add(lhs, r, v * w)
        rhs = bracket_eval_sparse(alg, [alpha_cols[i] for i in key])
        diff = dict(lhs)
        for idx, v in rhs.items():
            sv_add(diff, idx, -v)
        if diff:
            violations.append((key, diff))
    if not violations:
        alg.multiplicative_checked = True
    return violations


def validate(alg: HomNambuAlgebra) -> dict:
    """Run all three validators; returns the violation lists by name."""
    return {
        "skew": check_skew_symmetry(alg),
        "hom_nambu": check_hom_nambu_identity(alg),
        "multiplicative": check_multiplicativity(alg),
    }


def is_valid(alg: HomNambuAlgebra) -> bool:
    return not any(validate(alg).values())


# -- constructions ----------------------------------------------------------


def endomorphism_failure(alg: HomNambuAlgebra, rho):
    """First increasing basis tuple where rho fails to be a bracket
    endomorphism, or None."""
    rho = np.asarray(rho, dtype=object)
    rho_cols = [{r: rho[r, i] for r in range(alg.dim) if rho[r, i]} for i in range(alg.dim)]
    for key in wedge_basis(alg.dim, alg.arity):
        lhs = {}
        for idx, v in alg.bracket_basis_sparse(key).items():
            for r, w in rho_cols[idx].items():
                sv_add(lhs, r, v * w)
        rhs = bracket_eval_sparse(alg, [rho_cols[i] for i in key])
        diff = dict(lhs)
        for idx, v in rhs.items():
            sv_add(diff, idx, -v)
        if diff:
            return key
    return None


def yau_twist(nambu: HomNambuAlgebra, rho) -> HomNambuAlgebra:
    """Twist a classical Nambu-Lie algebra along an endomorphism rho.

    The input must carry the identity twist and satisfy the untwisted
    fundamental identity; the output has bracket rho([...]) and twist
    rho, and is revalidated before being returned.
    """
    if not linalg.is_zero_matrix(nambu.twist - linalg.eye(nambu.dim)):
        raise AlgebraError("yau_twist input must have identity twist")
    if check_hom_nambu_identity(nambu):
        raise AlgebraError("yau_twist input fails the fundamental identity")
    rho = linalg.mat(np.asarray(rho, dtype=object))
    failing = endomorphism_failure(nambu, rho)
    if failing is not None:
        raise NotAnEndomorphismError(tuple(i + 1 for i in failing))
    coeffs = {
        key: linalg.mat_vec(rho, value)
        for key, value in nambu.coeffs.items()
    }
    twisted = HomNambuAlgebra(nambu.dim, nambu.arity, coeffs, rho)
    bad = validate(twisted)
    if any(bad.values()):
        raise AlgebraError(f"twisted algebra failed validation: {bad}")
    return twisted


def filippov_algebra(arity: int, signs) -> HomNambuAlgebra:
    """The (n+1)-dimensional Nambu-Lie algebra where dropping basis vector
    e_i from (e_1, ..., e_{n+1}) gives (-1)^(i+1) * signs[i-1] * e_i.

    ``signs`` is a length n+1 sequence of +-1; the twist is the identity.
    """
    n = int(arity)
    signs = [int(s) for s in signs]
    if len(signs) != n + 1 or any(s not in (1, -1) for s in signs):
        raise AlgebraError("signs must be n+1 values of +-1")
    d = n + 1
    coeffs = {}
    for i in range(d):
        key = tuple(j for j in range(d) if j != i)
        value = [ZERO] * d
        value[i] = Fraction((-1) ** i * signs[i])
        coeffs[key] = tuple(value)
    alg = HomNambuAlgebra(d, n, coeffs)
    bad = validate(alg)
    if any(bad.values()):  # pragma: no cover - construction is always valid
        raise AlgebraError(f"construction failed validation: {bad}")
    return alg


def signed_permutation_automorphisms(alg: HomNambuAlgebra):
    """Brute-force search over signed permutation matrices for bracket
    endomorphisms (all invertible, hence automorphisms).

    2^d * d! candidates; meant for desk-scale test fixtures, d <= 5.
    """
    d = alg.dim
    found = []
    for perm in itertools.permutations(range(d)):
        for signs in itertools.product((1, -1), repeat=d):
            rho = linalg.zeros(d, d)
            for i in range(d):
                rho[perm[i], i] = Fraction(signs[i])
            if endomorphism_failure(alg, rho) is None:
                found.append(rho)
    return found
