"""The fundamental set wedge^(n-1)N and its induced binary bracket.

For an n-ary multiplicative Hom-Nambu-Lie algebra, the space of
(n-1)-wedges carries a binary bracket

    [x, y] = sum_i  a(y_1) ^ ... ^ (L(x).y_i) ^ ... ^ a(y_{n-1})

where L(x).z = [x_1, ..., x_{n-1}, z] and a is the twist; the result is
a Hom-Leibniz algebra (the bracket satisfies the twisted Leibniz
identity but is generally not skew).  Everything is stored on the
lexicographically ordered wedge basis; elements of the fundamental set
are sparse coordinate dicts over wedge indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .algebra import HomNambuAlgebra, bracket_eval_sparse
from .indices import sort_with_sign, sv_add, wedge_basis

ONE = Fraction(1)


def wedge_of_indices(windex, idx_tuple) -> dict:
    """Canonical sparse wedge coordinates of e_{i1} ^ ... ^ e_{i_{n-1}}."""
    canon, sign = sort_with_sign(idx_tuple)
    if sign == 0:
        return {}
    return {windex[canon]: Fraction(sign)}


def wedge_of_vectors(windex, vectors) -> dict:
    """Expand a decomposable wedge of sparse vectors into wedge coords."""
    out = {}
    items = [list(v.items()) for v in vectors]
    for combo in itertools.product(*items):
        coeff = ONE
        for _, c in combo:
            coeff *= c
        if not coeff:
            continue
        canon, sign = sort_with_sign(tuple(i for i, _ in combo))
        if sign:
            sv_add(out, windex[canon], sign * coeff)
    return out


@dataclass(eq=False)
class HomLeibnizAlgebra:
    """Binary bracket table plus twist on an explicit basis.

    ``basis`` lists the underlying index tuples (wedge or tensor);
    ``table[i][j]`` is the sparse value of [b_i, b_j]; ``twist_cols[i]``
    the sparse image of b_i under the induced twist.
    """

    dim: int
    basis: list
    index: dict
    table: list
    twist_cols: list
    source: HomNambuAlgebra | None = None

    def bracket_sparse(self, x: dict, y: dict) -> dict:
        out = {}
        for i, a in x.items():
            row = self.table[i]
            for j, b in y.items():
                for k, v in row[j].items():
                    sv_add(out, k, a * b * v)
        return out

    def twist_sparse(self, x: dict) -> dict:
        out = {}
        for i, a in x.items():
            for k, v in self.twist_cols[i].items():
                sv_add(out, k, a * v)
        return out

    def twist_matrix(self) -> np.ndarray:
        m = linalg.zeros(self.dim, self.dim)
        for i, col in enumerate(self.twist_cols):
            for r, v in col.items():
                m[r, i] = v
        return m


def l_action_sparse(alg: HomNambuAlgebra, wedge, x: dict, z: dict) -> dict:
    """L(x).z for x in wedge coordinates and z a sparse vector."""
    out = {}
    for widx, coeff in x.items():
        args = [{i: ONE} for i in wedge[widx]] + [z]
        for k, v in bracket_eval_sparse(alg, args).items():
            sv_add(out, k, coeff * v)
    return out


def l_action(alg: HomNambuAlgebra, x_vectors, z):
    """L(x).z on a decomposable wedge given as n-1 dense vectors."""
    sx = [{i: v for i, v in enumerate(linalg.vec(vv)) if v} for vv in x_vectors]
    sz = {i: v for i, v in enumerate(linalg.vec(z)) if v}
    out = bracket_eval_sparse(alg, sx + [sz])
    return tuple(out.get(i, Fraction(0)) for i in range(alg.dim))


def fundamental_bracket_sparse(alg: HomNambuAlgebra, wedge, windex, x: dict, y: dict) -> dict:
    """[x, y] on wedge coordinates, one L-insertion per slot of y."""
    n = alg.arity
    alpha_cols = [alg.twist_column_sparse(i) for i in range(alg.dim)]
    out = {}
    for wj, ycoeff in y.items():
        yt = wedge[wj]
        for i in range(n - 1):
            lz = l_action_sparse(alg, wedge, x, {yt[i]: ONE})
            if not lz:
                continue
            factors = [alpha_cols[yt[k]] for k in range(i)]
            factors.append(lz)
            factors += [alpha_cols[yt[k]] for k in range(i + 1, n - 1)]
            for k, v in wedge_of_vectors(windex, factors).items():
                sv_add(out, k, ycoeff * v)
    return out


def build_fundamental(alg: HomNambuAlgebra) -> HomLeibnizAlgebra:
    """Structure constants of the induced bracket on all wedge pairs,
    plus the componentwise twist."""
    n, d = alg.arity, alg.dim
    wedge = wedge_basis(d, n - 1)
    windex = {t: i for i, t in enumerate(wedge)}
    dim = len(wedge)
    alpha_cols = [alg.twist_column_sparse(i) for i in range(d)]
    table = []
    for i in range(dim):
        xi = {i: ONE}
        row = [
            fundamental_bracket_sparse(alg, wedge, windex, xi, {j: ONE})
            for j in range(dim)
        ]
        table.append(row)
    twist_cols = [
        wedge_of_vectors(windex, [alpha_cols[k] for k in wedge[i]]) for i in range(dim)
    ]
    return HomLeibnizAlgebra(
        dim=dim, basis=wedge, index=windex, table=table, twist_cols=twist_cols, source=alg
    )


def fundamental_of(alg: HomNambuAlgebra) -> HomLeibnizAlgebra:
    """Memoized fundamental algebra (algebras are immutable once built)."""
    cached = getattr(alg, "_fundamental", None)
    if cached is None:
        cached = build_fundamental(alg)
        alg._fundamental = cached
    return cached


def check_hom_leibniz(leib: HomLeibnizAlgebra):
    """Exhaustive twisted Leibniz identity
    [a(x), [y, z]] = [[x, y], a(z)] + [a(y), [x, z]] over basis triples.

    Returns violations ``(i, j, k, difference)``.
    """
    violations = []
    units = [{i: ONE} for i in range(leib.dim)]
    for i in range(leib.dim):
        ax = leib.twist_sparse(units[i])
        for j in range(leib.dim):
            ay = leib.twist_sparse(units[j])
            xy = leib.bracket_sparse(units[i], units[j])
            for k in range(leib.dim):
                az = leib.twist_sparse(units[k])
                lhs = leib.bracket_sparse(ax, leib.bracket_sparse(units[j], units[k]))
                rhs = leib.bracket_sparse(xy, az)
                for key, v in leib.bracket_sparse(ay, leib.bracket_sparse(units[i], units[k])).items():
                    sv_add(rhs, key, v)
                diff = dict(lhs)
                for key, v in rhs.items():
                    sv_add(diff, key, -v)
                if diff:
                    violations.append((i, j, k, diff))
    return violations


def check_l_compatibility(alg: HomNambuAlgebra):
    """Exhaustive check that L intertwines the induced bracket:
    L([x,y]).a(z) = L(a(x)).(L(y).z) - L(a(y)).(L(x).z)
    over wedge-basis pairs x, y and basis vectors z.

    Returns violations ``(i, j, z, difference)``.
    """
    n, d = alg.arity, alg.dim
    wedge = wedge_basis(d, n - 1)
    windex = {t: i for i, t in enumerate(wedge)}
    alpha_cols = [alg.twist_column_sparse(i) for i in range(d)]
    fund = build_fundamental(alg)
    units = [{i: ONE} for i in range(len(wedge))]
    violations = []
    for i in range(len(wedge)):
        ax = fund.twist_sparse(units[i])
        for j in range(len(wedge)):
            ay = fund.twist_sparse(units[j])
            xy = fund.bracket_sparse(units[i], units[j])
            for z in range(d):
                az = alpha_cols[z]
                lhs = l_action_sparse(alg, wedge, xy, az)
                rhs = l_action_sparse(
                    alg, wedge, ax, l_action_sparse(alg, wedge, units[j], {z: ONE})
                )
                for key, v in l_action_sparse(
                    alg, wedge, ay, l_action_sparse(alg, wedge, units[i], {z: ONE})
                ).items():
                    sv_add(rhs, key, -v)
                diff = dict(lhs)
                for key, v in rhs.items():
                    sv_add(diff, key, -v)
                if diff:
                    violations.append((i, j, z, diff))
    return violations
