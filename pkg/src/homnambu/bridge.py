"""Hom-Leibniz cohomology on the tensor fundamental algebra and the lift
of algebra-valued cochains into it.

The tensor fundamental algebra lives on (n-1)-fold tensor blocks (no
skewness) with the same induced binary bracket as the wedge version;
its cochain complex is the twisted Loday-Pirashvili one::

    (d phi)(a_1, ..., a_{p+1})
        = sum_{k<=p} (-1)^(k-1) [a^(p-1)(a_k), phi(..., ^a_k, ...)]
        + (-1)^(p+1) [phi(a_1, ..., a_p), a^(p-1)(a_{p+1})]
        + sum_{k<j}  (-1)^k  phi(a(a_1), ..., ^a_k, ..., [a_k,a_j], ..., a(a_{p+1}))

with (d phi)(a) = -[phi, a] in degree 0.  The lift takes a cochain with
p tensor-block arguments plus one algebra argument and feeds each factor
of one extra block through it::

    (lift phi)(a_1, ..., a_{p+1})
        = sum_i a^p(x^1) x ... x phi(a_1, ..., a_p, x^i) x ... x a^p(x^(n-1))

where a_{p+1} = x^1 x ... x x^(n-1); in degree 0 the untouched factors
carry no twist.  The untouched-slot power is the input degree p: with
p-1 instead, the square below already fails at degree 0 for a twist of
-id, while p makes it commute on every fixture.  The lift intertwines
the two coboundaries on twist-equivariant cochains (equivariance is
part of the cochain definition the four-term operator comes from, and
dropping it breaks the square for non-trivial twists), which transports
d o d = 0 into the four-term complex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import HomNambuAlgebra, bracket_eval_sparse
from .fundamental import HomLeibnizAlgebra, fundamental_of, l_action_sparse
from .indices import sort_with_sign, sv_add, tensor_basis

ONE = Fraction(1)
ZERO = Fraction(0)


def tensor_of_vectors(tindex, vectors) -> dict:
    """Expand a decomposable tensor of sparse vectors into coordinates."""
    out = {}
    for combo in itertools.product(*(v.items() for v in vectors)):
        coeff = ONE
        for _, c in combo:
            coeff *= c
        if coeff:
            sv_add(out, tindex[tuple(i for i, _ in combo)], coeff)
    return out


def build_tensor_fundamental(alg: HomNambuAlgebra) -> HomLeibnizAlgebra:
    """The induced binary bracket on (n-1)-fold tensor blocks."""
    n, d = alg.arity, alg.dim
    basis = tensor_basis(d, n - 1)
    tindex = {t: i for i, t in enumerate(basis)}
    alpha_cols = [alg.twist_column_sparse(i) for i in range(d)]
    table = []
    for i, _ in enumerate(basis):
        xi = {i: ONE}
        row = []
        for j, yt in enumerate(basis):
            out = {}
            for s in range(n - 1):
                lz = l_action_sparse(alg, basis, xi, {yt[s]: ONE})
                if not lz:
                    continue
                factors = [alpha_cols[yt[t]] for t in range(s)]
                factors.append(lz)
                factors += [alpha_cols[yt[t]] for t in range(s + 1, n - 1)]
                for k, v in tensor_of_vectors(tindex, factors).items():
                    sv_add(out, k, v)
            row.append(out)
        table.append(row)
    twist_cols = [
        tensor_of_vectors(tindex, [alpha_cols[k] for k in t]) for t in basis
    ]
    return HomLeibnizAlgebra(
        dim=len(basis), basis=basis, index=tindex, table=table, twist_cols=twist_cols, source=alg
    )


def tensor_fundamental_of(alg: HomNambuAlgebra) -> HomLeibnizAlgebra:
    cached = getattr(alg, "_tensor_fundamental", None)
    if cached is None:
        cached = build_tensor_fundamental(alg)
        alg._tensor_fundamental = cached
    return cached


def wedge_projection(alg: HomNambuAlgebra, leib_t: HomLeibnizAlgebra):
    """Sparse columns of the antisymmetrization onto the wedge basis."""
    fund = fundamental_of(alg)
    cols = []
    for t in leib_t.basis:
        canon, sign = sort_with_sign(t)
        cols.append({fund.index[canon]: Fraction(sign)} if sign else {})
    return cols


# -- Leibniz cochains ---------------------------------------------------------


@dataclass
class LeibnizCochain:
    """Plain multilinear map on p-tuples of Leibniz-algebra elements with
    values in the algebra; no symmetry is imposed.  Degree 0 is a single
    element, stored as its sparse coordinate dict."""

    leib: HomLeibnizAlgebra
    degree: int
    coeffs: dict  # degree 0: sparse vector; else {tuple: sparse vector}

    @classmethod
    def zero(cls, leib, degree):
        return cls(leib, degree, {})

    def value(self, key) -> dict:
        if self.degree == 0:
            raise ValueError("degree-0 cochains are elements, not maps")
        return self.coeffs.get(tuple(key), {})

    def evaluate(self, args) -> dict:
        """Multilinear evaluation at sparse arguments."""
        if len(args) != self.degree:
            raise ValueError("argument count mismatch")
        out = {}
        for combo in itertools.product(*(a.items() for a in args)):
            w = ONE
            for _, c in combo:
                w *= c
            if not w:
                continue
            for k, v in self.coeffs.get(tuple(i for i, _ in combo), {}).items():
                sv_add(out, k, w * v)
        return out

    def is_zero(self) -> bool:
        if self.degree == 0:
            return not self.coeffs
        return all(not v for v in self.coeffs.values())


def _leib_alpha_power(leib: HomLeibnizAlgebra, k: int):
    cols = [{i: ONE} for i in range(leib.dim)]
    for _ in range(k):
        cols = [leib.twist_sparse(c) for c in cols]
    return cols


def leibniz_coboundary(leib: HomLeibnizAlgebra, phi: LeibnizCochain) -> LeibnizCochain:
    """The twisted Loday-Pirashvili coboundary; degree 0 sends an
    element c to a -> -[c, a]."""
    p = phi.degree
    if p == 0:
        out = {}
        for a in range(leib.dim):
            v = leib.bracket_sparse(phi.coeffs, {a: ONE})
            if v:
                out[(a,)] = {k: -x for k, x in v.items()}
        return LeibnizCochain(leib, 1, out)
    alpha_prev = _leib_alpha_power(leib, p - 1)
    alpha_cols = [leib.twist_sparse({i: ONE}) for i in range(leib.dim)]
    out = {}
    for args in itertools.product(range(leib.dim), repeat=p + 1):
        total = {}
        for k in range(p):  # [a^(p-1)(a_k), phi(..., ^a_k, ...)]
            sign = 1 if k % 2 == 0 else -1  # (-1)^(k-1), 1-based
            rest = [{args[t]: ONE} for t in range(p + 1) if t != k]
            val = phi.evaluate(rest)
            if val:
                for kk, v in leib.bracket_sparse(alpha_prev[args[k]], val).items():
                    sv_add(total, kk, sign * v)
        sign = 1 if (p + 1) % 2 == 0 else -1  # (-1)^(p+1)
        val = phi.evaluate([{args[t]: ONE} for t in range(p)])
        if val:
            for kk, v in leib.bracket_sparse(val, alpha_prev[args[p]]).items():
                sv_add(total, kk, sign * v)
        for k in range(p + 1):
            sk = -1 if k % 2 == 0 else 1  # (-1)^k, 1-based
            for j in range(k + 1, p + 1):
                bracket = leib.table[args[k]][args[j]]
                if not bracket:
                    continue
                new_args = [alpha_cols[args[t]] for t in range(p + 1) if t != k]
                new_args[j - 1] = bracket
                for kk, v in phi.evaluate(new_args).items():
                    sv_add(total, kk, sk * v)
        if total:
            out[args] = total
    return LeibnizCochain(leib, p + 1, out)


def leibniz_coboundary_matrix(leib: HomLeibnizAlgebra, p: int) -> linalg.SparseMatrix:
    """Operator matrix over lex-ordered tuple coordinates.

    Assembles one basis cochain per column; meant for small algebras
    (the column count is dim^(p+1)).
    """
    dim = leib.dim
    tuples_in = list(itertools.product(range(dim), repeat=p))
    index_in = {t: i for i, t in enumerate(tuples_in)}
    index_out = {
        t: i for i, t in enumerate(itertools.product(range(dim), repeat=p + 1))
    }
    m = linalg.SparseMatrix(len(index_out) * dim, len(tuples_in) * dim, {})
    for t_in, col_base in index_in.items():
        for comp in range(dim):
            phi = LeibnizCochain(leib, p, {t_in: {comp: ONE}})
            image = leibniz_coboundary(leib, phi)
            for t_out, val in image.coeffs.items():
                row_base = index_out[t_out]
                for r, v in val.items():
                    m.add(row_base * dim + r, col_base * dim + comp, v)
    return m


# -- cochains with tensor blocks plus one algebra slot ------------------------


@dataclass(eq=False)
class BridgeCochain:
    """Map on p tensor blocks plus one algebra argument, algebra-valued.
    Degree 0 is a linear endomorphism stored as a d x d matrix."""

    alg: HomNambuAlgebra
    leib: HomLeibnizAlgebra
    degree: int
    coeffs: dict  # degree 0: matrix; else {(blocks..., z): sparse vector}

    @classmethod
    def zero(cls, alg, leib, degree):
        if degree == 0:
            return cls(alg, leib, 0, linalg.zeros(alg.dim, alg.dim))
        return cls(alg, leib, degree, {})

    def evaluate(self, blocks, z) -> dict:
        if self.degree == 0:
            raise ValueError("degree-0 cochains evaluate on one vector")
        if len(blocks) != self.degree:
            raise ValueError("block count mismatch")
        out = {}
        for combo in itertools.product(*(b.items() for b in blocks)):
            w = ONE
            for _, c in combo:
                w *= c
            if not w:
                continue
            ids = tuple(i for i, _ in combo)
            for zi, zc in z.items():
                for k, v in self.coeffs.get(ids + (zi,), {}).items():
                    sv_add(out, k, w * zc * v)
        return out

    def matrix_column(self, j: int) -> dict:
        return {r: self.coeffs[r, j] for r in range(self.alg.dim) if self.coeffs[r, j]}


def bridge_coboundary(phi: BridgeCochain) -> BridgeCochain:
    """The four-term coboundary on tensor-block cochains (p >= 0).

    Degree 0 is the derivation defect
    sum_i [x_1, ..., phi(x_i), ..., x_n] - phi([x_1, ..., x_n]).
    """
    alg, leib = phi.alg, phi.leib
    d, n = alg.dim, alg.arity
    p = phi.degree
    alpha_cols = [alg.twist_column_sparse(i) for i in range(d)]
    if p == 0:
        out = {}
        for t_id, t in enumerate(leib.basis):
            for z in range(d):
                args = t + (z,)
                total = {}
                for i in range(n):
                    slotted = [{c: ONE} for c in args]
                    slotted[i] = phi.matrix_column(args[i])
                    for r, v in bracket_eval_sparse(alg, slotted).items():
                        sv_add(total, r, v)
                for c, v in alg.bracket_basis_sparse(args).items():
                    col = phi.matrix_column(c)
                    for r, w in col.items():
                        sv_add(total, r, -v * w)
                if total:
                    out[(t_id, z)] = total
        return BridgeCochain(alg, leib, 1, out)
    alpha_p_cols = [alg.twist_column_sparse(i, p) for i in range(d)]
    alpha_t = [leib.twist_sparse({i: ONE}) for i in range(leib.dim)]
    alpha_t_p = _leib_alpha_power(leib, p)
    out = {}
    for args in itertools.product(range(leib.dim), repeat=p + 1):
        for z in range(d):
            total = {}
            for i in range(p + 1):
                sign = -1 if i % 2 == 0 else 1  # (-1)^i, 1-based
                for j in range(i + 1, p + 1):
                    bracket = leib.table[args[i]][args[j]]
                    if bracket:
                        blocks = [alpha_t[args[t]] for t in range(p + 1) if t != i]
                        blocks[j - 1] = bracket
                        for r, v in phi.evaluate(blocks, alpha_cols[z]).items():
                            sv_add(total, r, sign * v)
                lz = l_action_sparse(alg, leib.basis, {args[i]: ONE}, {z: ONE})
                if lz:
                    blocks = [alpha_t[args[t]] for t in range(p + 1) if t != i]
                    for r, v in phi.evaluate(blocks, lz).items():
                        sv_add(total, r, sign * v)
                blocks = [{args[t]: ONE} for t in range(p + 1) if t != i]
                val = phi.evaluate(blocks, {z: ONE})
                if val:
                    for r, v in l_action_sparse(alg, leib.basis, alpha_t_p[args[i]], val).items():
                        sv_add(total, r, -sign * v)
            sign4 = 1 if p % 2 == 0 else -1  # (-1)^p
            last = leib.basis[args[p]]
            prefix = [{args[t]: ONE} for t in range(p)]
            for s in range(n - 1):
                val = phi.evaluate(prefix, {last[s]: ONE})
                if not val:
                    continue
                fixed = [alpha_p_cols[last[t]] for t in range(n - 1)]
                bargs = fixed[:s] + [val] + fixed[s + 1:] + [alg.twist_column_sparse(z, p)]
                for r, v in bracket_eval_sparse(alg, bargs).items():
                    sv_add(total, r, sign4 * v)
            if total:
                out[args + (z,)] = total
    return BridgeCochain(alg, leib, p + 1, out)


# -- the lift -----------------------------------------------------------------


def delta_lift(phi: BridgeCochain) -> LeibnizCochain:
    """Lift a p-block cochain to a (p+1)-argument Leibniz cochain by
    feeding each factor of the last block through it."""
    alg, leib = phi.alg, phi.leib
    d, n = alg.dim, alg.arity
    p = phi.degree
    tindex = leib.index
    out = {}
    if p == 0:
        for a, t in enumerate(leib.basis):
            total = {}
            for i in range(n - 1):
                col = phi.matrix_column(t[i])
                if not col:
                    continue
                factors = [{t[k]: ONE} for k in range(n - 1)]
                factors[i] = col
                for k, v in tensor_of_vectors(tindex, factors).items():
                    sv_add(total, k, v)
            if total:
                out[(a,)] = total
        return LeibnizCochain(leib, 1, out)
    alpha_deg_cols = [alg.twist_column_sparse(i, p) for i in range(d)]
    for args in itertools.product(range(leib.dim), repeat=p + 1):
        last = leib.basis[args[p]]
        blocks = [{args[t]: ONE} for t in range(p)]
        total = {}
        for i in range(n - 1):
            val = phi.evaluate(blocks, {last[i]: ONE})
            if not val:
                continue
            factors = [alpha_deg_cols[last[k]] for k in range(n - 1)]
            factors[i] = val
            for k, v in tensor_of_vectors(tindex, factors).items():
                sv_add(total, k, v)
        if total:
            out[args] = total
    return LeibnizCochain(leib, p + 1, out)


def delta_lift_ternary(phi: BridgeCochain) -> LeibnizCochain:
    """The two-term ternary form of the lift; must agree with
    :func:`delta_lift` at arity 3 (dual code path)."""
    alg, leib = phi.alg, phi.leib
    if alg.arity != 3:
        raise ValueError("ternary lift needs arity 3")
    p = phi.degree
    tindex = leib.index
    out = {}
    if p == 0:
        for a, (x1, x2) in enumerate(leib.basis):
            total = {}
            for k, v in tensor_of_vectors(tindex, [{x1: ONE}, phi.matrix_column(x2)]).items():
                sv_add(total, k, v)
            for k, v in tensor_of_vectors(tindex, [phi.matrix_column(x1), {x2: ONE}]).items():
                sv_add(total, k, v)
            if total:
                out[(a,)] = total
        return LeibnizCochain(leib, 1, out)
    alpha_deg_cols = [alg.twist_column_sparse(i, p) for i in range(alg.dim)]
    for args in itertools.product(range(leib.dim), repeat=p + 1):
        x1, x2 = leib.basis[args[p]]
        blocks = [{args[t]: ONE} for t in range(p)]
        total = {}
        for k, v in tensor_of_vectors(
            tindex, [alpha_deg_cols[x1], phi.evaluate(blocks, {x2: ONE})]
        ).items():
            sv_add(total, k, v)
        for k, v in tensor_of_vectors(
            tindex, [phi.evaluate(blocks, {x1: ONE}), alpha_deg_cols[x2]]
        ).items():
            sv_add(total, k, v)
        if total:
            out[args] = total
    return LeibnizCochain(leib, p + 1, out)


def check_commuting_square(phi: BridgeCochain):
    """Evaluate d(lift phi) - lift(delta phi) on all basis tuples.

    Returns ``(holds, residuals)`` with residuals as a tuple -> vector
    table (empty iff the square commutes).
    """
    leib = phi.leib
    lhs = leibniz_coboundary(leib, delta_lift(phi))
    rhs = delta_lift(bridge_coboundary(phi))
    residuals = {}
    for key in set(lhs.coeffs) | set(rhs.coeffs):
        diff = dict(lhs.coeffs.get(key, {}))
        for k, v in rhs.coeffs.get(key, {}).items():
            sv_add(diff, k, -v)
        if diff:
            residuals[key] = diff
    return (not residuals), residuals


def pullback_wedge_cochain(alg: HomNambuAlgebra, leib_t: HomLeibnizAlgebra, psi) -> BridgeCochain:
    """Inject a wedge-space cochain (from the equivariant complex) along
    the antisymmetrization of each tensor block."""
    proj = wedge_projection(alg, leib_t)
    p = psi.space.degree
    out = {}
    for args in itertools.product(range(leib_t.dim), repeat=p):
        blocks = [proj[a] for a in args]
        if any(not b for b in blocks):
            continue
        for z in range(alg.dim):
            val = psi.evaluate(blocks, {z: ONE})
            sval = {i: v for i, v in enumerate(val) if v}
            if sval:
                out[args + (z,)] = sval
    return BridgeCochain(alg, leib_t, p, out)


def bridge_equivariance_violations(phi: BridgeCochain):
    """Argument tuples where twist . phi != phi o twist (empty iff
    phi is equivariant)."""
    alg, leib = phi.alg, phi.leib
    d = alg.dim
    alpha_cols = [alg.twist_column_sparse(i) for i in range(d)]
    alpha_t = [leib.twist_sparse({i: ONE}) for i in range(leib.dim)]
    bad = []
    if phi.degree == 0:
        comm = linalg.matmul(phi.coeffs, alg.twist) - linalg.matmul(alg.twist, phi.coeffs)
        if not linalg.is_zero_matrix(comm):
            bad.append(())
        return bad
    for args in itertools.product(range(leib.dim), repeat=phi.degree):
        for z in range(d):
            lhs = {}
            for c, v in phi.coeffs.get(args + (z,), {}).items():
                for r, w in alpha_cols[c].items():
                    sv_add(lhs, r, v * w)
            rhs = phi.evaluate([alpha_t[a] for a in args], alpha_cols[z])
            diff = dict(lhs)
            for k, v in rhs.items():
                sv_add(diff, k, -v)
            if diff:
                bad.append(args + (z,))
    return bad


def random_bridge_cochain(alg: HomNambuAlgebra, leib: HomLeibnizAlgebra, p: int, rng, span=2):
    """Random integer-coefficient cochain (no symmetry constraints)."""
    if p == 0:
        m = linalg.zeros(alg.dim, alg.dim)
        for r in range(alg.dim):
            for c in range(alg.dim):
                m[r, c] = Fraction(rng.randint(-span, span))
        return BridgeCochain(alg, leib, 0, m)
    out = {}
    for args in itertools.product(range(leib.dim), repeat=p):
        for z in range(alg.dim):
            vec = {
                r: Fraction(rng.randint(-span, span))
                for r in range(alg.dim)
                if rng.random() < 0.5
            }
            vec = {r: v for r, v in vec.items() if v}
            if vec:
                out[args + (z,)] = vec
    return BridgeCochain(alg, leib, p, out)
