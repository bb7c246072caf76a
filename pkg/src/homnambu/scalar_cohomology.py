"""Trivial-coefficient cohomology and central extensions.

The coboundary of a degree-p cochain has two sums: one inserts the
induced binary bracket of two fundamental-set arguments, the other feeds
L(x_i).z into the final slot::

    (d phi)(x_1, ..., x_{p+1}, z)
        = sum_{i<j} (-1)^i phi(a(x_1), ..., ^x_i, ..., [x_i,x_j], ..., a(x_{p+1}), a(z))
        + sum_i     (-1)^i phi(a(x_1), ..., ^x_i, ..., a(x_{p+1}), L(x_i).z)

(1-based signs; the bracket replaces slot j).  Degree 0 cochains are
covectors with (d phi) = -phi([...]), which is exactly the potential
equation used in the Filippov example.

Operators are assembled as sparse matrices whose rows are canonical
output tuples, so d(p+1) o d(p) = 0 is an exact matrix statement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import HomNambuAlgebra
from .cochains import Cochain, CochainSpace, split_vector_respects_fusion
from .fundamental import fundamental_of, l_action_sparse
from .indices import levi_civita, sv_add, wedge_basis

ONE = Fraction(1)
ZERO = Fraction(0)


class NotACocycleError(ValueError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"not a cocycle: coboundary is nonzero at {triple}")


@dataclass
class CohomologyReport:
    degree: int
    dim_c: int
    dim_z: int
    dim_b: int
    dim_h: int
    cocycle_basis: linalg.SubspaceBasis
    coboundary_basis: linalg.SubspaceBasis
    mode: str = "fused"


def zero_coboundary_matrix(alg: HomNambuAlgebra, mode: str = "fused") -> linalg.SparseMatrix:
    """Matrix of covector -> degree-1 cochain, phi -> -phi o bracket."""
    space = CochainSpace(alg, 1, "scalar", mode)
    m = linalg.SparseMatrix(space.dim, alg.dim, {})
    for row, key in enumerate(space.keys):
        blocks, z = space.decode_args(key)
        args = space.wedge[blocks[0]] + (z,)
        for j, v in alg.bracket_basis_sparse(args).items():
            m.add(row, j, -v)
    return m


def apply_zero_coboundary(alg: HomNambuAlgebra, covector, mode: str = "fused") -> Cochain:
    space = CochainSpace(alg, 1, "scalar", mode)
    flat = linalg.sparse_mat_vec(zero_coboundary_matrix(alg, mode), linalg.vec(covector))
    return Cochain.from_flat(space, flat)


def coboundary_matrix(
    alg: HomNambuAlgebra, p: int, mode: str = "fused", out_mode: str | None = None
) -> linalg.SparseMatrix:
    """Sparse matrix of the degree-p coboundary, p >= 1."""
    fund = fundamental_of(alg)
    space_in = CochainSpace(alg, p, "scalar", mode)
    space_out = CochainSpace(alg, p + 1, "scalar", out_mode or mode)
    alpha_cols = [alg.twist_column_sparse(i) for i in range(alg.dim)]
    m = linalg.SparseMatrix(space_out.dim, space_in.dim, {})
    for row, key in enumerate(space_out.keys):
        block_ids, z = space_out.decode_args(key)
        for in_key, w in _delta_functional(alg, fund, space_in, alpha_cols, block_ids, z).items():
            m.add(row, space_in.key_index[in_key], w)
    return m


def _delta_functional(alg, fund, space_in, alpha_cols, block_ids, z) -> dict:
    """Read weights of (d phi) at canonical arguments, as a functional in
    phi's stored coordinates."""
    q = len(block_ids)  # p + 1
    out = {}
    units = [{b: ONE} for b in block_ids]
    alpha_blocks = [fund.twist_sparse(u) for u in units]
    z_unit = {z: ONE}
    alpha_z = alpha_cols[z]
    for i in range(q):
        sign = Fraction(-1 if i % 2 == 0 else 1)  # (-1)^(i+1) 1-based
        for j in range(i + 1, q):
            bracket = fund.table[block_ids[i]][block_ids[j]]
            if not bracket:
                continue
            blocks = [alpha_blocks[t] for t in range(q) if t != i]
            blocks[j - 1] = bracket  # slot j, with slot i removed
            for in_key, w in space_in.functional(blocks, alpha_z).items():
                sv_add(out, in_key, sign * w)
        lz = l_action_sparse(alg, fund.basis, units[i], z_unit)
        if lz:
            blocks = [alpha_blocks[t] for t in range(q) if t != i]
            for in_key, w in space_in.functional(blocks, lz).items():
                sv_add(out, in_key, sign * w)
    return out


def apply_coboundary(alg: HomNambuAlgebra, phi: Cochain, out_mode: str | None = None) -> Cochain:
    p = phi.space.degree
    m = coboundary_matrix(alg, p, phi.space.mode, out_mode)
    space_out = CochainSpace(alg, p + 1, "scalar", out_mode or phi.space.mode)
    return Cochain.from_flat(space_out, linalg.sparse_mat_vec(m, phi.to_flat()))


def coboundary_preserves_fusion(alg: HomNambuAlgebra, p: int) -> bool:
    """Does the coboundary send fused cochains to fused cochains?

    Checked by evaluating the operator into the split space and testing
    every image column for skewness across the last block and final slot.
    """
    m = coboundary_matrix(alg, p, "fused", out_mode="split")
    space_split = CochainSpace(alg, p + 1, "scalar", "split")
    dense = m.to_dense()
    for col in range(m.cols):
        if not split_vector_respects_fusion(space_split, tuple(dense[:, col])):
            return False
    return True


def cohomology(alg: HomNambuAlgebra, p: int, mode: str = "fused") -> CohomologyReport:
    """Cocycles, coboundaries and their quotient at degree p.

    Cocycles are computed pointwise (kernel of the operator evaluated in
    the split space), so the answer does not presuppose that the image
    stays in the fused space; the containment check in quotient_dim
    would surface any such defect.
    """
    if p < 0:
        raise ValueError("degree must be >= 0")
    if p == 0:
        m = zero_coboundary_matrix(alg, mode)
        z = linalg.kernel_basis(m.to_dense())
        b = linalg.SubspaceBasis(alg.dim, ())
        return CohomologyReport(0, alg.dim, z.dim, 0, z.dim, z, b, mode)
    space = CochainSpace(alg, p, "scalar", mode)
    out_mode = "split" if mode == "fused" else mode
    z = linalg.kernel_basis(coboundary_matrix(alg, p, mode, out_mode).to_dense())
    if p == 1:
        prev = zero_coboundary_matrix(alg, mode)
    else:
        prev = coboundary_matrix(alg, p - 1, mode)
    b = linalg.image_basis(prev.to_dense())
    dim_h = linalg.quotient_dim(z, b)
    return CohomologyReport(p, space.dim, z.dim, b.dim, dim_h, z, b, mode)


# -- central extensions -------------------------------------------------------


def central_extension(alg: HomNambuAlgebra, phi: Cochain, lam=None) -> HomNambuAlgebra:
    """Adjoin a central generator, shifting the bracket by the scalar
    cocycle phi and extending the twist by the covector lam.

    phi must be a degree-1 cocycle; the first violating argument triple
    is reported otherwise.  The extended twist maps the new generator to
    zero; its multiplicativity is a property of (phi, lam) that callers
    check separately when they need it.
    """
    if phi.space.degree != 1 or phi.space.kind != "scalar":
        raise ValueError("central_extension needs a scalar degree-1 cochain")
    d, n = alg.dim, alg.arity
    lam = linalg.vec(lam) if lam is not None else (ZERO,) * d
    if len(lam) != d:
        raise ValueError("lambda length mismatch")
    flat = linalg.sparse_mat_vec(
        coboundary_matrix(alg, 1, phi.space.mode, "split"), phi.to_flat()
    )
    if any(flat):
        space2 = CochainSpace(alg, 2, "scalar", "split")
        key = space2.keys[next(i for i, v in enumerate(flat) if v)]
        b1, b2, z = key
        triple = (
            tuple(i + 1 for i in space2.wedge[b1]),
            tuple(i + 1 for i in space2.wedge[b2]),
            z + 1,
        )
        raise NotACocycleError(triple)
    coeffs = {}
    for key in wedge_basis(d, n):
        value = list(alg.bracket_basis(key)) + [phi.value((phi.space.windex[key[:-1]],), key[-1])]
        if any(value):
            coeffs[key] = tuple(value)
    twist = linalg.zeros(d + 1, d + 1)
    twist[:d, :d] = alg.twist
    for j in range(d):
        twist[d, j] = lam[j]
    return HomNambuAlgebra(d + 1, n, coeffs, twist)


def restrict_extension(ext: HomNambuAlgebra) -> HomNambuAlgebra:
    """Quotient a central extension by its last basis vector."""
    d = ext.dim - 1
    coeffs = {}
    for key, value in ext.coeffs.items():
        if any(i >= d for i in key):
            continue
        trimmed = value[:d]
        if any(trimmed):
            coeffs[key] = trimmed
    twist = ext.twist[:d, :d]
    return HomNambuAlgebra(d, ext.arity, coeffs, twist)


def trivialization_map(alg: HomNambuAlgebra, psi_covector):
    """Basis change x + a e -> x + (a + psi(x)) e of the extended space."""
    d = alg.dim
    psi = linalg.vec(psi_covector)
    t = linalg.eye(d + 1)
    for j in range(d):
        t[d, j] = psi[j]
    return t


# -- the explicit potential for twisted Filippov algebras --------------------


def filippov_potential(signs, alpha, phi: Cochain) -> tuple:
    """Covector psi with (d psi) = phi on the twisted Filippov algebra.

    Works coefficientwise: for each basis index k the complement tuple s
    is the only one the alternating symbol keeps, which pins psi o alpha
    to signed multiples of phi's coordinates; psi itself then comes from
    one exact solve against the twist.
    """
    n = len(signs) - 1
    d = n + 1
    space = phi.space
    if space.degree != 1 or space.alg.dim != d:
        raise ValueError("potential needs a degree-1 cochain on the n+1 dim algebra")
    phik = []
    for k in range(d):
        total = ZERO
        for j in wedge_basis(d, n):
            sign = levi_civita(j + (k,))
            if sign:
                total += sign * phi.value((space.windex[j[:-1]],), j[-1])
        phik.append(-((-1) ** n) * signs[k] * total)
    psi = linalg.solve(linalg.mat(alpha).T, phik)
    if psi is None:  # pragma: no cover - the fixtures use invertible twists
        raise ValueError("twist is not invertible; no potential from this formula")
    return psi


def potential_by_solve(alg: HomNambuAlgebra, phi: Cochain):
    """A covector psi with (d psi) = phi, from the linear system; None
    when phi is not a degree-0 coboundary."""
    m = zero_coboundary_matrix(alg, phi.space.mode)
    return linalg.solve(m.to_dense(), phi.to_flat())