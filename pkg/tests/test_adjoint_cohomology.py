"""Algebra-valued complex: four-term coboundary, equivariance, deformations."""

import random
from fractions import Fraction

import pytest

from homnambu import fixtures, linalg
from homnambu.adjoint_cohomology import (
    NotEquivariantError,
    apply_coboundary,
    check_infinitesimal_deformation,
    coboundary_matrix,
    coboundary_preserves_fusion,
    cohomology,
    deformation_residuals,
    dual_number_bracket,
    equivariance_violations,
    equivariant_basis,
    equivariant_matrix_space,
    random_equivariant_cochain,
    zero_coboundary_matrix,
    _restrict_columns,
)
from homnambu.algebra import bracket_eval, zero_algebra
from homnambu.cochains import Cochain, CochainSpace
from homnambu.fundamental import fundamental_of, l_action_sparse

ONE = Fraction(1)


def e(d, i):
    return tuple(Fraction(int(j == i)) for j in range(d))


def test_zero_cochain_maps_to_zero():
    alg = fixtures.filippov_n3()
    space = CochainSpace(alg, 1, "adjoint")
    assert apply_coboundary(alg, Cochain.zero(space)).coeffs == {}


def test_zero_bracket_all_terms_vanish():
    alg = zero_algebra(3, 3)
    for p in (1, 2):
        assert not coboundary_matrix(alg, p).entries
    assert not zero_coboundary_matrix(alg).entries


def test_degree1_matches_six_term_display():
    # independent second path: psi(a(x), L(y)z) - psi(a(y), L(x)z)
    # - psi([x,y], a(z)) + L(a(x)).psi(y,z) - L(a(y)).psi(x,z)
    # - sum_i [a(y^1), ..., psi(x, y^i), ..., a(y^{n-1}), a(z)]
    for alg in (fixtures.filippov_n3(), fixtures.twisted_filippov_rotation()):
        fund = fundamental_of(alg)
        space1 = CochainSpace(alg, 1, "adjoint")
        space2 = CochainSpace(alg, 2, "adjoint", "split")
        rng = random.Random(9)
        psi = random_equivariant_cochain(alg, 1, rng)
        out = apply_coboundary(alg, psi, out_mode="split")
        alpha_cols = [alg.twist_column_sparse(i) for i in range(alg.dim)]
        zero = (Fraction(0),) * alg.dim
        for key in space2.keys:
            (bx, by), z = space2.decode_args(key)
            ax = fund.twist_sparse({bx: ONE})
            ay = fund.twist_sparse({by: ONE})
            lyz = l_action_sparse(alg, fund.basis, {by: ONE}, {z: ONE})
            lxz = l_action_sparse(alg, fund.basis, {bx: ONE}, {z: ONE})
            total = list(psi.evaluate([ax], lyz))
            for i, v in enumerate(psi.evaluate([ay], lxz)):
                total[i] -= v
            for i, v in enumerate(psi.evaluate([fund.table[bx][by]], alpha_cols[z])):
                total[i] -= v
            lax = l_action_sparse(
                alg, fund.basis, ax, {i: v for i, v in enumerate(psi.value((by,), z)) if v}
            )
            for i, v in lax.items():
                total[i] += v
            lay = l_action_sparse(
                alg, fund.basis, ay, {i: v for i, v in enumerate(psi.value((bx,), z)) if v}
            )
            for i, v in lay.items():
                total[i] -= v
            yt = fund.basis[by]
            n = alg.arity
            from homnambu.algebra import bracket_eval_sparse

            for s in range(n - 1):
                val = psi.value((bx,), yt[s])
                args = [alpha_cols[yt[t]] for t in range(s)]
                args.append({i: v for i, v in enumerate(val) if v})
                args += [alpha_cols[yt[t]] for t in range(s + 1, n - 1)]
                args.append(alpha_cols[z])
                for i, v in bracket_eval_sparse(alg, args).items():
                    total[i] -= v
            assert tuple(total) == out.value((bx, by), z)


def test_delta_squared_zero_on_equivariant_subspace():
    for alg in (
        fixtures.filippov_n3(),
        fixtures.twisted_filippov_rotation(),
        fixtures.twisted_filippov_reflection(),
        fixtures.volume_form_d3_twisted(),
        fixtures.solvable_d4(),
    ):
        for p in (1, 2):
            equi = equivariant_basis(alg, p)
            lo = _restrict_columns(coboundary_matrix(alg, p), equi)
            hi = coboundary_matrix(alg, p + 1)
            assert linalg.sparse_matmul(hi, lo).is_zero()


def test_delta_preserves_equivariance():
    from homnambu.adjoint_cohomology import equivariance_matrix

    for alg in (fixtures.twisted_filippov_rotation(), fixtures.volume_form_d3_twisted()):
        for p in (1, 2):
            equi = equivariant_basis(alg, p)
            lo = _restrict_columns(coboundary_matrix(alg, p), equi)
            e_out = equivariance_matrix(alg, p + 1)
            assert linalg.sparse_matmul(e_out, lo).is_zero()


def test_coboundary_preserves_fusion():
    for alg in (fixtures.filippov_n3(), fixtures.twisted_filippov_rotation()):
        for p in (1, 2):
            assert coboundary_preserves_fusion(alg, p)


def test_apply_coboundary_rejects_non_equivariant():
    alg = fixtures.twisted_filippov_rotation()
    space = CochainSpace(alg, 1, "adjoint")
    flat = [Fraction(0)] * space.dim
    flat[0] = ONE
    psi = Cochain.from_flat(space, flat)
    bad = equivariance_violations(alg, psi)
    assert bad
    with pytest.raises(NotEquivariantError):
        apply_coboundary(alg, psi)


def test_zero_bracket_h1_is_whole_space():
    alg = zero_algebra(3, 3)
    rep = cohomology(alg, 1)
    assert rep.dim_z == rep.dim_c == rep.dim_equivariant
    assert rep.dim_b == 0
    assert rep.dim_h == rep.dim_c == rep.dim_h_no_defect


def test_filippov_report_consistent():
    rep = cohomology(fixtures.filippov_n3(), 1)
    assert rep.dim_h == rep.dim_z - rep.dim_b >= 0
    assert rep.dim_h_no_defect == rep.dim_z
    assert rep.cocycle_basis.verify() and rep.coboundary_basis.verify()


def test_twisted_report_consistent():
    rep = cohomology(fixtures.twisted_filippov_rotation(), 1)
    assert rep.dim_equivariant < rep.dim_c
    assert rep.dim_h == rep.dim_z - rep.dim_b >= 0


def test_degree2_report_small_fixture():
    rep = cohomology(fixtures.volume_form_d3_twisted(), 2)
    assert rep.dim_h == rep.dim_z - rep.dim_b >= 0


# -- deformations --------------------------------------------------------------


def test_dual_number_bracket_zero_cochain():
    alg = fixtures.filippov_n3()
    space = CochainSpace(alg, 1, "adjoint")
    psi = Cochain.zero(space)
    args = [e(4, 1), e(4, 2), e(4, 3)]
    value, t = dual_number_bracket(alg, psi, args)
    assert value == bracket_eval(alg, args)
    assert t == alg.zero_vector()


def test_dual_number_bracket_repeated_argument():
    alg = fixtures.filippov_n3()
    rng = random.Random(2)
    psi = random_equivariant_cochain(alg, 1, rng)
    v = (ONE, Fraction(2), Fraction(0), Fraction(1))
    value, t = dual_number_bracket(alg, psi, [v, v, e(4, 0)])
    assert value == alg.zero_vector()
    assert t == alg.zero_vector()


def test_residuals_match_coboundary_entrywise():
    from homnambu.indices import wedge_basis

    alg = fixtures.filippov_n3()
    rng = random.Random(21)
    psi = random_equivariant_cochain(alg, 1, rng)
    out_space = CochainSpace(alg, 2, "adjoint", "split")
    flat = linalg.sparse_mat_vec(coboundary_matrix(alg, 1, "fused", "split"), psi.to_flat())
    res = {(x, y): r for x, y, r in deformation_residuals(alg, psi)}
    d = alg.dim
    for x in wedge_basis(d, 2):
        for y in wedge_basis(d, 3):
            key = (out_space.windex[x], out_space.windex[y[:2]], y[2])
            base = out_space.key_index[key] * d
            dv = {r: flat[base + r] for r in range(d) if flat[base + r]}
            assert dv == res.get((x, y), {})


def test_zero_cochain_is_deformation():
    alg = fixtures.filippov_n3()
    space = CochainSpace(alg, 1, "adjoint")
    assert check_infinitesimal_deformation(alg, Cochain.zero(space))


def test_defect_images_are_deformations():
    alg = fixtures.twisted_filippov_rotation()
    d0 = zero_coboundary_matrix(alg)
    for flat0 in equivariant_matrix_space(alg).vectors[:3]:
        psi = Cochain.from_flat(
            CochainSpace(alg, 1, "adjoint"), linalg.sparse_mat_vec(d0, flat0)
        )
        assert check_infinitesimal_deformation(alg, psi)


def test_random_cochains_dual_paths_agree():
    alg = fixtures.filippov_n3()
    rng = random.Random(31)
    seen_false = 0
    for _ in range(8):
        psi = random_equivariant_cochain(alg, 1, rng)
        verdict = check_infinitesimal_deformation(alg, psi)
        if not verdict:
            seen_false += 1
            assert deformation_residuals(alg, psi)
    assert seen_false > 0


def test_cocycles_are_deformations():
    alg = fixtures.twisted_filippov_rotation()
    rep = cohomology(alg, 1)
    space = CochainSpace(alg, 1, "adjoint")
    for flat in rep.cocycle_basis.vectors[:4]:
        psi = Cochain.from_flat(space, flat)
        assert check_infinitesimal_deformation(alg, psi)


def test_n2_matches_hand_coded_lie_formula():
    # classical adjoint Chevalley-Eilenberg differential of a 2-cochain,
    # written independently, must equal the degree-1 coboundary at n=2:
    # d psi(x,y,z) = [x,psi(y,z)] - [y,psi(x,z)] + [z,psi(x,y)]
    #              - psi([x,y],z) + psi([x,z],y) - psi([y,z],x)
    import itertools

    alg = fixtures.sl2()
    rng = random.Random(17)
    psi = random_equivariant_cochain(alg, 1, rng)
    out = apply_coboundary(alg, psi, out_mode="split")
    basis = [alg.basis_vector(i) for i in range(3)]
    w = psi.space.windex

    def psi_vec(v, u):
        sv = {i: c for i, c in enumerate(v) if c}
        su = {i: c for i, c in enumerate(u) if c}
        from homnambu.fundamental import wedge_of_vectors

        return psi.evaluate([wedge_of_vectors(w, [sv])], su)

    for x, y, z in itertools.product(range(3), repeat=3):
        lhs = out.value((w[(x,)], w[(y,)]), z)
        bxy = bracket_eval(alg, [basis[x], basis[y]])
        bxz = bracket_eval(alg, [basis[x], basis[z]])
        byz = bracket_eval(alg, [basis[y], basis[z]])
        terms = [
            (1, bracket_eval(alg, [basis[x], psi_vec(basis[y], basis[z])])),
            (-1, bracket_eval(alg, [basis[y], psi_vec(basis[x], basis[z])])),
            (1, bracket_eval(alg, [basis[z], psi_vec(basis[x], basis[y])])),
            (-1, psi_vec(bxy, basis[z])),
            (1, psi_vec(bxz, basis[y])),
            (-1, psi_vec(byz, basis[x])),
        ]
        total = [Fraction(0)] * 3
        for sign, vec in terms:
            for i, v in enumerate(vec):
                total[i] += sign * v
        assert tuple(total) == tuple(lhs), (x, y, z)
