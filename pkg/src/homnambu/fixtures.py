"""Fixture algebras used across the test suite and shipped as files.

Everything here is desk scale (arity 2..4, dimension <= 5) and exact.
``write_all`` regenerates the ``fixtures/`` directory of ``.alg`` files.
"""

from __future__ import annotations

import os
from fractions import Fraction

from . import linalg
from .algebra import HomNambuAlgebra, filippov_algebra, yau_twist, zero_algebra
from .formats import save_algebra


def rotation_twist_4d():
    """Signed permutation with determinant one: e1->e2->-e1, e3->e4->-e3."""
    return linalg.mat([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])


def reflection_twist_4d():
    """diag(1, 1, -1, -1): fixes e1, e2; determinant one."""
    return linalg.mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])


def filippov_n3():
    return filippov_algebra(3, [1, 1, 1, 1])


def twisted_filippov_rotation():
    return yau_twist(filippov_n3(), rotation_twist_4d())


def twisted_filippov_reflection():
    return yau_twist(filippov_n3(), reflection_twist_4d())


def sl2():
    """Binary d=3 algebra with [e1,e2]=2e2, [e1,e3]=-2e3, [e2,e3]=e1."""
    return HomNambuAlgebra(
        3,
        2,
        {(0, 1): (0, 2, 0), (0, 2): (0, 0, -2), (1, 2): (1, 0, 0)},
    )


def volume_form_d3():
    """Ternary bracket on a 3-dim space: [e1,e2,e3] = e1 + 2e2 - e3."""
    return HomNambuAlgebra(3, 3, {(0, 1, 2): (1, 2, -1)})


def volume_form_d3_twisted():
    """Yau twist of the volume bracket along -id (an endomorphism for odd arity)."""
    neg = linalg.mat([[-1, 0, 0], [0, -1, 0], [0, 0, -1]])
    return yau_twist(volume_form_d3(), neg)


def solvable_d4():
    """Ternary d=4 with [e1,e2,e3] = e1 and e4 central; the induced
    binary bracket on wedges is not skew."""
    return HomNambuAlgebra(4, 3, {(0, 1, 2): (1, 0, 0, 0)})


def perturbed_filippov():
    """Invalid: [e2,e3,e4] redirected from e1 to e2; fails the identity."""
    alg = filippov_n3()
    coeffs = dict(alg.coeffs)
    coeffs[(1, 2, 3)] = (Fraction(0), Fraction(1), Fraction(0), Fraction(0))
    return HomNambuAlgebra(4, 3, coeffs)


def standard_fixtures() -> dict:
    """Valid named fixtures; the keys double as file stems."""
    return {
        "filippov_n2": filippov_algebra(2, [1, 1, 1]),
        "filippov_n2_mixed": filippov_algebra(2, [1, -1, 1]),
        "filippov_n3": filippov_n3(),
        "filippov_n3_mixed": filippov_algebra(3, [1, -1, 1, -1]),
        "filippov_n4": filippov_algebra(4, [1, 1, 1, 1, 1]),
        "filippov_n3_twisted": twisted_filippov_rotation(),
        "filippov_n3_reflected": twisted_filippov_reflection(),
        "sl2": sl2(),
        "volume_d3": volume_form_d3(),
        "volume_d3_twisted": volume_form_d3_twisted(),
        "solvable_d4": solvable_d4(),
        "zero_d3_n3": zero_algebra(3, 3),
        "zero_d2_n2": zero_algebra(2, 2),
    }


def write_all(directory) -> list:
    """Write every fixture (plus the invalid one) as .alg files."""
    os.makedirs(directory, exist_ok=True)
    written = []
    for name, alg in standard_fixtures().items():
        path = os.path.join(directory, f"{name}.alg")
        save_algebra(alg, path)
        written.append(path)
    path = os.path.join(directory, "perturbed_n3.alg")
    save_algebra(perturbed_filippov(), path)
    written.append(path)
    return written
