"""Index combinatorics shared by the whole package.

Basis indices are 0-based everywhere in code; the text file format and
printed reports use the customary 1-based labels.  A "wedge tuple" is a
strictly increasing tuple of basis indices; permuting arguments of a
skew-symmetric slot is handled by :func:`sort_with_sign`.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def perm_sign(perm) -> int:
    """Sign of a permutation given as a sequence of distinct ints."""
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def sort_with_sign(indices):
    """Canonicalize a tuple of basis indices for a skew-symmetric slot.

    Returns ``(sorted_tuple, sign)``; sign is 0 when an index repeats.
    """
    idx = tuple(indices)
    if len(set(idx)) != len(idx):
        return idx, 0
    order = sorted(range(len(idx)), key=idx.__getitem__)
    return tuple(idx[i] for i in order), perm_sign(order)


def wedge_basis(dim: int, k: int):
    """All strictly increasing k-tuples in ``range(dim)``, in lex order."""
    return list(itertools.combinations(range(dim), k))


def tensor_basis(dim: int, k: int):
    """All k-tuples in ``range(dim)``, in lex order."""
    return list(itertools.product(range(dim), repeat=k))


def levi_civita(indices) -> int:
    """Totally antisymmetric symbol on ``len(indices)`` letters.

    The index set is whatever appears; returns the sign of the sequence
    relative to its sorted order, 0 on repeats.
    """
    _, sign = sort_with_sign(indices)
    return sign


# ---------------------------------------------------------------------------
# sparse vectors: {index: Fraction} with zero entries never stored


def sv_add(acc: dict, key, coeff) -> None:
    """Accumulate ``coeff`` at ``key`` in a sparse dict, dropping zeros."""
    if not coeff:
        return
    new = acc.get(key, 0) + coeff
    if new:
        acc[key] = new
    else:
        acc.pop(key, None)


def sv_scale(vec: dict, coeff) -> dict:
    if not coeff:
        return {}
    return {k: v * coeff for k, v in vec.items()}


def sv_from_dense(entries) -> dict:
    return {i: Fraction(v) for i, v in enumerate(entries) if v}


def sv_to_dense(vec: dict, length: int) -> tuple:
    out = [Fraction(0)] * length
    for k, v in vec.items():
        out[k] = v
    return tuple(out)


def unit_sv(index: int) -> dict:
    return {index: Fraction(1)}
