"""Negation of subobjects and maps, computed in the slice over the base."""

from __future__ import annotations

from ..cube import enum_homs, points
from ..errors import InvariantError
from .core import Subobject, TCSetMor, image


def neg_by_points(A: Subobject) -> tuple[frozenset[str], ...]:
    """``y`` is in the negation iff no point of ``y`` lands in ``A_0``."""
    Y = A.ambient
    return tuple(
        frozenset(y for y in Y.levels[n]
                  if all(Y.action[p][y] not in A.members[0] for p in points(n)))
        for n in range(Y.trunc + 1))


def neg_by_morphisms(A: Subobject) -> tuple[frozenset[str], ...]:
    """Forcing clause for ``A => 0``: no restriction of ``y`` lies in ``A``."""
    Y = A.ambient
    D = Y.trunc
    return tuple(
        frozenset(y for y in Y.levels[n]
                  if all(Y.action[s][y] not in A.members[m]
                         for m in range(D + 1) for s in enum_homs(m, n)))
        for n in range(D + 1))


def neg_sub(A: Subobject) -> Subobject:
    by_points = neg_by_points(A)
    by_mors = neg_by_morphisms(A)
    if by_points != by_mors:
        n = next(i for i, (a, b) in enumerate(zip(by_points, by_mors)) if a != b)
        raise InvariantError(
            f"point-based and morphism-based negation disagree at level {n}")
    return Subobject(A.ambient, by_points)


def neg_map(f: TCSetMor) -> TCSetMor:
    """The inclusion ``not X -> Y`` of the negation of ``f`` over ``Y``."""
    return neg_sub(image(f)).inclusion()


def double_neg(A: Subobject) -> Subobject:
    return neg_sub(neg_sub(A))


def level0_neg(A: Subobject) -> frozenset[str]:
    """Set-level complement of ``A_0`` inside ``Y_0``."""
    return frozenset(A.ambient.levels[0]) - A.members[0]
