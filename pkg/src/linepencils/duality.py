"""Transpose duality between Orlik-Solomon automorphisms and Aut¹(H).

Here A is an n x n integer matrix acting on x_1..x_n, column b being the
image of x_b.  It must have all column sums equal so the sum-zero hyperplane
is preserved; its transpose then has equal row sums and is a generating-system
matrix for an automorphism of H.
"""
from __future__ import annotations

from itertools import combinations

from . import linalg
from .combinatorics import LineCombinatorics
from .errors import DualityViolation, NotUnimodular, ValidationError
from .rigidity import is_aut1


def _check(A, n: int) -> None:
    if len(A) != n or any(len(r) != n for r in A):
        raise ValidationError(f"expected a {n} x {n} matrix")
    if len({sum(A[i][j] for i in range(n)) for j in range(n)}) > 1:
        raise ValidationError("columns must have equal sums")
    if abs(linalg.det(A)) != 1:
        raise NotUnimodular("determinant is not ±1")


def os_coefficients(c: LineCombinatorics, A) -> dict[tuple[tuple[int, int, int], tuple[int, int]], int]:
    """Coefficient of the image of each relation on each basis pair ``x_i ∧ x_j``.

    Relations are indexed by concurrent triples (b, c, d) with b first at
    their point; basis pairs by (i, j) with i the first line at a point p ∋ j.
    Only nonzero coefficients are returned.
    """
    triples = [(p[0], x, y) for p in c.points for x, y in combinations(p[1:], 2)]
    out = {}
    for p in c.all_points:
        for j in p[1:]:
            for t in triples:
                m = [[sum(A[k - 1][col - 1] for k in p) for col in t],
                     [A[j - 1][col - 1] for col in t],
                     [1, 1, 1]]
                v = int(linalg.det(m))
                if v:
                    out[(t, (p[0], j))] = v
    return out


def is_os_automorphism(c: LineCombinatorics, A) -> bool:
    _check(A, c.n)
    return not os_coefficients(c, A)


def duality_check(c: LineCombinatorics, A) -> bool:
    """Both sides of the duality; raises if they disagree."""
    _check(A, c.n)
    left = not os_coefficients(c, A)
    right = is_aut1(c, linalg.transpose(A))
    if left != right:
        raise DualityViolation(f"OS side says {left}, H∧H side says {right}")
    return left
