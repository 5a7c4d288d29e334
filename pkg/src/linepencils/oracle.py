"""Brute-force enumeration of maximal 3-fiber classes.

Shares nothing with the pencil engine beyond exact linear algebra: lines are
assigned to one of three fibers or left out, weights come from solving the
equal-sum system at the base points, and maximality is tested through
resonance.  Meant as a cross-check in tests.
"""
from __future__ import annotations

from . import linalg
from .combinatorics import LineCombinatorics
from .errors import SearchBoundExceeded
from .os_algebra import wedge_matrix

ORACLE_MAX_LINES = 12


def _is_maximal(c: LineCombinatorics, M) -> bool:
    # V is maximal iff a generic a in V has {b : a∧b = 0, sum b = 0} = V
    dim = len(M)
    trials = [(1, t) for t in range(1, 9)] + [(2, 3), (3, 5), (5, -2)]
    for s, t in trials:
        a = [s * x + t * y for x, y in zip(M[0], M[1])]
        if not any(a):
            continue
        system = wedge_matrix(c, a) + [[1] * c.n]
        if len(linalg.kernel_basis(system, c.n)) == dim:
            return True
    return False


def oracle_enumerate_3pencils(c: LineCombinatorics) -> dict[tuple, list[list[int]]]:
    """Map class key -> a representative 2 x n matrix, over all maximal 3-fiber classes."""
    if c.n > ORACLE_MAX_LINES:
        raise SearchBoundExceeded(f"oracle is limited to {ORACLE_MAX_LINES} lines")
    points = c.all_points
    closing = {l: [p for p in points if max(p) == l] for l in c.lines}
    assign = [0] * (c.n + 1)
    found: dict[tuple, list[list[int]]] = {}

    def consistent(l):
        for p in closing[l]:
            fibs = {assign[x] for x in p if assign[x]}
            if len(fibs) == 2:
                return False
        return True

    def leaf():
        fibers = [[l for l in c.lines if assign[l] == f] for f in (1, 2, 3)]
        if any(not F for F in fibers):
            return
        S = [l for l in c.lines if assign[l]]
        pos = {l: i for i, l in enumerate(S)}
        rows = []
        for p in points:
            if len({assign[x] for x in p if assign[x]}) != 3:
                continue
            sums = [[0] * len(S) for _ in range(3)]
            for x in p:
                if assign[x]:
                    sums[assign[x] - 1][pos[x]] = 1
            rows.append([a - b for a, b in zip(sums[0], sums[1])])
            rows.append([a - b for a, b in zip(sums[1], sums[2])])
        ker = linalg.kernel_basis(rows, len(S))
        if len(ker) != 1:
            return  # a maximal class has its weights fixed up to scale
        w = ker[0]
        if all(x < 0 for x in w):
            w = [-x for x in w]
        if any(x <= 0 for x in w):
            return
        M = [[0] * c.n for _ in range(2)]
        for l in S:
            f = assign[l]
            if f == 1:
                M[0][l - 1] = w[pos[l]]
            elif f == 2:
                M[1][l - 1] = w[pos[l]]
            else:
                M[0][l - 1] = M[1][l - 1] = -w[pos[l]]
        key = tuple(tuple(r) for r in linalg.saturate(M, c.n))
        if key in found or not _is_maximal(c, M):
            return
        found[key] = M

    def rec(l, used):
        if l > c.n:
            leaf()
            return
        for f in range(0, min(used + 1, 3) + 1):
            assign[l] = f
            if consistent(l):
                rec(l + 1, max(used, f))
        assign[l] = 0

    rec(1, 0)
    return found
