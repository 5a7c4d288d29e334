"""Exact integer and rational linear algebra.

Matrices are plain sequences of rows.  Entries are ``int`` or
``fractions.Fraction``; nothing here ever touches floating point.  Every
function returns fresh lists, so callers may keep tuples as their storage.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Optional, Sequence

Number = int | Fraction
Matrix = Sequence[Sequence[Number]]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else max(a, b)


def shape(M: Matrix, ncols: Optional[int] = None) -> tuple[int, int]:
    rows = len(M)
    if ncols is None:
        if not rows:
            raise ValueError("column count of an empty matrix must be given")
        ncols = len(M[0])
    return rows, ncols


def primitive(v: Sequence[Number]) -> list[int]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    den = reduce(_lcm, (Fraction(x).denominator for x in v), 1)
    ints = [int(Fraction(x) * den) for x in v]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return ints
    return [x // g for x in ints]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M: Matrix, ncols: Optional[int] = None) -> list[list[Number]]:
    _, c = shape(M, ncols)
    return [[row[j] for row in M] for j in range(c)]


def matmul(A: Matrix, B: Matrix) -> list[list[Number]]:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Matrix, v: Sequence[Number]) -> list[Number]:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


# ---------------------------------------------------------------------------
# rational elimination


def rref(M: Matrix, ncols: Optional[int] = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q.  Returns (nonzero rows, pivot columns)."""
    _, c = shape(M, ncols)
    rows = [[Fraction(x) for x in r] for r in M]
    pivots: list[int] = []
    r = 0
    for col in range(c):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        if p != 1:
            rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _int_rank(M: Matrix, c: int) -> int:
    # fraction-free elimination; rows are kept primitive to bound growth
    rows = [list(r) for r in M if any(r)]
    r = 0
    for col in range(c):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        top = rows[r]
        p = top[col]
        for i in range(r + 1, len(rows)):
            f = rows[i][col]
            if f:
                row = [p * a - f * b for a, b in zip(rows[i], top)]
                g = reduce(gcd, row, 0)
                rows[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(rows):
            break
    return r


def rank(M: Matrix, ncols: Optional[int] = None) -> int:
    if not M:
        return 0
    _, c = shape(M, ncols)
    if all(isinstance(x, int) for row in M for x in row):
        return _int_rank(M, c)
    return len(rref(M, ncols)[1])


def kernel_basis(M: Matrix, ncols: Optional[int] = None) -> list[list[int]]:
    """Basis of the right kernel, each vector a primitive integer vector.

    One vector per free column; the free coordinate of each vector is positive.
    """
    _, c = shape(M, ncols)
    R, pivots = rref(M, c) if M else ([], [])
    free = [j for j in range(c) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * c
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(primitive(v))
    return basis


def solve(M: Matrix, b: Sequence[Number], ncols: Optional[int] = None) -> Optional[list[Fraction]]:
    """One rational solution of M x = b (free variables set to zero), or None."""
    _, c = shape(M, ncols)
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, pivots = rref(aug, c + 1) if aug else ([], [])
    if c in pivots:
        return None
    x = [Fraction(0)] * c
    for row, p in zip(R, pivots):
        x[p] = row[c]
    return x


def rowspace_basis(M: Matrix, ncols: Optional[int] = None) -> list[list[Fraction]]:
    if not M:
        return []
    return rref(M, ncols)[0]


def rowspace_contains(A: Matrix, B: Matrix, ncols: Optional[int] = None) -> bool:
    """True iff every row of B lies in the rational row space of A."""
    if not B:
        return True
    if not A:
        return all(all(x == 0 for x in row) for row in B)
    return rank(list(A) + list(B), ncols) == rank(A, ncols)


def rowspace_equal(A: Matrix, B: Matrix, ncols: Optional[int] = None) -> bool:
    return rowspace_contains(A, B, ncols) and rowspace_contains(B, A, ncols)


def intersect_kernels(mats: Sequence[Matrix], ncols: int) -> tuple[int, list[list[int]]]:
    """Intersection of the right kernels of several matrices.

    Returns ``(codimension, kernel basis)``; the codimension is the rank of the
    stacked matrices, so an empty list gives codimension 0.
    """
    stacked = [row for M in mats for row in M]
    basis = kernel_basis(stacked, ncols)
    return ncols - len(basis), basis


def det(M: Matrix) -> Number:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    if any(isinstance(x, Fraction) for row in M for x in row):
        a = [[Fraction(x) for x in row] for row in M]
        d = Fraction(1)
        for i in range(n):
            piv = next((k for k in range(i, n) if a[k][i] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != i:
                a[i], a[piv] = a[piv], a[i]
                d = -d
            d *= a[i][i]
            for k in range(i + 1, n):
                f = a[k][i] / a[i][i]
                a[k] = [x - f * y for x, y in zip(a[k], a[i])]
        return d
    a = [list(row) for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(M: Matrix) -> list[list[Fraction]]:
    n = len(M)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def integer_inverse(M: Matrix) -> list[list[int]]:
    """Inverse of a unimodular integer matrix."""
    inv = inverse(M)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


# ---------------------------------------------------------------------------
# integer lattices


def _column_echelon(M: Matrix, ncols: int):
    """Unimodular column reduction  M V = [H | 0]  (H lower echelon).

    Returns (H columns as a matrix, rank, V, Vinv) with V, Vinv n x n.
    """
    a = [[int(x) for x in row] for row in M]
    m = len(a)
    V = identity(ncols)
    Vi = identity(ncols)

    def swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def addmul(dst, src, q):
        # column dst -= q * column src
        if q == 0:
            return
        for row in a:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]
        # inverse op: row src += q * row dst
        Vi[src] = [x + q * y for x, y in zip(Vi[src], Vi[dst])]

    def negate(i):
        for row in a:
            row[i] = -row[i]
        for row in V:
            row[i] = -row[i]
        Vi[i] = [-x for x in Vi[i]]

    r = 0
    for i in range(m):
        if r == ncols:
            break
        while True:
            nz = [j for j in range(r, ncols) if a[i][j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(a[i][j]))
            if j0 != r:
                swap(r, j0)
            done = True
            for j in range(r + 1, ncols):
                if a[i][j] != 0:
                    addmul(j, r, a[i][j] // a[i][r])
                    if a[i][j] != 0:
                        done = False
            if done:
                break
        if any(a[i][j] != 0 for j in range(r, ncols)):
            if a[i][r] < 0:
                negate(r)
            r += 1
    return a, r, V, Vi


def integer_kernel(M: Matrix, ncols: Optional[int] = None) -> list[list[int]]:
    """Z-basis of the saturated lattice {x in Z^n : M x = 0}, in row HNF."""
    _, c = shape(M, ncols)
    if not M:
        return identity(c)
    _, r, V, _ = _column_echelon(M, c)
    basis = [[V[i][j] for i in range(c)] for j in range(r, c)]
    return hnf(basis, c)


def hnf(M: Matrix, ncols: Optional[int] = None) -> list[list[int]]:
    """Row Hermite normal form of an integer matrix, zero rows dropped.

    Pivots are positive and entries above each pivot lie in [0, pivot).
    """
    _, c = shape(M, ncols) if M else (0, ncols or 0)
    a = [[int(x) for x in row] for row in M]
    r = 0
    for col in range(c):
        while True:
            nz = [i for i in range(r, len(a)) if a[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][col]))
            a[r], a[i0] = a[i0], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][col]:
                    q = a[i][col] // a[r][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][col]:
                        done = False
            if done:
                break
        if r < len(a) and a[r][col] != 0:
            if a[r][col] < 0:
                a[r] = [-x for x in a[r]]
            p = a[r][col]
            for i in range(r):
                q = a[i][col] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
    return a[:r]


def smith_invariants(M: Matrix, ncols: Optional[int] = None) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    if not M:
        return []
    _, c = shape(M, ncols)
    a = [[int(x) for x in row] for row in M]
    m = len(a)
    diag = []
    t = 0
    while t < min(m, c):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, c) if a[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        a[t], a[i0] = a[i0], a[t]
        for row in a:
            row[t], row[j0] = row[j0], row[t]
        while True:
            p = a[t][t]
            changed = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        changed = True
            for j in range(t + 1, c):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        changed = True
            if changed:
                entries = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
                entries += [(abs(a[t][j]), t, j) for j in range(t, c) if a[t][j]]
                _, i0, j0 = min(entries)
                a[t], a[i0] = a[i0], a[t]
                for row in a:
                    row[t], row[j0] = row[j0], row[t]
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, c) if a[i][j] % p), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def saturate(M: Matrix, ncols: Optional[int] = None) -> list[list[int]]:
    """HNF basis of {x in Z^n : k x in rowlattice(M) for some k != 0}."""
    _, c = shape(M, ncols) if M else (0, ncols or 0)
    if not M:
        return []
    Mi = [primitive(row) for row in M]  # rational rows are allowed
    _, r, _, Vi = _column_echelon(Mi, c)
    return hnf(Vi[:r], c)


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^n given by its row HNF basis."""

    rows: tuple[tuple[int, ...], ...]
    ncols: int
    saturated: bool = False

    @classmethod
    def from_rows(cls, M: Matrix, ncols: int, saturated: bool = False) -> "Lattice":
        basis = saturate(M, ncols) if saturated else hnf(M, ncols)
        return cls(tuple(tuple(r) for r in basis), ncols, saturated)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def saturation(self) -> "Lattice":
        if self.saturated:
            return self
        return Lattice.from_rows(self.rows, self.ncols, saturated=True)

    def contains(self, v: Sequence[int]) -> bool:
        """Integer membership (not just rational span)."""
        if not self.rows:
            return all(x == 0 for x in v)
        x = solve(transpose(self.rows, self.ncols), v, len(self.rows))
        return x is not None and all(t.denominator == 1 for t in x)


# ---------------------------------------------------------------------------
# Fourier-Motzkin feasibility


def fm_feasible(G: Matrix, h: Sequence[Number], nvars: int) -> Optional[list[Fraction]]:
    """Find x with G x >= h componentwise, or return None if none exists.

    Plain Fourier-Motzkin elimination; parallel constraints are merged to the
    tightest one.  Back-substitution recovers a witness.
    """
    cons = [([Fraction(x) for x in row], Fraction(b)) for row, b in zip(G, h)]
    stages = []
    for var in reversed(range(nvars)):
        stages.append(cons)
        pos = [c for c in cons if c[0][var] > 0]
        neg = [c for c in cons if c[0][var] < 0]
        nxt = [c for c in cons if c[0][var] == 0]
        for pa, pb in pos:
            for na, nb in neg:
                sp, sn = pa[var], -na[var]
                coeffs = [x / sp + y / sn for x, y in zip(pa, na)]
                coeffs[var] = Fraction(0)
                nxt.append((coeffs, pb / sp + nb / sn))
        cons = _dedupe(nxt)
    if any(b > 0 for _, b in cons):
        return None
    x = [Fraction(0)] * nvars
    for var, stage in zip(range(nvars), reversed(stages)):
        lo, hi = None, None
        for a, b in stage:
            if a[var] == 0:
                continue
            rest = sum(a[j] * x[j] for j in range(var) if a[j])
            bound = (b - rest) / a[var]
            if a[var] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        x[var] = _pick(lo, hi)
    # eliminated last-to-first, so assigned first-to-last: the stage used for
    # ``var`` only involves variables 0..var.
    return x


def _pick(lo: Optional[Fraction], hi: Optional[Fraction]) -> Fraction:
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return Fraction(min(0, hi.__floor__()))
    if hi is None:
        return Fraction(max(0, -((-lo).__floor__())))
    c = Fraction(-((-lo).__floor__()))
    if c <= hi:
        if lo <= 0 <= hi:
            return Fraction(0)
        return c
    return (lo + hi) / 2


def _dedupe(cons):
    best = {}
    for a, b in cons:
        if all(x == 0 for x in a):
            # only the tightest constant constraint 0 >= b matters
            cur = best.get(None)
            if cur is None or b > cur[1]:
                best[None] = (a, b)
            continue
        scale = next(abs(x) for x in a if x != 0)
        na = tuple(x / scale for x in a)
        nb = b / scale
        cur = best.get(na)
        if cur is None or nb > cur[1]:
            best[na] = (list(na), nb)
    return list(best.values())


def positive_kernel_point(A: Matrix, ncols: Optional[int] = None) -> Optional[list[int]]:
    """A strictly positive primitive integer x with A x = 0, or None."""
    _, c = shape(A, ncols)
    N = kernel_basis(A, c) if A else identity(c)
    if not N:
        return None
    d = len(N)
    # x = sum_k y_k N_k ;  require x_i >= 1
    G = [[N[k][i] for k in range(d)] for i in range(c)]
    y = fm_feasible(G, [1] * c, d)
    if y is None:
        return None
    x = [sum(y[k] * N[k][i] for k in range(d)) for i in range(c)]
    return primitive(x)
