"""Degree 1 and 2 of the Orlik-Solomon algebra over Q, and the module R.

Conventions
-----------
* Degree 1 elements are coordinate vectors ``(a_1, ..., a_n)`` in the
  generators x_1..x_n with coordinate sum zero.
* The degree 2 basis is ``x_i ∧ x_j`` where l_i is the first (smallest) line
  through l_i ∩ l_j.
* ``H ∧ H`` coordinates use the basis ``e_i ∧ e_j`` (i < j <= n-1) obtained by
  eliminating ``e_n = -e_1 - ... - e_{n-1}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

from . import linalg
from .combinatorics import LineCombinatorics
from .errors import RowSumNonZero

Pair = tuple[int, int]


@dataclass(frozen=True)
class A1Element:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if sum(self.coords) != 0:
            raise RowSumNonZero(f"degree-1 element {self.coords} does not sum to zero")

    @classmethod
    def of(cls, v: Sequence) -> "A1Element":
        return cls(tuple(Fraction(x) for x in v))


@dataclass(frozen=True)
class OS2Element:
    """Sparse degree-2 element; only nonzero coefficients are kept."""

    coeffs: tuple[tuple[Pair, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, d: dict) -> "OS2Element":
        return cls(tuple(sorted((k, Fraction(v)) for k, v in d.items() if v != 0)))

    def as_dict(self) -> dict[Pair, Fraction]:
        return dict(self.coeffs)

    def __getitem__(self, pair: Pair) -> Fraction:
        return self.as_dict().get(pair, Fraction(0))

    def __add__(self, other: "OS2Element") -> "OS2Element":
        d = self.as_dict()
        for k, v in other.coeffs:
            d[k] = d.get(k, 0) + v
        return OS2Element.from_dict(d)

    def __neg__(self) -> "OS2Element":
        return OS2Element(tuple((k, -v) for k, v in self.coeffs))

    def __sub__(self, other: "OS2Element") -> "OS2Element":
        return self + (-other)

    def scale(self, s) -> "OS2Element":
        return OS2Element.from_dict({k: s * v for k, v in self.coeffs})

    def is_zero(self) -> bool:
        return not self.coeffs


def os2_basis(c: LineCombinatorics) -> list[Pair]:
    return sorted((p[0], j) for p in c.all_points for j in p[1:])


def reduce_wedge(c: LineCombinatorics, i: int, j: int) -> OS2Element:
    """``x_i ∧ x_j`` written in the first-line basis."""
    if i == j:
        raise ValueError("x_i ∧ x_i is zero; pass distinct lines")
    if i > j:
        return -reduce_wedge(c, j, i)
    f = c.point_of(i, j).first
    if f == i:
        return OS2Element.from_dict({(i, j): 1})
    # x_i ∧ x_j = x_f ∧ x_j - x_f ∧ x_i
    return OS2Element.from_dict({(f, j): 1, (f, i): -1})


def _vec(a) -> Sequence:
    return a.coords if isinstance(a, A1Element) else a


def wedge(c: LineCombinatorics, a, b) -> OS2Element:
    """Product of two degree-1 elements.

    At a point p with first line l_f, the coefficient on ``x_f ∧ x_j`` is
    ``b_j * sum_p(a) - a_j * sum_p(b)``.
    """
    a, b = _vec(a), _vec(b)
    out = {}
    for p in c.all_points:
        sa = sum(a[k - 1] for k in p)
        sb = sum(b[k - 1] for k in p)
        for j in p[1:]:
            v = b[j - 1] * sa - a[j - 1] * sb
            if v:
                out[(p[0], j)] = v
    return OS2Element.from_dict(out)


def wedge_by_expansion(c: LineCombinatorics, a, b) -> OS2Element:
    """Same product, expanded bilinearly through ``reduce_wedge``."""
    a, b = _vec(a), _vec(b)
    total = OS2Element()
    for s, t in combinations(c.lines, 2):
        coef = a[s - 1] * b[t - 1] - a[t - 1] * b[s - 1]
        if coef:
            total = total + reduce_wedge(c, s, t).scale(coef)
    return total


def _check_rows(M) -> None:
    for row in M:
        if sum(row) != 0:
            raise RowSumNonZero(f"row {list(row)} does not sum to zero")


def is_epimorphism(M, ncols: int) -> bool:
    inv = linalg.smith_invariants(M, ncols)
    return len(inv) == len(M) and all(d == 1 for d in inv)


def is_admissible(c: LineCombinatorics, M) -> bool:
    """Admissibility through pairwise orthogonality of the rows in degree 2."""
    _check_rows(M)
    if len(M) < 2 or not is_epimorphism(M, c.n):
        return False
    return all(wedge(c, M[r], M[s]).is_zero() for r, s in combinations(range(len(M)), 2))


# ---------------------------------------------------------------------------
# H ∧ H and the relation module


@lru_cache(maxsize=None)
def hh_index(n: int) -> dict[Pair, int]:
    """Coordinate index of ``e_i ∧ e_j`` (1 <= i < j <= n-1)."""
    return {pair: k for k, pair in enumerate(combinations(range(1, n), 2))}


def h_coords(n: int, line: int) -> list[int]:
    """``e_line`` in the basis e_1..e_{n-1} of H."""
    if line == n:
        return [-1] * (n - 1)
    v = [0] * (n - 1)
    v[line - 1] = 1
    return v


def hh_wedge(u: Sequence[int], v: Sequence[int]) -> list[int]:
    m = len(u)
    return [u[i] * v[j] - u[j] * v[i] for i, j in combinations(range(m), 2)]


def relation_generators(c: LineCombinatorics, drop_first: bool = False) -> list[list[int]]:
    """``e_j ∧ sum_{i in p} e_i`` for every point p and line l_j in p.

    With ``drop_first`` the generator of the first line of each point is
    omitted; it is minus the sum of the others.
    """
    n = c.n
    gens = []
    for p in c.all_points:
        s = [sum(col) for col in zip(*(h_coords(n, i) for i in p))] if n > 1 else []
        for j in (p[1:] if drop_first else p):
            gens.append(hh_wedge(h_coords(n, j), s))
    return gens


def quotient_basis(c: LineCombinatorics) -> list[Pair]:
    """Pairs (i, j), i < j, where neither line is the first through l_i ∩ l_j."""
    return sorted((i, j) for p in c.points for i, j in combinations(p[1:], 2))


@dataclass(frozen=True)
class RelationModule:
    n: int
    generators: tuple[tuple[int, ...], ...]
    quotient_basis: tuple[Pair, ...]
    rank: int
    invariants: tuple[int, ...] = field(default=())

    @property
    def ambient_rank(self) -> int:
        return (self.n - 1) * (self.n - 2) // 2

    @property
    def saturated(self) -> bool:
        return all(d == 1 for d in self.invariants)


def relation_module(c: LineCombinatorics) -> RelationModule:
    gens = relation_generators(c, drop_first=True)
    m = (c.n - 1) * (c.n - 2) // 2
    inv = linalg.smith_invariants(gens, m) if m and gens else []
    return RelationModule(c.n, tuple(map(tuple, gens)), tuple(quotient_basis(c)),
                          len(inv), tuple(inv))


def alpha_wedge_alpha(M, x: Sequence[int]) -> list:
    """Evaluate ``α ∧ α`` on an element of H ∧ H given in ``hh_index`` coordinates."""
    k1 = len(M)
    n = len(M[0])
    idx = hh_index(n)
    out = [0] * (k1 * (k1 - 1) // 2)
    for (i, j), pos in idx.items():
        xv = x[pos]
        if not xv:
            continue
        for t, (s, u) in enumerate(combinations(range(k1), 2)):
            out[t] += xv * (M[s][i - 1] * M[u][j - 1] - M[u][i - 1] * M[s][j - 1])
    return out


def is_admissible_via_relations(c: LineCombinatorics, M) -> bool:
    """Admissibility by checking that ``α ∧ α`` kills every generator of R."""
    _check_rows(M)
    if len(M) < 2 or not is_epimorphism(M, c.n):
        return False
    return all(not any(alpha_wedge_alpha(M, g)) for g in relation_generators(c))


# ---------------------------------------------------------------------------
# resonance


def wedge_matrix(c: LineCombinatorics, a) -> list[list[Fraction]]:
    """Matrix of ``b -> a ∧ b`` in the first-line basis (one row per pair)."""
    a = _vec(a)
    rows = []
    for p in c.all_points:
        sa = sum(a[k - 1] for k in p)
        for j in p[1:]:
            # coefficient = b_j * sa - a_j * sum_p b
            row = [Fraction(0)] * c.n
            row[j - 1] += sa
            for k in p:
                row[k - 1] -= a[j - 1]
            rows.append(row)
    return rows


def resonance_partner(c: LineCombinatorics, a) -> Optional[list[int]]:
    """Some b outside span(a) with ``a ∧ b = 0`` and sum zero, or None."""
    v = _vec(a)
    if all(x == 0 for x in v):
        raise ValueError("the zero element has no resonance question")
    if sum(v) != 0:
        raise RowSumNonZero("degree-1 elements sum to zero")
    system = wedge_matrix(c, v) + [[1] * c.n]
    for b in linalg.kernel_basis(system, c.n):
        if linalg.rank([list(v), b], c.n) == 2:
            return b
    return None


resonance_membership = resonance_partner
