"""Maximal admissible classes, the Υ function and triangles."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

from . import linalg
from .combinatorics import LineCombinatorics, Point
from .pencils import CombinatorialPencil, SearchOptions, enumerate_pencils


@dataclass(frozen=True)
class AdmissibleClass:
    matrix: tuple[tuple[int, ...], ...]   # saturated row HNF
    k: int
    pencil: CombinatorialPencil = field(compare=False)

    @classmethod
    def from_pencil(cls, pencil: CombinatorialPencil) -> "AdmissibleClass":
        return cls(pencil.key, pencil.k, pencil)

    @property
    def n(self) -> int:
        return self.pencil.n

    @property
    def kind(self) -> str:
        return "point" if self.pencil.is_point_type else "pencil"

    @property
    def point(self) -> Optional[Point]:
        return self.pencil.base_points[0] if self.pencil.is_point_type else None

    @property
    def support(self) -> tuple[int, ...]:
        return self.pencil.support

    @cached_property
    def kernel(self) -> list[list[int]]:
        """Integer kernel in Z^n (always contains the all-ones vector)."""
        return linalg.integer_kernel(self.matrix, self.n)

    def label(self) -> str:
        if self.kind == "point":
            return "P{" + ",".join(map(str, self.point)) + "}"
        return "C{" + ",".join(map(str, self.support)) + "}"


def admissible_classes(c: LineCombinatorics, options: SearchOptions = SearchOptions()) -> list[AdmissibleClass]:
    return [AdmissibleClass.from_pencil(P) for P in enumerate_pencils(c, options)]


def upsilon(S: Iterable[AdmissibleClass]) -> int:
    """Codimension in H of the common kernel of the classes in S."""
    rows = []
    members = set(S)
    if not members:
        raise ValueError("Υ is only evaluated on nonempty sets of classes")
    n = next(iter(members)).n
    for a in members:
        rows.extend(a.matrix)
    return linalg.rank(rows, n)


def is_triangle(a: AdmissibleClass, b: AdmissibleClass, c: AdmissibleClass) -> bool:
    if len({a, b, c}) != 3:
        raise ValueError("a triangle needs three distinct classes")
    return upsilon((a, b, c)) == (a.k - 1) + (b.k - 1) + (c.k - 1) - 1


@dataclass(frozen=True)
class TriangleCensus:
    classes: tuple[AdmissibleClass, ...]
    scope: tuple[int, ...]                       # class indices taking part
    triangles: tuple[tuple[int, int, int], ...]
    levels: dict[tuple[int, int], tuple[tuple[int, ...], ...]] = field(default_factory=dict)

    @cached_property
    def counts(self) -> dict[int, int]:
        out = {i: 0 for i in self.scope}
        for t in self.triangles:
            for i in t:
                out[i] += 1
        return out

    @cached_property
    def triangle_set(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(t) for t in self.triangles)

    def is_triangle(self, i: int, j: int, l: int) -> bool:
        return frozenset((i, j, l)) in self.triangle_set


def p_sets(classes: Sequence[AdmissibleClass], size: int, value: int) -> tuple[tuple[int, ...], ...]:
    """Index sets S with #S = size and Υ(S) = value."""
    return tuple(S for S in combinations(range(len(classes)), size)
                 if upsilon(classes[i] for i in S) == value)


def triangle_census(classes: Sequence[AdmissibleClass], all_k: bool = False,
                    levels: Iterable[tuple[int, int]] = ()) -> TriangleCensus:
    """Triangles among the 3-classes (or among all classes with ``all_k``)."""
    classes = tuple(classes)
    scope = tuple(i for i, a in enumerate(classes) if all_k or a.k == 3)
    # a pair inside a triangle loses at most one dimension: Υ(a,b) >= Υa + Υb - 1
    near = {i: set() for i in scope}
    for i, j in combinations(scope, 2):
        if upsilon((classes[i], classes[j])) >= classes[i].k + classes[j].k - 3:
            near[i].add(j)
            near[j].add(i)
    tris = tuple((i, j, l) for i, j in combinations(scope, 2) if j in near[i]
                 for l in sorted(near[i] & near[j]) if l > j
                 and is_triangle(classes[i], classes[j], classes[l]))
    lv = {(i, j): p_sets(classes, i, j) for i, j in levels}
    return TriangleCensus(classes, scope, tris, lv)


ALIGNED, NOT_ALIGNED, UNDETERMINED = "aligned", "not aligned", "undetermined"


def collinearity_from_triangles(points: Sequence[AdmissibleClass]) -> dict[tuple[int, int, int], str]:
    """Decide alignment of triples of multiple points from triangles alone.

    If some fourth point forms a triangle with every pair of the triple, the
    triple is aligned exactly when it is not itself a triangle; otherwise the
    triple is left undetermined.
    """
    if any(a.kind != "point" for a in points):
        raise ValueError("alignment is only defined for point-type classes")
    m = len(points)
    tri = {t for t in combinations(range(m), 3) if is_triangle(*(points[i] for i in t))}

    def is_tri(*idx):
        return tuple(sorted(idx)) in tri

    out = {}
    for t in combinations(range(m), 3):
        i, j, l = t
        witness = any(is_tri(i, j, q) and is_tri(i, l, q) and is_tri(j, l, q)
                      for q in range(m) if q not in t)
        if not witness:
            out[t] = UNDETERMINED
        else:
            out[t] = NOT_ALIGNED if t in tri else ALIGNED
    return out
