"""Line combinatorics: lines 1..n and the multiple points through them.

Only points of multiplicity >= 3 are stored.  Any two lines that do not share
a stored point meet in an implicit double point.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .errors import BadIndex, DuplicatePair, PointTooSmall, ValidationError

Point = tuple[int, ...]


@dataclass(frozen=True)
class PointRef:
    """Handle for ``l_i ∩ l_j``: a stored point, or an implicit double."""

    lines: Point
    index: Optional[int] = None  # position in ``points`` when stored

    @property
    def is_stored(self) -> bool:
        return self.index is not None

    @property
    def first(self) -> int:
        return self.lines[0]

    def __len__(self) -> int:
        return len(self.lines)


@dataclass(frozen=True)
class LineCombinatorics:
    n: int
    points: tuple[Point, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("a combinatorics needs at least one line")
        seen: dict[tuple[int, int], Point] = {}
        for p in self.points:
            if len(set(p)) != len(p) or list(p) != sorted(p):
                raise ValidationError(f"point {p} is not a strictly increasing index list")
            if any(not 1 <= i <= self.n for i in p):
                raise BadIndex(f"point {p} uses a line outside 1..{self.n}")
            if len(p) < 3:
                raise PointTooSmall(f"point {p} has fewer than 3 lines; doubles are implicit")
            for pair in combinations(p, 2):
                if pair in seen:
                    raise DuplicatePair(f"points {seen[pair]} and {p} share lines {pair}")
                seen[pair] = p
        if list(self.points) != sorted(self.points):
            raise ValidationError("points must be sorted; use validate()")

    # -- lookup tables -----------------------------------------------------

    @cached_property
    def _pair_table(self) -> dict[tuple[int, int], int]:
        table = {}
        for idx, p in enumerate(self.points):
            for pair in combinations(p, 2):
                table[pair] = idx
        return table

    @cached_property
    def lines(self) -> range:
        return range(1, self.n + 1)

    def point_of(self, i: int, j: int) -> PointRef:
        if i == j:
            raise ValueError("a line does not meet itself in a point")
        a, b = min(i, j), max(i, j)
        if not (1 <= a and b <= self.n):
            raise BadIndex(f"lines {i}, {j} outside 1..{self.n}")
        idx = self._pair_table.get((a, b))
        if idx is None:
            return PointRef((a, b))
        return PointRef(self.points[idx], idx)

    @cached_property
    def all_points(self) -> tuple[Point, ...]:
        """Stored points and implicit doubles, sorted lexicographically."""
        doubles = [pair for pair in combinations(self.lines, 2) if pair not in self._pair_table]
        return tuple(sorted(list(self.points) + doubles))

    @cached_property
    def doubles(self) -> tuple[Point, ...]:
        return tuple(p for p in self.all_points if len(p) == 2)

    def points_on(self, line: int) -> tuple[Point, ...]:
        return tuple(p for p in self.all_points if line in p)

    def multiplicity_vector(self, line: int) -> tuple[int, ...]:
        return tuple(sorted((len(p) for p in self.points if line in p), reverse=True))

    def same_point(self, i: int, j: int, k: int) -> bool:
        """True iff three distinct lines are concurrent."""
        a = self._pair_table.get((min(i, j), max(i, j)))
        return a is not None and a == self._pair_table.get((min(i, k), max(i, k)))

    def relabel(self, perm: dict[int, int]) -> "LineCombinatorics":
        """Image under the line bijection ``perm`` (line -> new index)."""
        return validate(self.n, [[perm[i] for i in p] for p in self.points])

    def __str__(self) -> str:
        pts = " ".join("{" + ",".join(map(str, p)) + "}" for p in self.points)
        return f"LineCombinatorics(n={self.n}, points={pts or '-'})"


def validate(n: int, points: Iterable[Sequence[int]]) -> LineCombinatorics:
    """Build a combinatorics from a line count and a list of multiple points.

    Points are normalized (sorted, deduplicated list order); genuine problems
    raise ``BadIndex``, ``PointTooSmall`` or ``DuplicatePair``.
    """
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"line count must be a positive integer, got {n!r}")
    normalized = []
    for raw in points:
        p = tuple(int(i) for i in raw)
        if len(set(p)) != len(p):
            raise ValidationError(f"point {list(raw)} repeats a line")
        normalized.append(tuple(sorted(p)))
    return LineCombinatorics(n, tuple(sorted(normalized)))


@dataclass(frozen=True)
class Subcombinatorics:
    """The combinatorics induced on a subset of lines."""

    parent: LineCombinatorics
    support: tuple[int, ...]
    induced_points: tuple[Point, ...]  # every p ∩ S with at least 2 lines

    @cached_property
    def index(self) -> dict[int, int]:
        """Parent line -> line index in the re-indexed combinatorics."""
        return {l: k + 1 for k, l in enumerate(self.support)}

    @cached_property
    def combinatorics(self) -> LineCombinatorics:
        idx = self.index
        return validate(len(self.support),
                        [[idx[l] for l in p] for p in self.induced_points if len(p) >= 3])

    @property
    def multiple_points(self) -> tuple[Point, ...]:
        return tuple(p for p in self.induced_points if len(p) >= 3)


def restrict(c: LineCombinatorics, support: Iterable[int]) -> Subcombinatorics:
    S = tuple(sorted(set(support)))
    if not S:
        raise ValueError("support must be nonempty")
    if any(not 1 <= l <= c.n for l in S):
        raise BadIndex(f"support {S} leaves 1..{c.n}")
    Sset = set(S)
    induced = set()
    for p in c.all_points:
        q = tuple(l for l in p if l in Sset)
        if len(q) >= 2:
            induced.add(q)
    return Subcombinatorics(c, S, tuple(sorted(induced)))


# ---------------------------------------------------------------------------
# isomorphisms


def isomorphisms(a: LineCombinatorics, b: LineCombinatorics, first_only: bool = False) -> Iterator[dict[int, int]]:
    """Line bijections a -> b that map stored points onto stored points.

    Backtracking over lines in order; candidate images are restricted to
    lines with the same multiplicity vector and checked against every
    already-placed line.
    """
    if a.n != b.n or sorted(map(len, a.points)) != sorted(map(len, b.points)):
        return
    inv_a = {l: a.multiplicity_vector(l) for l in a.lines}
    inv_b = {l: b.multiplicity_vector(l) for l in b.lines}
    if sorted(inv_a.values()) != sorted(inv_b.values()):
        return
    # most constrained lines first
    order = sorted(a.lines, key=lambda l: (-len(inv_a[l]), -sum(inv_a[l]), l))
    ta, tb = a._pair_table, b._pair_table

    def pid(table, i, j):
        return table.get((i, j) if i < j else (j, i), -1 - min(i, j) * 10_000 - max(i, j))

    def size(c, table, i, j):
        k = table.get((i, j) if i < j else (j, i))
        return 2 if k is None else len(c.points[k])

    mapping: dict[int, int] = {}
    used: set[int] = set()
    placed: list[int] = []

    def extend(depth):
        if depth == len(order):
            yield dict(mapping)
            return
        x = order[depth]
        for y in b.lines:
            if y in used or inv_b[y] != inv_a[x]:
                continue
            ok = True
            for u in placed:
                if size(a, ta, x, u) != size(b, tb, y, mapping[u]):
                    ok = False
                    break
            if ok:
                for u, v in combinations(placed, 2):
                    same_a = pid(ta, x, u) == pid(ta, x, v)
                    same_b = pid(tb, y, mapping[u]) == pid(tb, y, mapping[v])
                    if same_a != same_b:
                        ok = False
                        break
            if not ok:
                continue
            mapping[x] = y
            used.add(y)
            placed.append(x)
            yield from extend(depth + 1)
            placed.pop()
            used.discard(y)
            del mapping[x]

    for iso in extend(0):
        yield iso
        if first_only:
            return


def find_isomorphism(a: LineCombinatorics, b: LineCombinatorics) -> Optional[dict[int, int]]:
    return next(isomorphisms(a, b, first_only=True), None)


def automorphisms(c: LineCombinatorics) -> list[tuple[int, ...]]:
    """All automorphisms as tuples ``perm`` with ``perm[i-1]`` the image of line i.

    Sorted lexicographically, so the identity comes first.
    """
    return sorted(tuple(m[i] for i in c.lines) for m in isomorphisms(c, c))
