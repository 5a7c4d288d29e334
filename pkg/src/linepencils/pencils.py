"""Admissible maps <-> combinatorial pencils, and enumeration of maximal classes.

An admissible map is stored as its ``(k-1) x n`` integer matrix M whose
columns are the images of e_1..e_n.  Its class is the row lattice of M, which
is saturated because M is onto; the canonical key of a class is the row HNF.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd
from functools import reduce
from typing import Iterable, Optional, Sequence

from . import linalg
from .combinatorics import LineCombinatorics, Point
from .errors import (BadSignPattern, EmptyChi, NotAdmissible, NotIndecomposable,
                     SearchBoundExceeded)
from .os_algebra import is_admissible

ClassKey = tuple[tuple[int, ...], ...]


def class_key(M, ncols: int) -> ClassKey:
    """Canonical identity of the class of M: HNF of the saturated row lattice."""
    return tuple(tuple(r) for r in linalg.saturate(M, ncols))


# ---------------------------------------------------------------------------
# pencils


@dataclass(frozen=True)
class CombinatorialPencil:
    n: int
    fibers: tuple[tuple[int, ...], ...]          # sorted by smallest line
    weights: tuple[tuple[int, int], ...]         # (line, weight) over the support
    base_points: tuple[Point, ...]               # stored points of the parent

    @property
    def k(self) -> int:
        return len(self.fibers)

    @cached_property
    def weight(self) -> dict[int, int]:
        return dict(self.weights)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(l for F in self.fibers for l in F))

    @property
    def is_point_type(self) -> bool:
        return len(self.base_points) == 1

    def fiber_of(self, line: int) -> Optional[int]:
        for idx, F in enumerate(self.fibers):
            if line in F:
                return idx
        return None

    def fiber_sums(self, p: Sequence[int]) -> list[int]:
        w = self.weight
        return [sum(w[l] for l in p if l in F) for F in self.fibers]

    def fiber_totals(self) -> list[int]:
        w = self.weight
        return [sum(w[l] for l in F) for F in self.fibers]

    def matrix(self) -> list[list[int]]:
        return admissible_from_pencil(self)

    @cached_property
    def key(self) -> ClassKey:
        return class_key(self.matrix(), self.n)

    def describe(self) -> str:
        w = self.weight
        parts = []
        for F in self.fibers:
            parts.append("{" + ",".join(f"{l}" + (f"^{w[l]}" if w[l] != 1 else "") for l in F) + "}")
        kind = "point" if self.is_point_type else "pencil"
        return f"{kind} k={self.k} " + " ".join(parts)


def check_pencil(c: LineCombinatorics, pencil: CombinatorialPencil) -> list[str]:
    """Problems with ``pencil`` as a combinatorial pencil on its support (empty if valid)."""
    problems = []
    if pencil.k < 3:
        problems.append("fewer than 3 fibers")
    S = set(pencil.support)
    if any(w <= 0 for _, w in pencil.weights):
        problems.append("non-positive weight")
    if set(pencil.weight) != S:
        problems.append("weights not defined exactly on the support")
    base = []
    for p in c.all_points:
        T = [l for l in p if l in S]
        if len(T) < 2:
            continue
        hit = {pencil.fiber_of(l) for l in T}
        if len(hit) == 1:
            continue
        sums = pencil.fiber_sums(T)
        if len(hit) != pencil.k or len(set(sums)) != 1:
            problems.append(f"point {p} is neither inside a fiber nor a base point")
        base.append(p)
    if tuple(base) != pencil.base_points:
        problems.append(f"base points {pencil.base_points} differ from derived {tuple(base)}")
    return problems


def admissible_from_pencil(pencil: CombinatorialPencil) -> list[list[int]]:
    """``α(e_l) = w(l) v_F`` with v_1..v_{k-1} standard and v_k = -(v_1+...+v_{k-1})."""
    k = pencil.k
    M = [[0] * pencil.n for _ in range(k - 1)]
    w = pencil.weight
    for idx, F in enumerate(pencil.fibers):
        for l in F:
            if idx < k - 1:
                M[idx][l - 1] = w[l]
            else:
                for r in range(k - 1):
                    M[r][l - 1] = -w[l]
    return M


def point_pencil(c: LineCombinatorics, p: Point) -> CombinatorialPencil:
    return CombinatorialPencil(c.n, tuple((l,) for l in p), tuple((l, 1) for l in p), (tuple(p),))


# ---------------------------------------------------------------------------
# the Q matrix and Vinberg types


@dataclass(frozen=True)
class VinbergResult:
    kind: str                      # "Fin", "Aff" or "Ind"
    certificate: tuple[int, ...]   # u > 0 with Bu > 0, Bu = 0, Bu < 0 respectively

    def verify(self, B) -> bool:
        u = self.certificate
        if not u or any(x <= 0 for x in u):
            return False
        Bu = linalg.matvec(B, u)
        if self.kind == "Fin":
            return all(x > 0 for x in Bu) and linalg.det(B) != 0
        if self.kind == "Aff":
            return all(x == 0 for x in Bu) and len(B) - linalg.rank(B) == 1
        return all(x < 0 for x in Bu)


def _check_block(B) -> None:
    m = len(B)
    if any(len(row) != m for row in B):
        raise BadSignPattern("block is not square")
    for i in range(m):
        for j in range(m):
            if i != j and B[i][j] > 0:
                raise BadSignPattern(f"positive off-diagonal entry at ({i}, {j})")
            if (B[i][j] == 0) != (B[j][i] == 0):
                raise BadSignPattern(f"zero pattern not symmetric at ({i}, {j})")
    seen, stack = {0}, [0]
    while stack:
        i = stack.pop()
        for j in range(m):
            if j not in seen and B[i][j] != 0:
                seen.add(j)
                stack.append(j)
    if len(seen) != m:
        raise NotIndecomposable("block splits into independent pieces")


def _positive_with_sign(B, sign: int) -> Optional[list[int]]:
    """u >= 1 with sign * B u >= 1, scaled to a primitive integer vector."""
    m = len(B)
    G = [[int(i == j) for j in range(m)] for i in range(m)]
    G += [[sign * x for x in row] for row in B]
    u = linalg.fm_feasible(G, [1] * (2 * m), m)
    return None if u is None else linalg.primitive(u)


def vinberg_clauses(B) -> dict[str, Optional[list[int]]]:
    """Evaluate each of the three clauses independently; value is a witness or None."""
    _check_block(B)
    m = len(B)
    out: dict[str, Optional[list[int]]] = {}
    u = _positive_with_sign(B, 1)
    out["Fin"] = u if u is not None and linalg.det(B) != 0 else None
    corank = m - linalg.rank(B)
    out["Aff"] = linalg.positive_kernel_point(B) if corank == 1 else None
    out["Ind"] = _positive_with_sign(B, -1)
    return out


def vinberg_classify(B) -> VinbergResult:
    _check_block(B)
    m = len(B)
    if m - linalg.rank(B) == 1:
        u = linalg.positive_kernel_point(B)
        if u is not None:
            return VinbergResult("Aff", tuple(u))
    if linalg.det(B) != 0:
        u = _positive_with_sign(B, 1)
        if u is not None:
            return VinbergResult("Fin", tuple(u))
    u = _positive_with_sign(B, -1)
    if u is not None:
        return VinbergResult("Ind", tuple(u))
    raise AssertionError(f"block {B} fits none of Fin/Aff/Ind")


@dataclass(frozen=True)
class QDecomposition:
    support: tuple[int, ...]
    chi: tuple[Point, ...]
    J: tuple[tuple[int, ...], ...]        # |chi| x |support| incidence
    Q: tuple[tuple[int, ...], ...]
    partition: tuple[tuple[int, ...], ...]
    blocks: tuple[tuple[tuple[int, ...], ...], ...]
    types: tuple[VinbergResult, ...]

    def block_of(self, line: int) -> int:
        return next(i for i, F in enumerate(self.partition) if line in F)


def build_Q(c: LineCombinatorics, support: Iterable[int], chi: Iterable[Sequence[int]]) -> QDecomposition:
    S = tuple(sorted(set(support)))
    chi = tuple(tuple(p) for p in chi)
    if not chi:
        raise EmptyChi("the base point set is empty")
    pos = {l: i for i, l in enumerate(S)}
    J = []
    for p in chi:
        T = [l for l in p if l in pos]
        if len(T) < 2:
            raise ValueError(f"point {p} meets the support in fewer than 2 lines")
        J.append(tuple(int(l in T) for l in S))
    m = len(S)
    Q = [[sum(J[r][i] * J[r][j] for r in range(len(J))) - 1 for j in range(m)] for i in range(m)]
    if any(Q[i][i] < 1 for i in range(m)):
        raise ValueError("some line lies on fewer than 2 base points (point-type case)")
    # components of the graph joining lines that meet outside chi
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in combinations(range(m), 2):
        if Q[i][j] == -1:
            parent[find(i)] = find(j)
    comps: dict[int, list[int]] = {}
    for i in range(m):
        comps.setdefault(find(i), []).append(i)
    groups = sorted(comps.values(), key=lambda g: g[0])
    partition = tuple(tuple(S[i] for i in g) for g in groups)
    blocks = tuple(tuple(tuple(Q[i][j] for j in g) for i in g) for g in groups)
    types = tuple(vinberg_classify(B) for B in blocks)
    return QDecomposition(S, chi, tuple(J), tuple(map(tuple, Q)), partition, blocks, types)


# ---------------------------------------------------------------------------
# admissible map -> pencil


def chi_of(c: LineCombinatorics, M) -> tuple[Point, ...]:
    """Points meeting the support in >= 2 lines whose column sum vanishes."""
    if not M or all(all(x == 0 for x in row) for row in M):
        raise NotAdmissible("the zero map is not admissible")
    support = {j + 1 for j in range(c.n) if any(row[j] for row in M)}
    out = []
    for p in c.all_points:
        if sum(1 for l in p if l in support) < 2:
            continue
        if all(sum(row[l - 1] for l in p) == 0 for row in M):
            out.append(p)
    return tuple(out)


def _equal_sum_weights(fibers, base_points, block_weights) -> Optional[list[Fraction]]:
    """Scale each fiber's weight vector so all base points see equal fiber sums."""
    k = len(fibers)
    rows = []
    for p in base_points:
        sums = [sum(block_weights[l] for l in p if l in F) for F in fibers]
        for a in range(k - 1):
            row = [0] * k
            row[a], row[a + 1] = sums[a], -sums[a + 1]
            rows.append(row)
    if linalg.rank(rows, k) != k - 1:
        return None  # weights not determined up to scale: not a maximal pencil
    lam = linalg.positive_kernel_point(rows, k)
    return lam


def _pencil_from_decomposition(c: LineCombinatorics, dec: QDecomposition,
                               block_weights: dict[int, int]) -> Optional[CombinatorialPencil]:
    lam = _equal_sum_weights(dec.partition, dec.chi, block_weights)
    if lam is None:
        return None
    w = {}
    for F, s in zip(dec.partition, lam):
        for l in F:
            w[l] = block_weights[l] * s
    g = reduce(gcd, w.values(), 0)
    weights = tuple(sorted((l, x // g) for l, x in w.items()))
    return CombinatorialPencil(c.n, dec.partition, weights, dec.chi)


def pencil_from_admissible(c: LineCombinatorics, M) -> CombinatorialPencil:
    """The combinatorial pencil carried by the support of an admissible map."""
    if not is_admissible(c, M):
        raise NotAdmissible("matrix is not admissible for this combinatorics")
    chi = chi_of(c, M)
    if len(chi) == 1:
        p = chi[0]
        support = [j + 1 for j in range(c.n) if any(row[j] for row in M)]
        return point_pencil(c, tuple(l for l in p if l in support))
    dec = build_Q(c, [j + 1 for j in range(c.n) if any(row[j] for row in M)], chi)
    block_weights = {}
    for F, typ in zip(dec.partition, dec.types):
        if typ.kind != "Aff":
            raise AssertionError(f"block {F} of an admissible map is {typ.kind}")
        cols = {l: [row[l - 1] for row in M] for l in F}
        v = linalg.primitive(cols[F[0]])
        ws = {}
        for l in F:
            # column(l) = w_l * v_F
            ratio = {Fraction(a, b) for a, b in zip(cols[l], v) if b}
            if len(ratio) != 1 or any(b == 0 and a != 0 for a, b in zip(cols[l], v)):
                raise AssertionError(f"columns of fiber {F} are not proportional")
            ws[l] = ratio.pop()
        if not (all(x > 0 for x in ws.values()) or all(x < 0 for x in ws.values())):
            raise AssertionError(f"weights on fiber {F} change sign")
        sign = 1 if next(iter(ws.values())) > 0 else -1
        prim = linalg.primitive([sign * ws[l] for l in F])
        block_weights.update(zip(F, prim))
    pencil = _pencil_from_decomposition(c, dec, block_weights)
    if pencil is None:
        raise AssertionError("weight system of an admissible map has no positive solution")
    return pencil


# ---------------------------------------------------------------------------
# enumeration


@dataclass(frozen=True)
class SearchOptions:
    max_fibers: int = 8
    max_lines: int = 16
    include_nonmaximal: bool = False
    workers: int = 0            # 0: read PENCIL_THREADS, default 1


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("PENCIL_THREADS", "1")))
    except ValueError:
        return 1


class _Search:
    """Backtracking over lines: each line is excluded or put in a fiber.

    Fibers get canonical labels (a new fiber always takes the next label).
    When the last line of a point is decided, the point must lie inside one
    fiber or meet every fiber; a point meeting several fibers pins the fiber
    count.  Every support line must keep at least two possible base points.
    """

    def __init__(self, c: LineCombinatorics, max_fibers: int):
        self.c = c
        self.n = c.n
        self.K = max_fibers
        self.points = [p for p in c.all_points]
        self.closing = {l: [] for l in c.lines}     # points completed when line l is decided
        self.through = {l: [] for l in c.lines}     # indices of multiple points on l
        for idx, p in enumerate(self.points):
            self.closing[max(p)].append(idx)
            if len(p) >= 3:
                for l in p:
                    self.through[l].append(idx)
        self.assign = [None] * (self.n + 1)
        self.results: list[tuple[tuple[int, ...], ...]] = []

    def run(self, prefix: Sequence[int] = ()):
        self.assign = [None] * (self.n + 1)
        state = (0, None, frozenset())
        for l, a in enumerate(prefix, 1):
            state = self._place(l, a, *state)
            if state is None:
                return []
        self._extend(len(prefix) + 1, *state)
        return self.results

    def prefixes(self, depth: int) -> list[tuple[int, ...]]:
        out = []

        def rec(l, prefix, nfib, frozen, base):
            if l > depth or l > self.n:
                out.append(tuple(prefix))
                return
            for a in self._options(nfib, frozen):
                st = self._place(l, a, nfib, frozen, base)
                if st is not None:
                    prefix.append(a)
                    rec(l + 1, prefix, *st)
                    prefix.pop()
                self.assign[l] = None

        self.assign = [None] * (self.n + 1)
        rec(1, [], 0, None, frozenset())
        return out

    def _options(self, nfib, frozen):
        top = nfib + 1 if frozen is None and nfib < self.K else nfib
        return range(0, top + 1)

    def _place(self, l, a, nfib, frozen, base):
        assign = self.assign
        assign[l] = a
        if a > nfib:
            nfib = a
        for idx in self.closing[l]:
            p = self.points[idx]
            fibs = {assign[x] for x in p if assign[x]}
            if len(fibs) <= 1:
                continue
            if len(fibs) < 3 or len(fibs) != nfib or (frozen is not None and frozen != nfib):
                return None
            frozen = nfib
            base = base | {idx}
        if frozen is not None:
            # partially decided points already touching two fibers must be able to reach all
            for idx in self.through[l]:
                p = self.points[idx]
                fibs = {assign[x] for x in p if assign[x]}
                if len(fibs) >= 2:
                    open_lines = sum(1 for x in p if assign[x] is None)
                    if len(fibs) + open_lines < frozen:
                        return None
        # every support line among the lines just touched keeps >= 2 possible base points
        touched = {x for idx in self.closing[l] for x in self.points[idx]} | {l}
        for x in touched:
            if not assign[x]:
                continue
            possible = 0
            for idx in self.through[x]:
                p = self.points[idx]
                if idx in base or any(assign[y] is None for y in p):
                    possible += 1
                elif len({assign[y] for y in p if assign[y]}) >= 3:
                    possible += 1
            if possible < 2:
                return None
        return nfib, frozen, base

    def _extend(self, l, nfib, frozen, base):
        if l > self.n:
            if nfib >= 3 and frozen == nfib and len(base) >= 2:
                self.results.append((tuple(self.assign[1:]), tuple(sorted(base))))
            return
        for a in self._options(nfib, frozen):
            st = self._place(l, a, nfib, frozen, base)
            if st is not None:
                self._extend(l + 1, *st)
            self.assign[l] = None


def _search_task(args):
    c, max_fibers, prefix = args
    return _Search(c, max_fibers).run(prefix)


def _pencil_from_assignment(c: LineCombinatorics, assign: Sequence[int],
                            base_idx: Sequence[int]) -> Optional[CombinatorialPencil]:
    """Validate a fiber assignment through Q; None unless it is a pencil whose
    fibers are exactly the components of Q."""
    k = max(assign)
    fibers = [tuple(l for l in c.lines if assign[l - 1] == f) for f in range(1, k + 1)]
    support = [l for l in c.lines if assign[l - 1]]
    points = c.all_points
    chi = [points[i] for i in base_idx]
    try:
        dec = build_Q(c, support, chi)
    except ValueError:
        return None
    if sorted(dec.partition) != sorted(fibers):
        return None
    if any(t.kind != "Aff" for t in dec.types):
        return None
    block_weights = {}
    for F, t in zip(dec.partition, dec.types):
        block_weights.update(zip(F, t.certificate))
    return _pencil_from_decomposition(c, dec, block_weights)


def non_point_pencils(c: LineCombinatorics, options: SearchOptions = SearchOptions()) -> list[CombinatorialPencil]:
    """Pencils with >= 2 base points whose fibers are the components of Q."""
    if c.n > options.max_lines:
        raise SearchBoundExceeded(f"{c.n} lines exceeds the search bound {options.max_lines}")
    workers = options.workers or _default_workers()
    search = _Search(c, options.max_fibers)
    if workers > 1 and c.n > 4:
        tasks = [(c, options.max_fibers, pre) for pre in search.prefixes(min(4, c.n))]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            raw = [r for chunk in pool.map(_search_task, tasks) for r in chunk]
    else:
        raw = search.run()
    found = {}
    for assign, base_idx in raw:
        pencil = _pencil_from_assignment(c, assign, base_idx)
        if pencil is not None:
            found.setdefault(pencil.key, pencil)
    return sorted(found.values(), key=lambda P: (P.k, P.fibers))


def enumerate_pencils(c: LineCombinatorics, options: SearchOptions = SearchOptions()) -> list[CombinatorialPencil]:
    """One pencil per maximal admissible class.

    Point-type pencils come first (in point order), then the others by
    fiber count and fibers.  With ``include_nonmaximal`` the final
    row-space maximality filter is skipped.
    """
    point_type = [point_pencil(c, p) for p in c.points if len(p) <= options.max_fibers]
    others = non_point_pencils(c, options)
    candidates = point_type + others
    if options.include_nonmaximal:
        return candidates
    mats = [P.matrix() for P in candidates]
    keep = []
    for i, P in enumerate(candidates):
        dominated = any(
            j != i and candidates[j].k > P.k and linalg.rowspace_contains(mats[j], mats[i], c.n)
            for j in range(len(candidates)))
        if not dominated:
            keep.append(P)
    return keep
