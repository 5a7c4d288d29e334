"""Aut¹(H), induced permutations of admissible classes, and the rigidity check.

Matrix conventions
------------------
An automorphism φ of H is held as its matrix B in the basis e_1..e_{n-1}
(e_n = -e_1 - ... - e_{n-1} eliminated), column i being φ(e_i).  On the
generating system e_1..e_n the same φ is any n x n matrix A with column i a
representative of φ(e_i); such an A has all row sums equal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from itertools import combinations, product
from math import gcd
from typing import Optional, Sequence

from . import linalg
from .classes import AdmissibleClass, TriangleCensus, admissible_classes, triangle_census, upsilon
from .combinatorics import LineCombinatorics, automorphisms
from .errors import ClassNotPreserved, NotUnimodular, SearchBoundExceeded, ValidationError
from .os_algebra import hh_wedge, relation_generators, relation_module
from .pencils import SearchOptions, class_key

Perm = tuple[int, ...]


def basis_from_generating(A) -> list[list[int]]:
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValidationError("generating-system matrix must be square")
    if len({sum(row) for row in A}) > 1:
        raise ValidationError("rows of a generating-system matrix must have equal sums")
    return [[A[j][i] - A[n - 1][i] for i in range(n - 1)] for j in range(n - 1)]


def generating_from_basis(B) -> list[list[int]]:
    """The lift with zero last row: column n is -(sum of the other columns)."""
    m = len(B)
    rows = [list(r) + [-sum(r)] for r in B]
    return rows + [[0] * (m + 1)]


@dataclass(frozen=True)
class CandidateAutomorphism:
    B: tuple[tuple[int, ...], ...]

    @classmethod
    def from_basis(cls, B) -> "CandidateAutomorphism":
        return cls(tuple(tuple(int(x) for x in r) for r in B))

    @classmethod
    def from_generating(cls, A) -> "CandidateAutomorphism":
        return cls.from_basis(basis_from_generating(A))

    @classmethod
    def from_line_permutation(cls, perm: Sequence[int]) -> "CandidateAutomorphism":
        """φ(e_i) = e_{perm[i-1]}."""
        n = len(perm)
        A = [[0] * n for _ in range(n)]
        for i, j in enumerate(perm):
            A[j - 1][i] = 1
        return cls.from_generating(A)

    @classmethod
    def identity(cls, n: int, sign: int = 1) -> "CandidateAutomorphism":
        return cls.from_basis([[sign * int(i == j) for j in range(n - 1)] for i in range(n - 1)])

    @property
    def n(self) -> int:
        return len(self.B) + 1

    @cached_property
    def det(self) -> int:
        return int(linalg.det(self.B)) if self.B else 1

    @property
    def unimodular(self) -> bool:
        return abs(self.det) == 1

    @cached_property
    def generating(self) -> list[list[int]]:
        return generating_from_basis(self.B)

    def invertible_lift(self) -> list[list[int]]:
        """An n x n matrix for φ with determinant ±det(B): ones added in column n."""
        A = self.generating
        return [row[:-1] + [row[-1] + 1] for row in A]

    def inverse(self) -> "CandidateAutomorphism":
        if not self.unimodular:
            raise NotUnimodular(f"determinant {self.det} is not ±1")
        return CandidateAutomorphism.from_basis(linalg.integer_inverse(self.B))

    def __matmul__(self, other: "CandidateAutomorphism") -> "CandidateAutomorphism":
        return CandidateAutomorphism.from_basis(linalg.matmul(self.B, other.B))

    def __neg__(self) -> "CandidateAutomorphism":
        return CandidateAutomorphism.from_basis([[-x for x in r] for r in self.B])


def _as_candidate(A) -> CandidateAutomorphism:
    if isinstance(A, CandidateAutomorphism):
        return A
    return CandidateAutomorphism.from_generating(A)


# ---------------------------------------------------------------------------
# membership in Aut¹(H)


def _triples(c: LineCombinatorics):
    """Concurrent triples (b, c, d) with b the first line of their point."""
    for p in c.points:
        for x, y in combinations(p[1:], 2):
            yield p[0], x, y


def r2_coefficient(A, p: Sequence[int], i: int, b: int, cc: int, d: int) -> int:
    """Coefficient of the image of e_i ∧ Σ_p e_k on the quotient pair (c, d)."""
    rows = []
    for r in (b, cc, d):
        row = A[r - 1]
        rows.append([row[i - 1], sum(row[k - 1] for k in p), 1])
    return int(linalg.det(rows))


def _preserves_R(c: LineCombinatorics, A) -> bool:
    triples = list(_triples(c))
    for p in c.all_points:
        for i in p:
            for t in triples:
                if r2_coefficient(A, p, i, *t):
                    return False
    return True


def _maps_into_lattice(c: LineCombinatorics, phi: CandidateAutomorphism) -> bool:
    R = linalg.Lattice.from_rows(relation_generators(c, drop_first=True), (c.n - 1) * (c.n - 2) // 2)
    B = phi.B
    for p in c.all_points:
        s = [0] * (c.n - 1)
        for k in p:
            s = [x + y for x, y in zip(s, _col(B, k, c.n))]
        for i in p:
            if not R.contains(hh_wedge(_col(B, i, c.n), s)):
                return False
    return True


def _col(B, line: int, n: int) -> list[int]:
    if line == n:
        return [-sum(r) for r in B]
    return [r[line - 1] for r in B]


def is_aut1(c: LineCombinatorics, A) -> bool:
    """True iff φ is unimodular and φ∧φ maps R onto R."""
    phi = _as_candidate(A)
    if phi.n != c.n:
        raise ValidationError(f"matrix is for {phi.n} lines, combinatorics has {c.n}")
    if not phi.unimodular:
        raise NotUnimodular(f"determinant {phi.det} is not ±1")
    inv = phi.inverse()
    if not (_preserves_R(c, phi.generating) and _preserves_R(c, inv.generating)):
        return False
    if not relation_module(c).saturated:
        return _maps_into_lattice(c, phi) and _maps_into_lattice(c, inv)
    return True


# ---------------------------------------------------------------------------
# action on classes


def induced_class_permutation(c: LineCombinatorics, A, classes: Sequence[AdmissibleClass]) -> Perm:
    """perm[x] = index of the class of M_x · A."""
    phi = _as_candidate(A)
    G = phi.generating
    index = {a.matrix: i for i, a in enumerate(classes)}
    out = []
    for a in classes:
        key = class_key(linalg.matmul(a.matrix, G), c.n)
        if key not in index:
            raise ClassNotPreserved(f"image of {a.label()} is not a listed class")
        out.append(index[key])
    if sorted(out) != list(range(len(classes))):
        raise ClassNotPreserved("induced map on classes is not a bijection")
    return tuple(out)


def automorphism_class_permutations(c: LineCombinatorics, classes: Sequence[AdmissibleClass]) -> dict[Perm, tuple[int, ...]]:
    """Class permutation -> one line automorphism inducing it."""
    out: dict[Perm, tuple[int, ...]] = {}
    for tau in automorphisms(c):
        sigma = induced_class_permutation(c, CandidateAutomorphism.from_line_permutation(tau), classes)
        out.setdefault(sigma, tau)
    return out


def triangle_preserving_permutations(census: TriangleCensus, classes: Sequence[AdmissibleClass],
                                     limit: int = 100_000, node_budget: int = 50_000) -> list[Perm]:
    """Class permutations keeping k, triangle counts, triangles and pairwise Υ.

    Classes are placed most-constrained first; each class also carries the
    histogram of its pairwise Υ values, which any valid permutation keeps.
    """
    m = len(classes)
    counts = census.counts
    pair_u = {}
    for i, j in combinations(range(m), 2):
        pair_u[i, j] = pair_u[j, i] = upsilon((classes[i], classes[j]))
    partners: list[set] = [set() for _ in range(m)]
    for a, b, c in census.triangles:
        partners[a].add((b, c)), partners[a].add((c, b))
        partners[b].add((a, c)), partners[b].add((c, a))
        partners[c].add((a, b)), partners[c].add((b, a))
    sig = []
    for i, a in enumerate(classes):
        hist = sorted((classes[j].k, pair_u[i, j]) for j in range(m) if j != i)
        sig.append((a.k, counts.get(i, -1), tuple(hist)))

    # static order: rarest signature first, then the class most tied to those placed
    order: list[int] = []
    rest = set(range(m))
    freq = {s_: sig.count(s_) for s_ in sig}
    while rest:
        if not order:
            x = min(rest, key=lambda i: (freq[sig[i]], i))
        else:
            placed = set(order)
            x = max(rest, key=lambda i: (sum(1 for u, v in partners[i] if u in placed and v in placed),
                                         -freq[sig[i]], -i))
        order.append(x)
        rest.discard(x)

    perm: list = [None] * m
    used = [False] * m
    found: list[Perm] = []
    nodes = 0

    def ok(depth, x, y):
        for u in order[:depth]:
            if pair_u[x, u] != pair_u[y, perm[u]]:
                return False
        # triangles of x on placed classes must map onto those of y on their images
        mine = [(u, v) for u, v in partners[x] if perm[u] is not None and perm[v] is not None]
        if any((perm[u], perm[v]) not in partners[y] for u, v in mine):
            return False
        return len(mine) == sum(1 for a_, b_ in partners[y] if used[a_] and used[b_])

    def rec(depth):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise SearchBoundExceeded(f"permutation search exceeded {node_budget} nodes")
        if depth == m:
            found.append(tuple(perm))
            if len(found) > limit:
                raise SearchBoundExceeded(f"more than {limit} triangle-preserving permutations")
            return
        x = order[depth]
        for y in range(m):
            if not used[y] and sig[y] == sig[x] and ok(depth, x, y):
                perm[x], used[y] = y, True
                rec(depth + 1)
                perm[x], used[y] = None, False

    rec(0)
    return sorted(found)


# ---------------------------------------------------------------------------
# linear constraints


def _class_rows(src_matrix, tgt_matrix, m: int) -> list[list[int]]:
    """Rows over the m^2 entries of B: r · B · v = 0 for r in M_x, v in ker M_σ(x)."""
    src = [r[:m] for r in src_matrix]
    tgt = [r[:m] for r in tgt_matrix]
    rows = []
    for v in linalg.kernel_basis(tgt, m):
        for r in src:
            rows.append([r[a] * v[b] for a in range(m) for b in range(m)])
    return rows


def _solution_basis(blocks, size: int) -> list[list[int]]:
    """Kernel of all row blocks, intersected one block at a time."""
    N = None
    for rows in blocks:
        if N is None:
            N = linalg.kernel_basis(rows, size) if rows else linalg.identity(size)
            continue
        if not N:
            break
        if not rows:
            continue
        proj = [[sum(x * y for x, y in zip(r, v)) for v in N] for r in rows]
        K = linalg.kernel_basis(proj, len(N))
        N = [_int_primitive([sum(k[t] * N[t][i] for t in range(len(N)) if k[t]) for i in range(size)])
             for k in K]
    return linalg.identity(size) if N is None else N


def _int_primitive(v: list[int]) -> list[int]:
    g = reduce(gcd, v, 0)
    return [x // g for x in v] if g > 1 else v


@dataclass(frozen=True)
class ConstraintSpace:
    n: int
    basis: tuple[tuple[tuple[int, ...], ...], ...]   # each element an (n-1) x (n-1) matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, B) -> bool:
        flat = [[x for r in M for x in r] for M in self.basis]
        return linalg.rowspace_contains(flat, [[x for r in B for x in r]], (self.n - 1) ** 2) if flat else not any(x for r in B for x in r)

    @property
    def diagonal(self) -> bool:
        return all(M[i][j] == 0 for M in self.basis for i in range(self.n - 1)
                   for j in range(self.n - 1) if i != j)

    @property
    def scalar(self) -> bool:
        return self.dim == 1 and self.diagonal and len({self.basis[0][i][i] for i in range(self.n - 1)}) == 1

    @property
    def monomial(self) -> bool:
        """Basis elements with disjoint supports inside one permutation pattern."""
        m = self.n - 1
        cells = set()
        for M in self.basis:
            supp = {(i, j) for i in range(m) for j in range(m) if M[i][j]}
            if cells & supp or any(abs(M[i][j]) != 1 for i, j in supp):
                return False
            cells |= supp
        rows = [i for i, _ in cells]
        cols = [j for _, j in cells]
        return len(set(rows)) == len(rows) and len(set(cols)) == len(cols)


def _space(basis, n: int) -> ConstraintSpace:
    m = n - 1
    return ConstraintSpace(n, tuple(tuple(tuple(v[i * m:(i + 1) * m]) for i in range(m)) for v in basis))


def constraint_space(c: LineCombinatorics, sigma: Perm, classes: Sequence[AdmissibleClass],
                     which: Optional[Sequence[int]] = None) -> ConstraintSpace:
    """All rational B with rowspace(M_x · B) ⊆ rowspace(M_σ(x)) for the chosen classes."""
    if any(classes[x].k != classes[sigma[x]].k for x in range(len(classes))):
        raise ValueError("σ must preserve the fiber count")
    m = c.n - 1
    idx = range(len(classes)) if which is None else which
    blocks = (_class_rows(classes[x].matrix, classes[sigma[x]].matrix, m) for x in idx)
    return _space(_solution_basis(blocks, m * m), c.n)


# ---------------------------------------------------------------------------
# the verdict


@dataclass(frozen=True)
class CandidateRecord:
    sigma: Perm
    induced_by: Optional[tuple[int, ...]]     # a line automorphism, if any
    space_dim: Optional[int]
    outcome: str                              # "covered", "reduced", "excluded", "witness", "inconclusive"


@dataclass
class RigidityReport:
    verdict: str                              # "Rigid", "NotRigid", "Inconclusive"
    reason: str = ""
    witness: Optional[CandidateAutomorphism] = None
    candidates: list[CandidateRecord] = field(default_factory=list)
    certificate: dict = field(default_factory=dict)

    def summary(self) -> dict:
        out = {"verdict": self.verdict, "permutations": len(self.candidates),
               "certificate": self.certificate}
        if self.reason:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = [list(r) for r in self.witness.B]
        return out


def _is_signed_automorphism(B, aut_bases: set) -> bool:
    key = tuple(tuple(r) for r in B)
    neg = tuple(tuple(-x for x in r) for r in B)
    return key in aut_bases or neg in aut_bases


def _sparse_combinations(dim: int, weight: int):
    for size in range(1, min(dim, weight) + 1):
        for pos in combinations(range(dim), size):
            for signs in product((-1, 1), repeat=size):
                t = [0] * dim
                for i, sgn in zip(pos, signs):
                    t[i] = sgn
                yield t


def _scan(c: LineCombinatorics, space: ConstraintSpace, aut_bases: set, full_dim: int = 6):
    """Look for unimodular members of the space.

    Monomial spaces are scanned exhaustively over sign vectors.  Otherwise
    small combinations are tried (all {-1,0,1} vectors up to ``full_dim``,
    else sparse ones, also shifted by the identity when it lies in the space).
    Returns (members in Aut¹, witness outside ±Aut(L,P) or None, exhaustive).
    """
    m = c.n - 1
    if space.dim == 0:
        return [], None, True
    exhaustive = space.monomial
    if exhaustive:
        candidates = ((None, t) for t in product((-1, 1), repeat=space.dim))
    elif space.dim <= full_dim:
        candidates = ((None, t) for t in product((-1, 0, 1), repeat=space.dim))
    else:
        shifts = [None]
        ident = [[int(i == j) for j in range(m)] for i in range(m)]
        if space.contains(ident):
            shifts.append(ident)
        candidates = ((s, t) for s in shifts for t in _sparse_combinations(space.dim, 2))
    members = []
    seen = set()
    for shift, t in candidates:
        B = [[sum(ti * M[i][j] for ti, M in zip(t, space.basis) if ti) for j in range(m)] for i in range(m)]
        if shift is not None:
            B = [[x + y for x, y in zip(r, s)] for r, s in zip(B, shift)]
        key = tuple(map(tuple, B))
        if key in seen or abs(linalg.det(B)) != 1:
            continue
        seen.add(key)
        phi = CandidateAutomorphism.from_basis(B)
        if not is_aut1(c, phi):
            continue
        members.append(phi)
        if not _is_signed_automorphism(phi.B, aut_bases):
            return members, phi, exhaustive
    return members, None, exhaustive


def _all_singular(space: ConstraintSpace, grid_limit: int = 4096) -> Optional[bool]:
    """Whether every member is singular; None when the space is too big to decide.

    det is a polynomial of degree <= m in each coordinate, so vanishing on the
    grid {0..m}^dim proves it is identically zero.
    """
    m = space.n - 1
    if space.dim == 0:
        return True
    if (m + 1) ** space.dim > grid_limit:
        return None
    for t in product(range(m + 1), repeat=space.dim):
        B = [[sum(ti * M[i][j] for ti, M in zip(t, space.basis)) for j in range(m)] for i in range(m)]
        if linalg.det(B) != 0:
            return False
    return True


def rigidity_check(c: LineCombinatorics, options: SearchOptions = SearchOptions()) -> RigidityReport:
    classes = admissible_classes(c, options)
    census = triangle_census(classes)
    try:
        sigmas = triangle_preserving_permutations(census, classes)
    except SearchBoundExceeded as exc:
        return RigidityReport("Inconclusive", f"class permutation search stopped: {exc}",
                              certificate={"classes": len(classes)})
    induced = automorphism_class_permutations(c, classes)
    aut_bases = {CandidateAutomorphism.from_line_permutation(t).B for t in automorphisms(c)}
    ident = tuple(range(len(classes)))

    cert: dict = {
        "classes": len(classes),
        "triangle_counts": sorted({(classes[i].kind, v) for i, v in census.counts.items()}),
        "triangle_preserving": len(sigmas),
        "induced_by_automorphisms": len(induced),
    }
    records: list[CandidateRecord] = []
    orphans = [s for s in sigmas if s not in induced]
    for s in sigmas:
        if s in induced:
            records.append(CandidateRecord(s, induced[s], None, "covered" if s != ident else "reduced"))

    # σ = id: the chain point constraints -> diagonal -> full space -> unimodular points
    point_idx = [i for i, a in enumerate(classes) if a.kind == "point"]
    stage1 = constraint_space(c, ident, classes, point_idx)
    full = constraint_space(c, ident, classes)
    members, witness, exhaustive = _scan(c, full, aut_bases)
    cert.update({
        "point_constraint_dim": stage1.dim,
        "point_constraints_diagonal": stage1.diagonal,
        "full_constraint_dim": full.dim,
        "full_constraints_scalar": full.scalar,
        "identity_members": [[list(r) for r in phi.B] for phi in members],
    })
    if witness is not None:
        return RigidityReport("NotRigid", "unimodular member of Aut¹ outside ±Aut(L,P)", witness, records, cert)
    inconclusive = []
    if not exhaustive:
        inconclusive.append(f"identity space of dimension {full.dim} is not monomial")

    for s in orphans:
        space = constraint_space(c, s, classes)
        mem, wit, exh = _scan(c, space, aut_bases)
        if wit is not None:
            records.append(CandidateRecord(s, None, space.dim, "witness"))
            return RigidityReport("NotRigid", "unimodular member of Aut¹ outside ±Aut(L,P)", wit, records, cert)
        if (exh and not mem) or _all_singular(space) is True:
            records.append(CandidateRecord(s, None, space.dim, "excluded"))
        else:
            records.append(CandidateRecord(s, None, space.dim, "inconclusive"))
            inconclusive.append(f"permutation {list(s)} not induced by a line automorphism "
                                f"(constraint space dimension {space.dim})")
    records.sort(key=lambda r: r.sigma)
    cert["orphans"] = len(orphans)
    if inconclusive:
        return RigidityReport("Inconclusive", "; ".join(inconclusive), None, records, cert)
    return RigidityReport("Rigid", "", None, records, cert)
