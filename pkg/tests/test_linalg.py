from fractions import Fraction
from itertools import product

from hypothesis import given, strategies as st

from linepencils import linalg
from linepencils.linalg import Lattice

ints = st.integers(-4, 4)


def matrices(max_rows=4, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(ints, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_kernel_examples():
    assert linalg.kernel_basis([[1, -1], [-1, 1]]) == [[1, 1]]
    U = [[1] * 6 for _ in range(6)]
    ker = linalg.kernel_basis(U)
    assert len(ker) == 5 and all(sum(v) == 0 for v in ker)


def test_smith_examples():
    assert linalg.smith_invariants(linalg.identity(2)) == [1, 1]
    assert linalg.smith_invariants([[2, 0], [0, 3]]) == [1, 6]
    assert linalg.smith_invariants([[1, 0, -1, 1, 0, -1], [0, 1, -1, 0, 1, -1]]) == [1, 1]


def test_saturate_examples():
    assert linalg.saturate([[2, 0]], 2) == [[1, 0]]
    assert linalg.saturate([[1, 0], [0, 1]], 2) == [[1, 0], [0, 1]]
    # (1,1) = (2,2)/2 and (0,1) = (0,4)/4 both lie in the saturation, so it is all of Z^2
    sat = Lattice.from_rows([[2, 2], [0, 4]], 2).saturation()
    assert sat.contains([1, 1]) and sat.contains([0, 1]) and sat.contains([1, 0])


def test_positive_kernel_examples():
    assert linalg.positive_kernel_point([[1, -1], [-1, 1]]) == [1, 1]
    assert linalg.positive_kernel_point(linalg.identity(3)) is None
    x = linalg.positive_kernel_point([[1, 1, -2]])
    assert x is not None and all(v > 0 for v in x) and x[0] + x[1] == 2 * x[2]


def test_intersect_kernels_examples():
    M = [[1, 0, -1, 1, 0, -1], [0, 1, -1, 0, 1, -1]]
    assert linalg.intersect_kernels([M], 6)[0] == 2
    assert linalg.intersect_kernels([], 6)[0] == 0
    assert linalg.intersect_kernels([M, M], 6)[0] == 2


@given(matrices())
def test_rank_nullity(M):
    c = len(M[0])
    assert linalg.rank(M, c) + len(linalg.kernel_basis(M, c)) == c
    for v in linalg.kernel_basis(M, c):
        assert not any(linalg.matvec(M, v))


@given(matrices())
def test_integer_rank_matches_rational(M):
    c = len(M[0])
    assert linalg.rank(M, c) == len(linalg.rref(M, c)[1])
    assert linalg.rank([[Fraction(x) for x in r] for r in M], c) == linalg.rank(M, c)


@given(matrices())
def test_saturate_idempotent_and_same_span(M):
    c = len(M[0])
    S = linalg.saturate(M, c)
    assert linalg.saturate(S, c) == S
    assert linalg.rowspace_equal(S, M, c) or not any(any(r) for r in M)
    assert linalg.hnf(S, c) == S


@given(matrices())
def test_smith_divisibility(M):
    inv = linalg.smith_invariants(M, len(M[0]))
    assert len(inv) == linalg.rank(M, len(M[0]))
    assert all(b % a == 0 for a, b in zip(inv, inv[1:]))


@given(matrices(3, 3))
def test_det_and_inverse(M):
    if len(M) != len(M[0]):
        return
    d = linalg.det(M)
    assert d == linalg.det([[Fraction(x) for x in r] for r in M])
    if d:
        inv = linalg.inverse(M)
        assert linalg.matmul(M, inv) == linalg.identity(len(M))


@given(matrices(3, 3))
def test_positive_kernel_point_against_grid(A):
    c = len(A[0])
    x = linalg.positive_kernel_point(A, c)
    if x is not None:
        assert all(v > 0 for v in x) and not any(linalg.matvec(A, x))
    else:
        # an exhaustive small search must not find one either
        assert not any(not any(linalg.matvec(A, v)) for v in product(range(1, 7), repeat=c))


@given(st.lists(st.lists(ints, min_size=2, max_size=2), min_size=1, max_size=5),
       st.lists(ints, min_size=1, max_size=5))
def test_fm_feasible_matches_grid(G, h):
    h = (h * 5)[:len(G)]
    x = linalg.fm_feasible(G, h, 2)
    grid = [Fraction(a, 2) for a in range(-40, 41)]
    found = any(all(g[0] * a + g[1] * b >= hi for g, hi in zip(G, h)) for a in grid for b in grid)
    if x is not None:
        assert all(g[0] * x[0] + g[1] * x[1] >= hi for g, hi in zip(G, h))
    else:
        assert not found


def test_lattice_contains():
    L = Lattice.from_rows([[2, 0], [0, 3]], 2)
    assert L.contains([4, 3]) and not L.contains([1, 0])
    assert L.saturation().contains([1, 0])


@given(st.lists(st.lists(ints, min_size=4, max_size=4), min_size=1, max_size=9),
       st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_fm_feasible_four_variables(G, h):
    h = h[:len(G)]
    x = linalg.fm_feasible(G, h, 4)
    if x is not None:
        assert all(sum(g * v for g, v in zip(row, x)) >= hi for row, hi in zip(G, h))
    else:
        grid = range(-3, 4)
        assert not any(all(sum(g * v for g, v in zip(row, p)) >= hi for row, hi in zip(G, h))
                       for p in product(grid, repeat=4))
