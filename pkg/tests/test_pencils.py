import random

import pytest
from hypothesis import given

from linepencils import fixtures, linalg
from linepencils.errors import (BadSignPattern, EmptyChi, NotAdmissible, NotIndecomposable,
                                SearchBoundExceeded)
from linepencils.os_algebra import is_admissible, wedge_matrix
from linepencils.pencils import (CombinatorialPencil, SearchOptions, admissible_from_pencil,
                                 build_Q, check_pencil, chi_of, enumerate_pencils,
                                 non_point_pencils, pencil_from_admissible, point_pencil,
                                 vinberg_classify, vinberg_clauses)

from conftest import ALL_FIXTURES, combinatorics, random_block


# ---------------------------------------------------------------------------
# Vinberg trichotomy

@pytest.mark.parametrize("B,kind", [
    ([[2]], "Fin"),
    ([[1, -1], [-1, 1]], "Aff"),
    ([[1, -2], [-2, 1]], "Ind"),
    ([[2, -1], [-1, 2]], "Fin"),
    ([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], "Fin"),
    ([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]], "Aff"),
    ([[0]], "Aff"),
    ([[-1]], "Ind"),
])
def test_vinberg_examples(B, kind):
    res = vinberg_classify(B)
    assert res.kind == kind
    assert res.verify(B)


def test_vinberg_errors():
    with pytest.raises(BadSignPattern):
        vinberg_classify([[1, 1], [1, 1]])
    with pytest.raises(BadSignPattern):
        vinberg_classify([[1, -1], [0, 1]])
    with pytest.raises(BadSignPattern):
        vinberg_classify([[1, 0, 0]])
    with pytest.raises(NotIndecomposable):
        vinberg_classify([[1, 0], [0, 1]])


def test_vinberg_clauses_exclusive_on_random_blocks():
    rng = random.Random(7)
    kinds = {"Fin": 0, "Aff": 0, "Ind": 0}
    for _ in range(1000):
        B = random_block(rng, rng.randint(1, 6))
        clauses = vinberg_clauses(B)
        held = [k for k, v in clauses.items() if v is not None]
        assert len(held) == 1, (B, clauses)
        res = vinberg_classify(B)
        assert res.kind == held[0] and res.verify(B)
        kinds[res.kind] += 1
    assert all(kinds.values())


# ---------------------------------------------------------------------------
# the Q decomposition

def test_build_Q_ceva():
    c = fixtures.ceva()
    dec = build_Q(c, range(1, 7), c.points)
    assert dec.partition == ((1, 4), (2, 5), (3, 6))
    assert all(t.kind == "Aff" for t in dec.types)
    assert all(dec.Q[i][i] == 1 for i in range(6))


def test_build_Q_tenline_ceva_support():
    c = fixtures.ten_line_example()
    chi = [(1, 6, 7), (4, 7, 9), (5, 6, 9), (1, 4, 5)]
    full = {p: q for q in c.all_points for p in chi if set(p) <= set(q)}
    dec = build_Q(c, [1, 4, 5, 9, 6, 7], [full[p] for p in chi])
    assert dec.partition == ((1, 9), (4, 6), (5, 7))
    assert dec.block_of(6) == 1


def test_build_Q_errors():
    c = fixtures.ceva()
    with pytest.raises(EmptyChi):
        build_Q(c, range(1, 7), [])
    with pytest.raises(ValueError):
        build_Q(c, [1, 2, 3], [(1, 2, 3)])
    with pytest.raises(ValueError):
        build_Q(c, [1, 2], [(1, 5, 6)])


CEVA_M = [[1, 0, -1, 1, 0, -1], [0, 1, -1, 0, 1, -1]]


def test_chi_of():
    c = fixtures.ceva()
    assert chi_of(c, CEVA_M) == c.points
    assert chi_of(c, [[1, 0, -1, 0, 0, 0], [0, 1, -1, 0, 0, 0]]) == ((1, 2, 3),)
    with pytest.raises(NotAdmissible):
        chi_of(c, [[0] * 6, [0] * 6])


def test_ceva_pencil_from_matrix():
    c = fixtures.ceva()
    P = pencil_from_admissible(c, CEVA_M)
    assert P.fibers == ((1, 4), (2, 5), (3, 6))
    assert set(P.weight.values()) == {1}
    assert len(P.base_points) == 4 and not P.is_point_type
    with pytest.raises(NotAdmissible):
        pencil_from_admissible(c, [[1, -1, 0, 0, 0, 0], [0, 0, 0, 1, -1, 0]])


def test_point_pencil_on_quintuple():
    c = fixtures.ten_line_example()
    P = point_pencil(c, (1, 2, 3, 4, 5))
    assert P.k == 5 and P.is_point_type and check_pencil(c, P) == []
    M = admissible_from_pencil(P)
    assert len(M) == 4 and is_admissible(c, M)
    assert pencil_from_admissible(c, M) == P


def test_generalized_ceva_from_drawn_labels():
    # images of the lines in Z^2 as drawn: three fibers, weight-2 lines on 7, 8, 9
    cols = {1: (1, 0), 4: (1, 0), 9: (2, 0),
            2: (0, 1), 5: (0, 1), 8: (0, 2),
            3: (-1, -1), 6: (-1, -1), 7: (-2, -2)}
    M = [[cols[l][r] for l in range(1, 10)] for r in range(2)]
    c = fixtures.generalized_ceva()
    assert is_admissible(c, M)
    P = pencil_from_admissible(c, M)
    assert P.fibers == ((1, 4, 9), (2, 5, 8), (3, 6, 7))
    assert P.weight == {1: 1, 2: 1, 3: 1, 4: 1, 5: 1, 6: 1, 7: 2, 8: 2, 9: 2}
    assert P.base_points == c.points
    assert P.key in {Q.key for Q in enumerate_pencils(c)}


def test_check_pencil_flags_problems():
    c = fixtures.ceva()
    good = pencil_from_admissible(c, CEVA_M)
    assert check_pencil(c, good) == []
    bad = CombinatorialPencil(6, ((1, 2), (4, 5), (3, 6)), tuple((l, 1) for l in range(1, 7)), ())
    assert check_pencil(c, bad)
    two = CombinatorialPencil(6, ((1, 4), (2, 5)), tuple((l, 1) for l in (1, 2, 4, 5)), ())
    assert "fewer than 3 fibers" in check_pencil(c, two)


# ---------------------------------------------------------------------------
# enumeration

@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_enumerated_pencils_are_valid(name):
    c = fixtures.get(name)
    for P in enumerate_pencils(c):
        assert check_pencil(c, P) == []
        assert P.k >= 3


def _resonance_dim(c, M, rng):
    a = [0] * c.n
    for row in M:
        t = rng.randint(1, 97)
        a = [x + t * y for x, y in zip(a, row)]
    return len(linalg.kernel_basis(wedge_matrix(c, a) + [[1] * c.n], c.n))


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_maximality_by_resonance(name):
    # a generic element of a maximal class resonates with exactly that class
    c = fixtures.get(name)
    rng = random.Random(name)
    for P in enumerate_pencils(c):
        assert _resonance_dim(c, P.matrix(), rng) == P.k - 1


def test_include_nonmaximal_adds_subpencils_on_hesse():
    c = fixtures.hesse()
    base = {P.key for P in enumerate_pencils(c)}
    wide = enumerate_pencils(c, SearchOptions(include_nonmaximal=True))
    extra = [P for P in wide if P.key not in base]
    assert base <= {P.key for P in wide} and len(extra) == 4
    rng = random.Random(0)
    for P in extra:
        assert check_pencil(c, P) == []
        assert _resonance_dim(c, P.matrix(), rng) > P.k - 1


def test_max_fibers_bound():
    c = fixtures.hesse()
    assert all(P.k <= 3 for P in enumerate_pencils(c, SearchOptions(max_fibers=3)))


def test_search_bound():
    with pytest.raises(SearchBoundExceeded):
        non_point_pencils(fixtures.generic(17))


def test_worker_determinism():
    c = fixtures.generalized_ceva()
    one = enumerate_pencils(c, SearchOptions(workers=1))
    two = enumerate_pencils(c, SearchOptions(workers=2))
    assert one == two


@given(combinatorics(min_lines=3, max_lines=8))
def test_random_round_trip(c):
    for P in enumerate_pencils(c):
        M = admissible_from_pencil(P)
        assert is_admissible(c, M)
        assert pencil_from_admissible(c, M) == P
