import random
import pytest

from linepencils import fixtures, linalg
from linepencils.combinatorics import automorphisms
from linepencils.duality import duality_check, is_os_automorphism, os_coefficients
from linepencils.errors import NotUnimodular, ValidationError
from linepencils.rigidity import is_aut1, rigidity_check

from conftest import random_equal_column_sum


def test_identity_and_negative():
    c = fixtures.ceva()
    I = linalg.identity(6)
    assert os_coefficients(c, I) == {}
    assert is_os_automorphism(c, I)
    assert is_os_automorphism(c, [[-x for x in r] for r in I])


def test_elementary_matrix_is_not_an_automorphism():
    c = fixtures.ceva()
    A = linalg.identity(6)
    A[0][1], A[2][1] = 1, -1          # x_2 -> x_1 + x_2 - x_3, column sum stays 1
    assert abs(linalg.det(A)) == 1
    assert os_coefficients(c, A)
    assert not is_os_automorphism(c, A)
    assert duality_check(c, A) is False


def test_input_checks():
    c = fixtures.ceva()
    with pytest.raises(ValidationError):
        is_os_automorphism(c, linalg.identity(5))
    bad = linalg.identity(6)
    bad[0][1] = 1
    with pytest.raises(ValidationError):
        is_os_automorphism(c, bad)
    with pytest.raises(NotUnimodular):
        is_os_automorphism(c, [[2 * int(i == j) for j in range(6)] for i in range(6)])


@pytest.mark.parametrize("name", ["ceva", "tenline", "generalized_ceva"])
def test_automorphisms_on_both_sides(name):
    c = fixtures.get(name)
    for tau in automorphisms(c):
        # x_b -> x_tau(b): column b is e_tau(b)
        A = [[int(tau[b] == a + 1) for b in range(c.n)] for a in range(c.n)]
        assert is_os_automorphism(c, A)
        assert duality_check(c, A)


def test_witness_transposes_to_os_automorphism():
    c = fixtures.ceva()
    phi = rigidity_check(c).witness
    A = linalg.transpose(phi.invertible_lift())
    assert is_os_automorphism(c, A)


@pytest.mark.parametrize("name", ["ceva", "tenline"])
def test_random_samples_agree(name):
    c = fixtures.get(name)
    rng = random.Random(name)
    for _ in range(100):
        A = random_equal_column_sum(rng, c.n)
        assert is_os_automorphism(c, A) == is_aut1(c, linalg.transpose(A))
