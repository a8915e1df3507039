from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from isolab.field import imag_unit
from isolab.linalg import (
    Subspace,
    charpoly,
    det,
    eigenvalues,
    identity,
    inverse,
    matmul,
    minimal_polynomial,
    nullspace,
    pfaffian,
    rank,
    rref,
    transpose,
)

ints = st.integers(min_value=-5, max_value=5)


def square(n):
    return st.lists(st.lists(ints, min_size=n, max_size=n), min_size=n, max_size=n)


def skew(n):
    @st.composite
    def build(draw):
        M = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = draw(ints)
                M[i][j], M[j][i] = v, -v
        return M
    return build()


@given(square(4))
def test_inverse_and_det(M):
    d = det(M)
    if d:
        assert matmul(M, inverse(M)) == identity(4)
    assert det(transpose(M)) == d


@given(square(3), square(3))
def test_det_multiplicative(A, B):
    assert det(matmul(A, B)) == det(A) * det(B)


@given(st.sampled_from([2, 4, 6]).flatmap(skew))
def test_pfaffian_squares_to_det(A):
    assert pfaffian(A) ** 2 == det(A)


def test_pfaffian_of_standard_form():
    J = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
    assert pfaffian(J) == 1


@given(st.lists(st.lists(ints, min_size=5, max_size=5), min_size=1, max_size=6))
def test_rank_nullity(rows):
    assert rank(rows, 5) + nullspace(rows, 5).dim == 5
    for v in nullspace(rows, 5).basis:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


@given(st.lists(st.lists(ints, min_size=4, max_size=4), min_size=1, max_size=4),
       st.lists(st.lists(ints, min_size=4, max_size=4), min_size=1, max_size=4))
def test_subspace_dimension_formula(A, B):
    U, W = Subspace.span(A, 4), Subspace.span(B, 4)
    assert (U + W).dim + (U & W).dim == U.dim + W.dim
    assert (U & W).issubspace(U) and U.issubspace(U + W)


def test_rref_is_canonical():
    a, _ = rref([[2, 4, 6], [1, 1, 1]], 3)
    b, _ = rref([[1, 1, 1], [3, 5, 7]], 3)
    assert a == b


def test_eigenvalues_over_gaussian_rationals():
    i = imag_unit()
    M = [[0, -1], [1, 0]]
    ev = eigenvalues(M)
    assert sorted(map(str, ev)) == sorted(map(str, [i, -i]))


def test_charpoly_and_minimal_polynomial():
    M = [[2, 0, 0], [0, 2, 0], [0, 0, 3]]
    assert charpoly(M)[-1] == 1
    mp = minimal_polynomial(M)
    assert mp.degree == 2


def test_fraction_entries():
    M = [[Fraction(1, 2), 0], [0, Fraction(2, 3)]]
    assert det(M) == Fraction(1, 3)
