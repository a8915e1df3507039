import pytest
from hypothesis import given
from hypothesis import strategies as st

from isolab.errors import AlgebraError
from isolab.lie import exponents_from_regular_nilpotent, parse_algebra, parse_matrix
from isolab.linalg import matmul, trace

# (spec, dim, rank, exponents, Killing form / trace form)
TABLE = [
    ("sl(2)", 3, 1, [1], 4),
    ("sl(3)", 8, 2, [1, 2], 6),
    ("sl(4)", 15, 3, [1, 2, 3], 8),
    ("so(5)", 10, 2, [1, 3], 3),
    ("so(6,standard)", 15, 3, [1, 2, 3], 4),
    ("so(8)", 28, 4, [1, 3, 3, 5], 6),
    ("sp(4)", 10, 2, [1, 3], 6),
    ("sp(6)", 21, 3, [1, 3, 5], 8),
]


@pytest.fixture(scope="module")
def algebras():
    return {spec: parse_algebra(spec) for spec, *_ in TABLE}


@pytest.mark.parametrize("spec,dim,rk,exps,kf", TABLE)
def test_dimension_rank_exponents(algebras, spec, dim, rk, exps, kf):
    g = algebras[spec]
    assert g.dim == dim
    assert g.rank == rk
    assert g.exponents == exps
    assert sum(2 * m + 1 for m in exps) == dim


@pytest.mark.parametrize("spec,dim,rk,exps,kf", TABLE)
def test_killing_form_is_multiple_of_trace_form(algebras, rng, spec, dim, rk, exps, kf):
    g = algebras[spec]
    for _ in range(3):
        x = g.random_in(g.full_space(), rng)
        y = g.random_in(g.full_space(), rng)
        assert g.killing(x, y) == kf * trace(matmul(g.to_matrix(x), g.to_matrix(y)))


@pytest.mark.parametrize("spec", ["sl(3)", "so(5)", "sp(4)", "sl(2)+sl(2)"])
def test_jacobi(spec):
    assert parse_algebra(spec).check_jacobi()


@given(st.data())
def test_bracket_is_commutator(data):
    g = parse_algebra("sl(3)")
    cs = st.lists(st.integers(-4, 4), min_size=g.dim, max_size=g.dim)
    x, y = data.draw(cs), data.draw(cs)
    X, Y = g.to_matrix(x), g.to_matrix(y)
    C = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(matmul(X, Y), matmul(Y, X))]
    assert g.bracket(x, y) == g.from_matrix(C)


def test_rank_certificate(rng):
    g = parse_algebra("sp(4)")
    x = g.certify_rank(rng)
    assert g.is_semisimple(x) and g.centralizer_dim(x) == 2


def test_element_classification():
    g = parse_algebra("sl(2)")
    assert g.classify_element(g.from_matrix([[1, 0], [0, -1]])) == "semisimple"
    assert g.classify_element(g.from_matrix([[0, 1], [0, 0]])) == "nilpotent"
    assert g.classify_element(g.from_matrix([[1, 1], [0, -1]])) == "semisimple"
    assert g.classify_element(g.zero()) == "zero"


def test_exponents_from_principal_nilpotent():
    g = parse_algebra("sl(4)")
    e = g.from_matrix(parse_matrix("[[0,1,0,0],[0,0,1,0],[0,0,0,1],[0,0,0,0]]"))
    assert exponents_from_regular_nilpotent(g, e) == [1, 2, 3]


def test_exponents_reject_subregular():
    g = parse_algebra("sl(4)")
    e = g.from_matrix(parse_matrix("[[0,1,0,0],[0,0,1,0],[0,0,0,0],[0,0,0,0]]"))
    with pytest.raises(AlgebraError):
        exponents_from_regular_nilpotent(g, e)


def test_direct_sum():
    g = parse_algebra("sl(2)+so(5)")
    assert (g.dim, g.rank, g.rep_dim) == (13, 3, 7)


@pytest.mark.parametrize("bad", ["sl(1)", "so(2)", "sp(3)", "gl(3)", "sl(3,antidiag)"])
def test_bad_specs(bad):
    with pytest.raises(AlgebraError):
        parse_algebra(bad)


def test_centralizer_of_regular_semisimple_is_cartan(rng):
    g = parse_algebra("so(5)")
    x = g.certify_rank(rng)
    z = g.centralizer([x])
    assert z.dim == g.rank and g.is_abelian(z)
