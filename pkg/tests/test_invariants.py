import random
import pytest
from hypothesis import given
from hypothesis import strategies as st

from isolab.contraction import degenerate_module
from isolab.invariants import (
    basic_invariants,
    bihomog_extract,
    charpoly_invariants,
    coefficients_from_values,
    elementary_jets,
    independence_at,
    pfaffian_invariant,
    pfaffian_jet,
    vanishing_on_X,
    verify_invariance,
)
from isolab.involutions import QuaternionicDecomposition, parse_automorphism
from isolab.lie import parse_algebra
from isolab.linalg import charpoly, det, pfaffian

ints = st.integers(-4, 4)


@pytest.fixture(scope="module")
def so8():
    g = parse_algebra("so(8)")
    return QuaternionicDecomposition(parse_automorphism(g, "inner:diag(i,i,i,i,-i,-i,-i,-i)"),
                                     parse_automorphism(g, "inner:diag(i,-i,-i,-i,i,i,i,-i)"))


def test_sl2_quadratic_invariant():
    g = parse_algebra("sl(2)")
    (e2,) = charpoly_invariants(g, g.full_space(), random.Random(0))
    assert e2.degree == 2
    assert e2(g.from_matrix([[0, 1], [1, 0]])) == -1
    assert e2(g.from_matrix([[1, 0], [0, -1]])) == -1
    assert e2(g.from_matrix([[0, 1], [0, 0]])) == 0


@given(st.lists(st.lists(ints, min_size=4, max_size=4), min_size=4, max_size=4))
def test_elementary_functions_match_charpoly(M):
    e = elementary_jets(M)
    c = charpoly(M)
    n = len(M)
    for k in range(n + 1):
        assert c[n - k] == (-1) ** k * e[k][0]


@given(st.lists(st.lists(ints, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.lists(ints, min_size=3, max_size=3), min_size=3, max_size=3))
def test_jets_match_interpolated_derivative(M, N):
    jets = elementary_jets(M, N)
    for k in range(1, 4):
        vals = [elementary_jets([[a + t * b for a, b in zip(r, s)] for r, s in zip(M, N)])[k][0]
                for t in range(k + 1)]
        assert coefficients_from_values(vals)[1] == jets[k][1]


@st.composite
def skew_pair(draw, n):
    A = [[0] * n for _ in range(n)]
    B = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a, b = draw(ints), draw(ints)
            A[i][j], A[j][i], B[i][j], B[j][i] = a, -a, b, -b
    return A, B


@given(skew_pair(6))
def test_pfaffian_jet(AB):
    A, B = AB
    val, der = pfaffian_jet(A, B)
    assert val == pfaffian(A)
    vals = [pfaffian([[a + t * b for a, b in zip(r, s)] for r, s in zip(A, B)]) for t in range(4)]
    assert der == coefficients_from_values(vals)[1]


def test_pfaffian_squares_to_determinant_on_so8(so8):
    g = so8.algebra
    rng = random.Random(5)
    P = pfaffian_invariant(g, g.full_space(), rng=rng)
    for _ in range(3):
        x = g.random_in(g.full_space(), rng)
        assert P(x) ** 2 == det(g.to_matrix(x))


def test_large_pfaffian_derivative_paths_agree():
    # 12 x 12 goes through the A^-1 formula; compare with interpolation
    g = parse_algebra("so(12)")
    rng = random.Random(2)
    P = pfaffian_invariant(g, g.full_space())
    v = g.random_in(g.full_space(), rng)
    w = g.random_in(g.full_space(), rng)
    vals = [P([a + t * b for a, b in zip(v, w)]) for t in range(7)]
    assert P.jet(v, w)[1] == coefficients_from_values(vals)[1]


def test_basic_invariants_so8(so8):
    rng = random.Random(11)
    Fs = basic_invariants(so8.algebra, so8.space("1*"), rng, expected=2)
    assert [F.degree for F in Fs] == [2, 4]
    assert {F.kind for F in Fs} == {"charpoly", "pfaffian"}


def test_bihomogeneous_split_sums_to_F(so8):
    rng = random.Random(12)
    Fs = basic_invariants(so8.algebra, so8.space("1*"), rng, expected=2)
    g = so8.algebra
    for F in Fs:
        S = bihomog_extract(F, so8, "10", "11", rng)
        v = g.random_in(so8.space("1*"), rng)
        assert sum(S.components(v)) == F(v)


def test_top_components_are_invariant(so8):
    rng = random.Random(13)
    Fs = basic_invariants(so8.algebra, so8.space("1*"), rng, expected=2)
    Va = degenerate_module(so8, ("10", "01", "11"), "a")
    Vb = degenerate_module(so8, ("10", "01", "11"), "b")
    for F in Fs:
        S = bihomog_extract(F, so8, "10", "11", rng)
        ra = verify_invariance(S.f_top, Va, rng, points=20, reductive_points=2)
        rb = verify_invariance(S.f_bottom, Vb, rng, points=20, reductive_points=2)
        assert ra.ok and rb.ok
        assert ra.counterexample is None


def test_wrong_component_is_caught(so8):
    # the quadratic invariant's top component is not invariant under the other variant
    rng = random.Random(14)
    F = basic_invariants(so8.algebra, so8.space("1*"), rng, expected=2)[0]
    S = bihomog_extract(F, so8, "10", "11", rng)
    Vb = degenerate_module(so8, ("10", "01", "11"), "b")
    res = verify_invariance(S.f_top, Vb, rng, points=20, reductive_points=2)
    assert not res.ok and res.counterexample is not None


def test_vanishing_report_sl3():
    g = parse_algebra("sl(3)")
    Q = QuaternionicDecomposition(parse_automorphism(g, "negtranspose"),
                                  parse_automorphism(g, "negtranspose:mat([[1,0,0],[0,1,0],[0,0,-1]])"))
    rng = random.Random(15)
    Fs = basic_invariants(g, Q.space("1*"), rng, expected=2)
    r = vanishing_on_X(Q, Fs, rng)
    assert r.condition_holds and r.certified
    assert r.count_matches
    assert r.k == r.dim_big - r.dim_c10


def test_independence_detects_dependent_family():
    g = parse_algebra("sl(3)")
    rng = random.Random(16)
    Fs = charpoly_invariants(g, g.full_space(), rng)
    v = g.random_in(g.full_space(), rng)
    assert independence_at(v, Fs, g.full_space())
    assert not independence_at(v, Fs + Fs[:1], g.full_space())
