import pytest

from isolab.errors import InvolutionError, PreconditionError
from isolab.involutions import (
    QuaternionicDecomposition,
    build_dyad,
    canonical_triple,
    classify_involution,
    parse_automorphism,
    restricted_roots,
    sigma3_from_form,
)
from isolab.lie import parse_algebra, parse_matrix

# (algebra, involution, dim g0, dim g1, inner)
FIXED_POINTS = [
    ("sl(3)", "negtranspose", 3, 5, False),                      # so(3)
    ("sl(4)", "negtranspose:sympl", 10, 5, False),               # sp(4)
    ("sl(4)", "inner:diag(1,1,-1,-1)", 7, 8, True),              # s(gl2 x gl2)
    ("so(8)", "inner:diag(i,i,i,i,-i,-i,-i,-i)", 16, 12, True),  # gl(4)
    ("so(5,standard)", "inner:diag(1,1,1,-1,-1)", 4, 6, True),   # so(3) x so(2)
    ("sp(4)", "inner:diag(1,-1,-1,1)", 6, 4, True),              # sp(2) x sp(2)
    ("sl(2)+sl(2)", "swap", 3, 3, False),
]


@pytest.mark.parametrize("spec,sigma,d0,d1,inner", FIXED_POINTS)
def test_fixed_point_dimensions(spec, sigma, d0, d1, inner):
    g = parse_algebra(spec)
    s = parse_automorphism(g, sigma)
    assert s.check_automorphism() and s.preserves_killing()
    assert s.compose(s).is_identity()
    assert (s.eigenspace(1).dim, s.eigenspace(-1).dim) == (d0, d1)
    assert s.is_inner is inner


def test_non_involution_rejected():
    g = parse_algebra("sl(3)")
    with pytest.raises(InvolutionError):
        parse_automorphism(g, "inner:diag(1,i,-1)")


def test_unknown_spec():
    with pytest.raises(InvolutionError):
        parse_automorphism(parse_algebra("sl(2)"), "flip")


def test_quaternionic_decomposition_relations():
    g = parse_algebra("so(8)")
    s1 = parse_automorphism(g, "inner:diag(i,i,i,i,-i,-i,-i,-i)")
    s2 = parse_automorphism(g, "inner:diag(i,-i,-i,-i,i,i,i,-i)")
    Q = QuaternionicDecomposition(s1, s2)
    assert Q.dim_matrix == [[10, 6], [6, 6]]
    assert not Q.bracket_relations_failures()
    assert Q.killing_orthogonal()
    assert Q.space("1*").dim == 12 and Q.space("*,1-*").dim == 12


def test_noncommuting_pair_rejected():
    g = parse_algebra("sl(2)")
    s1 = parse_automorphism(g, "inner:diag(1,-1)")
    s2 = parse_automorphism(g, "inner:mat([[1,1],[0,-1]])")
    with pytest.raises(Exception):
        QuaternionicDecomposition(s1, s2)


@pytest.mark.parametrize("spec,sigma,maximal,quasi", [
    ("sl(3)", "negtranspose", True, None),
    ("sl(3)", "inner:diag(1,1,-1)", False, True),
    ("sl(4)", "inner:diag(1,1,-1,-1)", False, True),
    ("sl(4)", "inner:diag(1,1,1,-1)", False, False),
    ("so(8)", "inner:diag(i,i,i,i,-i,-i,-i,-i)", False, False),
])
def test_classification(rng, spec, sigma, maximal, quasi):
    g = parse_algebra(spec)
    c = classify_involution(parse_automorphism(g, sigma), rng)
    assert c.maximal_rank is maximal
    assert c.quasi_maximal is quasi
    if quasi is not None:
        assert c.lemma_agrees is True or not c.nilpotent_search_exhaustive
    if quasi:
        assert c.dim_g0 - c.dim_g1 == g.k0 - g.k1


@pytest.mark.parametrize("spec,sigma,direction", [
    ("sl(2)", "inner:diag(1,-1)", "[[0,1],[1,0]]"),
    ("sl(3)", "inner:diag(1,1,-1)", "[[0,0,1],[0,0,0],[1,0,0]]"),
    ("sp(4)", "inner:diag(1,-1,-1,1)", "[[0,1,0,0],[1,0,0,0],[0,0,0,-1],[0,0,-1,0]]"),
])
def test_dyad_identities(spec, sigma, direction):
    g = parse_algebra(spec)
    d = build_dyad(parse_automorphism(g, sigma), parse_matrix(direction))
    assert all(d.checks.values())
    phi2 = d.phi.compose(d.phi)
    assert phi2.compose(phi2).is_identity()
    assert d.sigma1.compose(d.sigma2).same_map(phi2)


def test_dyad_direction_must_be_anisotropic():
    g = parse_algebra("sl(2)")
    with pytest.raises(PreconditionError):
        build_dyad(parse_automorphism(g, "inner:diag(1,-1)"), parse_matrix("[[1,0],[0,-1]]"))


@pytest.mark.parametrize("spec,mu,dims", [
    ("sl(3)", "inner:diag(1,1,-1)", [[1, 2], [2, 3]]),
    ("sl(4)", "inner:diag(1,1,-1,-1)", [[2, 4], [4, 5]]),
    ("so(8)", "inner:diag(1,1,-1,-1,-1,-1,1,1)", [[4, 8], [8, 8]]),
])
def test_canonical_triple(spec, mu, dims):
    g = parse_algebra(spec)
    ct = canonical_triple(g, parse_automorphism(g, mu))
    assert all(ct.checks.values())
    assert ct.decomposition.dim_matrix == dims


def test_canonical_triple_needs_diagonal_witness():
    g = parse_algebra("sl(2)")
    with pytest.raises(PreconditionError):
        canonical_triple(g, parse_automorphism(g, "inner:mat([[0,1],[1,0]])"))


def test_restricted_roots_split_case():
    # sl(3)/so(3) is split: the diagonal is a Cartan subspace, restricted roots form A2
    g = parse_algebra("sl(3)")
    s = parse_automorphism(g, "negtranspose")
    c = g.diagonal_subspace()
    assert c.issubspace(s.eigenspace(-1))
    Phi = restricted_roots(g, c.basis)
    assert len(Phi.roots) == 6
    assert Phi.multiplicities == [1] * 6
    assert Phi.zero_space.dim == 2


def test_sigma3_from_form_commutes():
    g = parse_algebra("sl(3)")
    s1 = parse_automorphism(g, "negtranspose")
    Phi = restricted_roots(g, g.diagonal_subspace().basis)
    s3 = sigma3_from_form(Phi, [1, 0], s1)
    assert s3.compose(s3).is_identity()
    assert s3.commutes_with(s1)
    assert s3.check_automorphism()
    assert not s3.same_map(s1)
