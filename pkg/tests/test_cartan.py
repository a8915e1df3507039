import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from isolab.cartan import (
    certify_css,
    check_g11_zero_lemma,
    find_css,
    rank_table,
    verify_raspred,
)
from isolab.errors import PreconditionError
from isolab.involutions import LITTLE, QuaternionicDecomposition, parse_automorphism
from isolab.lie import parse_algebra
from isolab.linalg import Subspace


def quaternionic(spec, s1, s2):
    g = parse_algebra(spec)
    return QuaternionicDecomposition(parse_automorphism(g, s1), parse_automorphism(g, s2))


@pytest.fixture(scope="module")
def so8_31():
    return quaternionic("so(8)", "inner:diag(i,i,i,i,-i,-i,-i,-i)", "inner:diag(i,-i,-i,-i,i,i,i,-i)")


@pytest.fixture(scope="module")
def sl3_canonical():
    return quaternionic("sl(3)", "negtranspose", "negtranspose:mat([[1,0,0],[0,1,0],[0,0,-1]])")


def test_css_of_split_symmetric_space(rng):
    g = parse_algebra("sl(3)")
    p = parse_automorphism(g, "negtranspose").eigenspace(-1)
    c = find_css(g, p, rng)
    assert c.certified and c.dim == 2


def test_certificate_rejects_non_maximal(rng):
    g = parse_algebra("sl(3)")
    p = parse_automorphism(g, "negtranspose").eigenspace(-1)
    c = find_css(g, p, rng)
    line = Subspace.span([c.basis[0]], g.dim)
    ab, ss, sat = certify_css(g, line, p)
    assert ab and ss and not sat


def test_certificate_rejects_nilpotent_line():
    g = parse_algebra("sl(2)")
    e = Subspace.span([g.from_matrix([[0, 1], [0, 0]])], g.dim)
    ab, ss, sat = certify_css(g, e, g.full_space())
    assert ab and not ss


def test_so8_table(so8_31, rng):
    t = rank_table(so8_31, rng)
    assert t.little_dims() == {"01": 1, "10": 1, "11": 1}
    assert t.big_dims() == {"1*": 2, "*1": 2, "*,1-*": 2}
    assert not t.any_coincidence()
    md = t.to_markdown()
    assert "c11 = 1" in md


def test_maximal_rank_coincidences(sl3_canonical, rng):
    t = rank_table(sl3_canonical, rng)
    # sigma1 has maximal rank: its (-1)-space is g10 + g11, third little space g01
    assert t.flag("10", "01") and t.flag("11", "01")


def test_flags_agree_with_dimensions(sl3_canonical, rng):
    t = rank_table(sl3_canonical, rng)
    for r in t.results.values():
        assert r.value == (r.little_dim == r.big_dim)
        assert r.value == (r.witness_rank == r.dim_gamma)


@given(st.integers(0, 10 ** 6), st.sampled_from(LITTLE))
def test_bracket_ranks_agree(seed, alpha):
    Q = _SO8
    x = Q.algebra.random_in(Q.spaces[alpha], random.Random(seed), box=4)
    eq, d1, d2 = verify_raspred(Q, x, alpha)
    assert eq and d1 == d2


_SO8 = quaternionic("so(8)", "inner:diag(i,i,i,i,-i,-i,-i,-i)", "inner:diag(i,-i,-i,-i,i,i,i,-i)")


def test_raspred_requires_membership(so8_31):
    x = so8_31.algebra.random_in(so8_31.g00, random.Random(1))
    with pytest.raises(PreconditionError):
        verify_raspred(so8_31, x, "10")


def test_g11_zero_lemma():
    Q = quaternionic("sl(2)+sl(2)", "inner:diag(1,-1,1,1)", "inner:diag(1,1,1,-1)")
    assert Q.g11.dim == 0
    assert all(check_g11_zero_lemma(Q).values())


def test_g11_zero_lemma_precondition(so8_31):
    with pytest.raises(PreconditionError):
        check_g11_zero_lemma(so8_31)
