import random

import pytest

from isolab.contraction import (
    adjoint_module_isomorphism,
    degenerate_module,
    duality_check,
    generic_stabilizer,
    max_nilradical_orbit_dim,
    z2_contract,
)
from isolab.errors import PreconditionError
from isolab.involutions import QuaternionicDecomposition, parse_automorphism
from isolab.lie import parse_algebra
from isolab.scenarios import SIX_MODULES


@pytest.fixture(scope="module")
def so8():
    g = parse_algebra("so(8)")
    return QuaternionicDecomposition(parse_automorphism(g, "inner:diag(i,i,i,i,-i,-i,-i,-i)"),
                                     parse_automorphism(g, "inner:diag(i,-i,-i,-i,i,i,i,-i)"))


@pytest.fixture(scope="module")
def sl3():
    g = parse_algebra("sl(3)")
    return QuaternionicDecomposition(parse_automorphism(g, "negtranspose"),
                                     parse_automorphism(g, "negtranspose:mat([[1,0,0],[0,1,0],[0,0,-1]])"))


@pytest.mark.parametrize("spec,sigma", [("sl(3)", "negtranspose"), ("so(5)", "inner:diag(1,-1,1,-1,1)"),
                                        ("sl(2)+sl(2)", "swap")])
def test_contraction_structure(spec, sigma):
    g = parse_algebra(spec)
    C = z2_contract(g, parse_automorphism(g, sigma))
    assert C.check_jacobi()
    assert C.ideal_abelian()
    assert C.killing_degenerate()
    assert C.dim == g.dim


def test_contraction_bracket_zero_on_ideal():
    g = parse_algebra("sl(2)")
    C = z2_contract(g, parse_automorphism(g, "inner:diag(1,-1)"))
    e, f = g.from_matrix([[0, 1], [0, 0]]), g.from_matrix([[0, 0], [1, 0]])
    assert not any(C.bracket(e, f))
    assert any(g.bracket(e, f))


@pytest.mark.parametrize("perm", SIX_MODULES)
@pytest.mark.parametrize("variant", ["a", "b"])
def test_module_law_all_modules(sl3, perm, variant):
    V = degenerate_module(sl3, perm, variant)
    assert V.check_module_law() and V.check_nilpotent_action()


def test_module_law_detects_tampering(sl3):
    V = degenerate_module(sl3, ("10", "01", "11"), "a")
    i = next(k for k, M in enumerate(V.rho) if any(any(r) for r in M))
    V.rho[i] = [[2 * x for x in row] for row in V.rho[i]]
    assert not V.check_module_law()


def test_bad_permutation(sl3):
    with pytest.raises(PreconditionError):
        degenerate_module(sl3, ("10", "10", "11"))


def test_duality(so8):
    for perm in SIX_MODULES[::2]:
        d = duality_check(degenerate_module(so8, perm, "a"), degenerate_module(so8, perm, "b"))
        assert d == {"invariant": True, "nondegenerate": True}


def test_no_coincidence_orbit_bound(so8):
    rng = random.Random(7)
    for perm in SIX_MODULES:
        V = degenerate_module(so8, perm)
        r = max_nilradical_orbit_dim(V, rng)
        assert r.max_orbit_dim < r.target_dim
        assert not r.witness_found


def test_coincidence_orbit_witness(sl3):
    rng = random.Random(7)
    V = degenerate_module(sl3, ("10", "11", "01"))
    r = max_nilradical_orbit_dim(V, rng)
    assert r.witness_found and r.max_orbit_dim == r.target_dim


def test_generic_stabilizer(so8):
    rng = random.Random(3)
    V = degenerate_module(so8, ("10", "01", "11"))
    dims = set()
    for _ in range(4):
        st = generic_stabilizer(V, rng)
        assert st.agree and st.rosenlicht and st.cancellation
        assert st.trdeg_a == st.trdeg_b == 2
        dims.add(st.stabilizer.dim)
    assert dims == {6}


def test_adjoint_module_identification():
    h = parse_algebra("sl(2)")
    g = parse_algebra("sl(2)+sl(2)")
    sigma = parse_automorphism(h, "inner:diag(1,-1)")
    Q = QuaternionicDecomposition(parse_automorphism(g, "swap"), parse_automorphism(g, "both:inner:diag(1,-1)"))
    assert adjoint_module_isomorphism(h, g, Q, sigma)
