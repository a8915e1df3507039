"""Z2-contractions g0 x| g1^a and the degenerated modules of a quaternionic decomposition."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cartan import find_css, generic_element_of
from .errors import AlgebraError, Inconclusive, InternalInconsistency, PreconditionError
from .involutions import LITTLE, Automorphism, QuaternionicDecomposition
from .lie import LieAlgebra
from .linalg import Subspace, _clean, matmul, nullspace, rank, transpose

HALF = Fraction(1, 2)


def _sparse_from_coords(v: Sequence) -> dict:
    return {i: c for i, c in enumerate(v) if c}


def _jacobi_ok(sc: list) -> bool:
    """sc[i][j] is a dict {k: c}; checks the Jacobi identity on all basis triples i<j<k."""
    n = len(sc)

    def br(u: dict, k: int) -> dict:
        out: dict = {}
        for l, c in u.items():
            for m, d in sc[l][k].items():
                out[m] = out.get(m, 0) + c * d
        return out

    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                acc: dict = {}
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for m, val in br(sc[a][b], c).items():
                        acc[m] = acc.get(m, 0) + val
                if any(_clean(v) for v in acc.values()):
                    return False
    return True


# ---------------------------------------------------------------------------
# contraction

@dataclass
class ContractedAlgebra:
    """g0 x| g1^a on the vector space g; basis = basis of g0 followed by basis of g1."""

    parent: LieAlgebra
    sigma: Automorphism
    g0: Subspace
    g1: Subspace
    sc: list = field(repr=False)

    @property
    def dim(self) -> int:
        return self.g0.dim + self.g1.dim

    def split(self, x: Sequence) -> tuple[list, list]:
        sx = self.sigma.apply(x)
        x0 = [_clean((a + b) * HALF) for a, b in zip(x, sx)]
        x1 = [_clean((a - b) * HALF) for a, b in zip(x, sx)]
        return x0, x1

    def bracket(self, x: Sequence, y: Sequence) -> list:
        g = self.parent
        x0, x1 = self.split(x)
        y0, y1 = self.split(y)
        parts = [g.bracket(x0, y0), g.bracket(x0, y1), g.bracket(x1, y0)]
        return [_clean(a + b + c) for a, b, c in zip(*parts)]

    def coords(self, x: Sequence) -> list:
        x0, x1 = self.split(x)
        return self.g0.coords(x0) + self.g1.coords(x1)

    def basis(self) -> list:
        return [list(b) for b in self.g0.basis] + [list(b) for b in self.g1.basis]

    def ad(self, i: int) -> list[list]:
        n = self.dim
        M = [[0] * n for _ in range(n)]
        for j in range(n):
            for k, c in self.sc[i][j].items():
                M[k][j] = c
        return M

    def killing_matrix(self) -> list[list]:
        ads = [self.ad(i) for i in range(self.dim)]
        n = self.dim
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                P = matmul(ads[i], ads[j])
                t = _clean(sum(P[k][k] for k in range(n)))
                out[i][j] = out[j][i] = t
        return out

    def killing_degenerate(self) -> bool:
        return rank(self.killing_matrix(), self.dim) < self.dim

    def ideal_abelian(self) -> bool:
        n0 = self.g0.dim
        return all(not self.sc[i][j] for i in range(n0, self.dim) for j in range(n0, self.dim))

    def check_jacobi(self) -> bool:
        return _jacobi_ok(self.sc)


def z2_contract(g: LieAlgebra, sigma: Automorphism) -> ContractedAlgebra:
    if sigma.algebra is not g:
        raise PreconditionError("involution acts on a different algebra")
    if not sigma.compose(sigma).is_identity():
        raise PreconditionError("not an involution")
    g0 = sigma.eigenspace(1)
    g1 = sigma.eigenspace(-1)
    C = ContractedAlgebra(g, sigma, g0, g1, [])
    B = C.basis()
    C.sc = [[_sparse_from_coords(C.coords(C.bracket(u, v))) for v in B] for u in B]
    if not C.ideal_abelian():
        raise InternalInconsistency("g1^a is not abelian in the contraction")
    if not C.check_jacobi():
        raise InternalInconsistency("Jacobi identity fails for the contraction")
    return C


# ---------------------------------------------------------------------------
# degenerated modules

@dataclass
class DegeneratedModule:
    """The module g_alpha + g_gamma of k = g00 x| g_beta^a.

    Variant "a" (g_alpha degenerating onto g_gamma): x in g_beta sends
    (y_alpha, y_gamma) to (0, [x, y_alpha]).  Variant "b": to ([x, y_gamma], 0).
    g00 acts by the adjoint action on both components.
    """

    Q: QuaternionicDecomposition
    alpha: str
    beta: str
    gamma: str
    variant: str
    k_basis: list = field(repr=False)        # g-coordinates: g00 basis then g_beta basis
    v_basis: list = field(repr=False)        # g-coordinates: g_alpha basis then g_gamma basis
    rho: list = field(repr=False)            # matrices of the k basis on V

    @property
    def perm(self) -> tuple[str, str, str]:
        return (self.alpha, self.beta, self.gamma)

    @property
    def source(self) -> str:
        return self.alpha if self.variant == "a" else self.gamma

    @property
    def target(self) -> str:
        return self.gamma if self.variant == "a" else self.alpha

    @property
    def dim(self) -> int:
        return len(self.v_basis)

    @property
    def k_dim(self) -> int:
        return len(self.k_basis)

    @property
    def n00(self) -> int:
        return self.Q.g00.dim

    def split(self, v: Sequence) -> tuple[list, list]:
        """g-coordinate components of a V-coordinate vector."""
        na = self.Q.spaces[self.alpha].dim
        return (self.Q.spaces[self.alpha].combine(v[:na]), self.Q.spaces[self.gamma].combine(v[na:]))

    def join(self, ya: Sequence, yg: Sequence) -> list:
        return self.Q.spaces[self.alpha].coords(ya) + self.Q.spaces[self.gamma].coords(yg)

    def act(self, x: Sequence, v: Sequence) -> list:
        """x in k (g-coordinates, inside g00 + g_beta) acting on v (V-coordinates)."""
        g = self.Q.algebra
        x00, xb = _split_k(self.Q, self.beta, x)
        ya, yg = self.split(v)
        za = g.bracket(x00, ya)
        zg = g.bracket(x00, yg)
        if self.variant == "a":
            zg = [_clean(a + b) for a, b in zip(zg, g.bracket(xb, ya))]
        else:
            za = [_clean(a + b) for a, b in zip(za, g.bracket(xb, yg))]
        return self.join(za, zg)

    def exp_nilradical(self, x: Sequence, v: Sequence) -> list:
        """exp(x) v for x in g_beta; the series stops after the linear term."""
        xv = self.act(x, v)
        if any(self.act(x, xv)):
            raise InternalInconsistency("nilradical element does not square to zero on V")
        return [_clean(a + b) for a, b in zip(v, xv)]

    def k_bracket(self, x: Sequence, y: Sequence) -> list:
        g = self.Q.algebra
        x0, xb = _split_k(self.Q, self.beta, x)
        y0, yb = _split_k(self.Q, self.beta, y)
        parts = [g.bracket(x0, y0), g.bracket(x0, yb), g.bracket(xb, y0)]
        return [_clean(a + b + c) for a, b, c in zip(*parts)]

    def rho_of(self, x: Sequence) -> list[list]:
        cols = [self.act(x, [1 if i == j else 0 for i in range(self.dim)]) for j in range(self.dim)]
        return transpose(cols) if cols else []

    def k_coords(self, x: Sequence) -> list:
        x0, xb = _split_k(self.Q, self.beta, x)
        return list(self.Q.g00.coords(x0)) + list(self.Q.spaces[self.beta].coords(xb))

    def check_module_law(self) -> bool:
        """rho([x_i, x_j]) = [rho(x_i), rho(x_j)] on all basis pairs; rho is linear, so the
        left side is the combination of the rho(x_k) given by the bracket's coordinates."""
        n = self.k_dim
        sp = [_sparse_matrix(M) for M in self.rho]
        for i in range(n):
            for j in range(i + 1, n):
                lhs = _sparse_sub(_sparse_matmul(sp[i], sp[j]), _sparse_matmul(sp[j], sp[i]))
                c = self.k_coords(self.k_bracket(self.k_basis[i], self.k_basis[j]))
                rhs: dict = {}
                for k, ck in enumerate(c):
                    if ck:
                        for key, val in sp[k].items():
                            rhs[key] = rhs.get(key, 0) + ck * val
                rhs = {k: v for k, v in ((k, _clean(v)) for k, v in rhs.items()) if v}
                if lhs != rhs:
                    return False
        return True

    def check_nilpotent_action(self) -> bool:
        n00 = self.n00
        for i in range(n00, self.k_dim):
            for j in range(n00, self.k_dim):
                P = matmul(self.rho[i], self.rho[j])
                if any(any(r) for r in P):
                    return False
        return True


def _sparse_matrix(M) -> dict:
    return {(r, c): x for r, row in enumerate(M) for c, x in enumerate(row) if x}


def _sparse_matmul(A: dict, B: dict) -> dict:
    rows: dict = {}
    for (r, c), x in B.items():
        rows.setdefault(r, []).append((c, x))
    out: dict = {}
    for (r, k), a in A.items():
        for c, b in rows.get(k, ()):
            out[(r, c)] = out.get((r, c), 0) + a * b
    return {k: v for k, v in ((k, _clean(v)) for k, v in out.items()) if v}


def _sparse_sub(A: dict, B: dict) -> dict:
    out = dict(A)
    for k, v in B.items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in ((k, _clean(v)) for k, v in out.items()) if v}


def _split_k(Q: QuaternionicDecomposition, beta: str, x: Sequence) -> tuple[list, list]:
    """Components of x in g00 and g_beta, via the two involutions."""
    s1, s2 = Q.sigma1.apply(x), Q.sigma2.apply(x)
    s3 = Q.sigma3.apply(x)
    x00 = [_clean((a + b + c + d) * Fraction(1, 4)) for a, b, c, d in zip(x, s1, s2, s3)]
    e1 = -1 if beta[0] == "1" else 1
    e2 = -1 if beta[1] == "1" else 1
    xb = [_clean((a + e1 * b + e2 * c + e1 * e2 * d) * Fraction(1, 4)) for a, b, c, d in zip(x, s1, s2, s3)]
    rest = [_clean(a - b - c) for a, b, c in zip(x, x00, xb)]
    if any(rest):
        raise PreconditionError(f"element is not in g00 + g{beta}")
    return x00, xb


def degenerate_module(Q: QuaternionicDecomposition, perm: Sequence[str], variant: str = "a",
                      check: bool = True) -> DegeneratedModule:
    alpha, beta, gamma = perm
    if sorted(perm) != sorted(LITTLE):
        raise PreconditionError(f"{perm} is not a permutation of 01, 10, 11")
    if variant not in ("a", "b"):
        raise PreconditionError("variant must be 'a' or 'b'")
    k_basis = [list(b) for b in Q.g00.basis] + [list(b) for b in Q.spaces[beta].basis]
    v_basis = [list(b) for b in Q.spaces[alpha].basis] + [list(b) for b in Q.spaces[gamma].basis]
    V = DegeneratedModule(Q, alpha, beta, gamma, variant, k_basis, v_basis, [])
    V.rho = [V.rho_of(x) for x in k_basis]
    if check:
        if not V.check_nilpotent_action():
            raise InternalInconsistency("nilradical actions do not compose to zero")
        if not V.check_module_law():
            raise InternalInconsistency("module law fails for the degenerated module")
    return V


def pairing_matrix(Va: DegeneratedModule, Vb: DegeneratedModule) -> list[list]:
    """Gram matrix of kappa(y_alpha, z_alpha) + kappa(y_gamma, z_gamma)."""
    g = Va.Q.algebra
    rows = []
    for v in Va.v_basis:
        rows.append([_clean(g.killing(v, w)) for w in Vb.v_basis])
    return rows


def duality_check(Va: DegeneratedModule, Vb: DegeneratedModule) -> dict:
    """Invariance of the pairing under k (exact, on bases) and its nondegeneracy."""
    if Va.Q is not Vb.Q or Va.perm != Vb.perm or {Va.variant, Vb.variant} != {"a", "b"}:
        raise PreconditionError("duality needs the two variants of one permutation")
    G = pairing_matrix(Va, Vb)
    invariant = True
    for Ra, Rb in zip(Va.rho, Vb.rho):
        # <x.v, w> + <v, x.w> = 0 for all basis v, w  <=>  Ra^T G + G Rb = 0
        S = [[_clean(a + b) for a, b in zip(r1, r2)]
             for r1, r2 in zip(matmul(transpose(Ra), G), matmul(G, Rb))] if G else []
        if any(any(r) for r in S):
            invariant = False
            break
    nondeg = rank(G, Va.dim) == Va.dim if G else True
    if not invariant:
        raise InternalInconsistency("pairing between the two degenerated modules is not invariant")
    return {"invariant": invariant, "nondegenerate": nondeg}


def pairing(Va: DegeneratedModule, v: Sequence, Vb: DegeneratedModule, w: Sequence):
    g = Va.Q.algebra
    ya, yg = Va.split(v)
    za, zg = Vb.split(w)
    return _clean(g.killing(ya, za) + g.killing(yg, zg))


# ---------------------------------------------------------------------------
# nilradical orbits and generic stabilisers

@dataclass
class OrbitReport:
    perm: tuple
    variant: str
    max_orbit_dim: int
    target_dim: int
    witness: list

    @property
    def witness_found(self) -> bool:
        return self.max_orbit_dim == self.target_dim

    def to_dict(self) -> dict:
        out = {
            "perm": list(self.perm),
            "variant": self.variant,
            "max_orbit_dim": self.max_orbit_dim,
            "target_dim": self.target_dim,
            "witness_found": self.witness_found,
        }
        if self.witness_found:
            # with such a witness the N_beta-invariants are the functions on the
            # source component, the quotient map being the projection
            out["nilradical_quotient"] = f"projection onto g{self.perm[0] if self.variant == 'a' else self.perm[2]}"
        return out


def _orbit_dim(V: DegeneratedModule, y_src: Sequence) -> int:
    g = V.Q.algebra
    imgs = [g.bracket(x, y_src) for x in V.Q.spaces[V.beta].basis]
    return rank(imgs, g.dim) if imgs else 0


def max_nilradical_orbit_dim(V: DegeneratedModule, rng: random.Random, samples: int = 5) -> OrbitReport:
    """Maximal dimension of an N_beta-orbit, certified.

    The orbit of (y_src, y_tgt) is y + [g_beta, y_src], so its dimension is
    rank(ad y_src : g_beta -> g_tgt).  For semisimple y in a Cartan subspace c
    of g_src this equals dim g_beta - dim z(y) meet g_beta, which is smallest
    exactly when z_g(y) = z_g(c); generic elements of g_src are conjugate into
    c by G00, which preserves the rank.  Random samples cross-check the bound.
    """
    Q, g = V.Q, V.Q.algebra
    src = Q.spaces[V.source]
    tgt_dim = Q.spaces[V.target].dim
    c = find_css(g, src, rng, f"g{V.source}")
    zc = g.centralizer(c.basis)
    x = generic_element_of(g, c.basis_space, zc.dim, rng)
    best = _orbit_dim(V, x)
    formula = Q.spaces[V.beta].dim - (zc & Q.spaces[V.beta]).dim
    if best != formula:
        raise InternalInconsistency("orbit dimension at a generic Cartan element disagrees with the kernel count")
    for _ in range(samples):
        y = g.random_in(src, rng, box=4)
        d = _orbit_dim(V, y)
        if d > best:
            raise InternalInconsistency("a random sample beats the certified maximal orbit dimension",
                                        counterexample=y)
    if best > tgt_dim:
        raise InternalInconsistency("orbit dimension exceeds dim of the target component")
    return OrbitReport(V.perm, V.variant, best, tgt_dim, x)


@dataclass
class StabilizerReport:
    perm: tuple
    variant: str
    xi: list
    eta: list
    stabilizer: Subspace
    predicted: Subspace
    dim_stab_00: int            # dim (g00^xi)^eta
    dim_beta_xi: int            # dim g_beta^xi
    dim_gamma_xi: int
    trdeg_a: int                # dim c_src + dim CSS(g_tgt^xi)
    trdeg_b: int                # dim CSS of the big space g_src + g_tgt
    rosenlicht: bool
    cancellation: bool
    max_orbit_dim: int | None = None
    witness_found: bool | None = None

    @property
    def agree(self) -> bool:
        return self.trdeg_a == self.trdeg_b and self.stabilizer == self.predicted

    def to_dict(self) -> dict:
        return {
            "perm": list(self.perm),
            "variant": self.variant,
            "max_orbit_dim": self.max_orbit_dim,
            "witness_found": self.witness_found,
            "stabilizer_dim": self.stabilizer.dim,
            "stabilizer_components": [self.dim_stab_00, self.dim_beta_xi],
            "trdeg_a": self.trdeg_a,
            "trdeg_b": self.trdeg_b,
            "agree": self.agree,
            "rosenlicht": self.rosenlicht,
        }


def _big_of(a: str, b: str) -> str:
    from .involutions import big_name
    return big_name(a, b)


def generic_stabilizer(V: DegeneratedModule, rng: random.Random, tries: int = 20) -> StabilizerReport:
    """Stabiliser in k of a certified generic point (xi, eta) of V.

    xi is generic in a Cartan subspace of the source component, eta generic in
    a Cartan subspace of g_tgt^xi.  The stabiliser is a nullspace and is
    compared with (g00^xi)^eta + g_beta^xi.
    """
    Q, g = V.Q, V.Q.algebra
    src, tgt, beta = V.source, V.target, V.beta
    S_src, S_tgt, S_beta = Q.spaces[src], Q.spaces[tgt], Q.spaces[beta]
    c_src = find_css(g, S_src, rng, f"g{src}")
    z_c = g.centralizer(c_src.basis)
    xi = generic_element_of(g, c_src.basis_space, z_c.dim, rng)
    z_xi = g.centralizer([xi])
    tgt_xi = z_xi & S_tgt
    c_eta = find_css(g, tgt_xi, rng, f"g{tgt}^xi")
    target = g.centralizer([xi] + [list(b) for b in c_eta.basis])
    eta = None
    for attempt in range(tries):
        cand = g.random_in(c_eta.basis_space, rng, box=3 + 2 * attempt) if c_eta.dim else g.zero()
        if g.centralizer([xi, cand]) == target:
            eta = cand
            break
    if eta is None:
        raise Inconclusive("no certified generic point in the Cartan subspace of the centraliser")
    # stabiliser of (xi, eta): k element x = a + b (a in g00, b in g_beta)
    k_basis = V.k_basis
    if V.variant == "a":
        v = V.join(xi, eta)
    else:
        v = V.join(eta, xi)
    images = [V.act(x, v) for x in k_basis]
    if images and V.dim:
        kernel = nullspace(transpose(images), len(k_basis))
        stab_vecs = []
        for coeffs in kernel.basis:
            vec = [0] * g.dim
            for cf, b in zip(coeffs, k_basis):
                if cf:
                    vec = [_clean(p + cf * q) for p, q in zip(vec, b)]
            stab_vecs.append(vec)
        stab = Subspace.span(stab_vecs, g.dim)
    else:
        stab = Subspace.span(k_basis, g.dim)
    s00 = g.centralizer([xi, eta], Q.g00)
    b_xi = z_xi & S_beta
    predicted = s00 + b_xi
    trdeg_a = c_src.dim + c_eta.dim
    big = find_css(g, Q.space(_big_of(src, tgt)), rng, "big")
    trdeg_b = big.dim
    rosenlicht = V.dim - V.k_dim + stab.dim == trdeg_a
    cancellation = b_xi.dim - tgt_xi.dim == S_beta.dim - S_tgt.dim
    rep = StabilizerReport(V.perm, V.variant, xi, eta, stab, predicted, s00.dim, b_xi.dim, tgt_xi.dim,
                           trdeg_a, trdeg_b, rosenlicht, cancellation)
    if not rep.agree:
        raise InternalInconsistency(
            f"generic stabiliser mismatch: stab {stab.dim} vs predicted {predicted.dim}, "
            f"trdeg {trdeg_a} vs {trdeg_b}")
    return rep


# ---------------------------------------------------------------------------
# g + g with the swap: the degenerated module is the adjoint module of g<sigma>

def adjoint_module_isomorphism(g: LieAlgebra, gg: LieAlgebra, Q: QuaternionicDecomposition,
                               sigma: Automorphism) -> bool:
    """Check that V = (g10 + g11 of g+g, variant a, perm (10,01,11)) is the adjoint module of g<sigma>.

    k = Delta(g0) x| Delta(g1) is identified with g<sigma> by Delta(x) -> x, and
    V with g<sigma> by the antidiagonal map (y, -y) -> y.
    """
    V = degenerate_module(Q, ("10", "01", "11"), "a")
    C = z2_contract(g, sigma)
    n = g.dim
    if gg.dim != 2 * n:
        raise PreconditionError("second algebra is not g + g")

    def delta(x):
        return list(x) + list(x)

    def delta_minus(x):
        return list(x) + [_clean(-a) for a in x]

    for x in C.basis():
        kx = delta(x)
        for y in C.basis():
            v = V.join(*_components_in(V, delta_minus(y)))
            lhs = V.act(kx, v)
            rhs = V.join(*_components_in(V, delta_minus(C.bracket(x, y))))
            if lhs != rhs:
                return False
    return True


def _components_in(V: DegeneratedModule, vec: Sequence) -> tuple[list, list]:
    """Split a g-coordinate vector lying in g_alpha + g_gamma."""
    Q = V.Q
    idx = 0 if V.alpha[0] != V.gamma[0] else 1
    s = (Q.sigma1 if idx == 0 else Q.sigma2).apply(vec)
    e = 1 if V.alpha[idx] == "0" else -1
    ya = [_clean((a + e * b) * HALF) for a, b in zip(vec, s)]
    yg = [_clean(a - b) for a, b in zip(vec, ya)]
    if not (Q.spaces[V.alpha].contains(ya) and Q.spaces[V.gamma].contains(yg)):
        raise AlgebraError("vector does not lie in g_alpha + g_gamma")
    return ya, yg
