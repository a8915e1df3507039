"""Exact evaluators for classical invariants and their bi-homogeneous components.

Invariants are never expanded symbolically.  An evaluator maps a coordinate
vector of g to a scalar and can also return a first-order jet
(F(v), dF_v(w)).  Characteristic-polynomial coefficients are computed from
power sums with dual numbers, so a directional derivative costs one pass.
Pfaffians use the perfect-matching expansion on small blocks and otherwise
d Pf(A)(B) = Pf(A) tr(A^-1 B) / 2, with interpolation when A is singular.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import Inconclusive, InternalInconsistency, PreconditionError
from .involutions import QuaternionicDecomposition
from .lie import LieAlgebra, Summand
from .linalg import Subspace, _clean, div, inverse, pfaffian, rank

# ---------------------------------------------------------------------------
# small exact helpers


@lru_cache(maxsize=64)
def _vandermonde_inverse(d: int) -> tuple:
    """Inverse of the Vandermonde matrix at t = 0..d (rows give coefficients)."""
    V = [[Fraction(t) ** j for j in range(d + 1)] for t in range(d + 1)]
    return tuple(tuple(r) for r in inverse(V))


def coefficients_from_values(values: Sequence) -> list:
    """Coefficients c_0..c_d of the polynomial p with p(t) = values[t], t = 0..d."""
    d = len(values) - 1
    Vi = _vandermonde_inverse(d)
    return [_clean(sum(a * b for a, b in zip(row, values) if a and b)) for row in Vi]


def _mm(A, B):
    n = len(B[0])
    out = []
    for row in A:
        acc = [0] * n
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def _tr(A):
    return sum(A[i][i] for i in range(len(A)))


def elementary_jets(M, N=None) -> list[tuple]:
    """(e_k(M), d/de e_k(M + eN)) for k = 0..n, e_k the elementary symmetric
    functions of the eigenvalues (so det(sI - M) = sum (-1)^k e_k s^(n-k))."""
    n = len(M)
    P, Q = M, N
    p = []
    for k in range(n):
        if k:
            newP = _mm(M, P)
            if N is not None:
                Q = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(_mm(M, Q), _mm(N, P))]
            P = newP
        p.append((_tr(P), _tr(Q) if N is not None else 0))
    e = [(1, 0)]
    for k in range(1, n + 1):
        a = b = 0
        for i in range(1, k + 1):
            sgn = 1 if i % 2 else -1
            ea, eb = e[k - i]
            pa, pb = p[i - 1]
            a += sgn * ea * pa
            b += sgn * (ea * pb + eb * pa)
        e.append((_clean(div(a, k)), _clean(div(b, k))))
    return e


_MATCHING_LIMIT = 10


@lru_cache(maxsize=8)
def _matchings(n: int) -> tuple:
    """Perfect matchings of 0..n-1 as (sign, pairs), pairs (i, j) with i < j."""
    def rec(items):
        if not items:
            yield 1, ()
            return
        a = items[0]
        for pos in range(1, len(items)):
            b = items[pos]
            rest = items[1:pos] + items[pos + 1:]
            sgn = -1 if (pos - 1) % 2 else 1
            for s, m in rec(rest):
                yield sgn * s, ((a, b),) + m
    return tuple(rec(tuple(range(n))))


def pfaffian_jet(A, B=None) -> tuple:
    """(Pf(A), d/de Pf(A + eB)) by expansion over perfect matchings."""
    n = len(A)
    if n % 2:
        return (0, 0)
    val = der = 0
    for sgn, pairs in _matchings(n):
        prod = sgn
        for i, j in pairs:
            prod *= A[i][j]
            if not prod:
                break
        if prod:
            val += prod
        if B is not None:
            # product rule: replace one factor at a time
            for k, (i, j) in enumerate(pairs):
                if not B[i][j]:
                    continue
                term = sgn * B[i][j]
                for kk, (a, b) in enumerate(pairs):
                    if kk != k:
                        term *= A[a][b]
                        if not term:
                            break
                der += term
    return (_clean(val), _clean(der))


def _block(M, s: Summand):
    o = s.rep_offset
    return [row[o:o + s.n] for row in M[o:o + s.n]]


# ---------------------------------------------------------------------------
# oracles

@dataclass(eq=False)
class InvariantOracle:
    """A G-invariant polynomial on g, evaluated exactly; ``domain`` records where it is used.

    kind "charpoly": e_index of one simple summand's matrix; kind "pfaffian":
    Pf(J M) for an even orthogonal summand with form J.
    """

    algebra: LieAlgebra
    domain: Subspace
    degree: int
    kind: str
    summand: int
    index: int | None = None

    @property
    def name(self) -> str:
        base = f"e{self.index}" if self.kind == "charpoly" else "Pf"
        return base if len(self.algebra.summands) == 1 else f"{base}[{self.summand}]"

    def _matrix(self, v):
        return _block(self.algebra.to_matrix(v), self.algebra.summands[self.summand])

    def __call__(self, v: Sequence):
        return self.jet(v, None)[0]

    def jet(self, v: Sequence, w: Sequence | None):
        M = self._matrix(v)
        N = self._matrix(w) if w is not None else None
        if self.kind == "charpoly":
            key = (tuple(map(tuple, M)), tuple(map(tuple, N)) if N is not None else None)
            ej = _CHARPOLY_CACHE.get(key)
            if ej is None:
                ej = elementary_jets(M, N)
                if len(_CHARPOLY_CACHE) > 4096:
                    _CHARPOLY_CACHE.clear()
                _CHARPOLY_CACHE[key] = ej
            return ej[self.index]
        J = [list(r) for r in self.algebra.summands[self.summand].form]
        A = _mm(J, M)
        B = _mm(J, N) if N is not None else None
        if len(A) <= _MATCHING_LIMIT:
            return pfaffian_jet(A, B)
        key = tuple(map(tuple, A))
        hit = _PFAFFIAN_CACHE.get(key)
        if hit is None:
            val = _clean(pfaffian(A))
            hit = (val, inverse(A) if val else None)
            if len(_PFAFFIAN_CACHE) > 4096:
                _PFAFFIAN_CACHE.clear()
            _PFAFFIAN_CACHE[key] = hit
        val, Ainv = hit
        if B is None:
            return (val, 0)
        if Ainv is not None:
            # d/dt Pf(A + tB) = Pf(A) tr(A^-1 B) / 2
            tr = sum(a * b for ra, i in zip(Ainv, range(len(B))) for a, b in zip(ra, (row[i] for row in B)) if a and b)
            return (val, _clean(val * tr * Fraction(1, 2)))
        vals = [pfaffian([[a + t * b for a, b in zip(r1, r2)] for r1, r2 in zip(A, B)])
                for t in range(self.degree + 1)]
        return (val, coefficients_from_values(vals)[1])

    def to_dict(self) -> dict:
        return {"name": self.name, "kind": self.kind, "degree": self.degree}


_CHARPOLY_CACHE: dict = {}
_PFAFFIAN_CACHE: dict = {}


def _self_test(F: InvariantOracle, rng: random.Random, group: Sequence = ()) -> None:
    g = F.algebra
    for _ in range(2):
        v = g.random_in(F.domain, rng, box=4)
        a = F(v)
        if _clean(F([2 * x for x in v]) - 2 ** F.degree * a):
            raise InternalInconsistency(f"{F.name} is not homogeneous of degree {F.degree}")
        for s in group:
            if _clean(F(g.conjugate(s, v)) - a):
                raise InternalInconsistency(f"{F.name} is not invariant under a group witness")


def charpoly_invariants(g: LieAlgebra, domain: Subspace, rng: random.Random,
                        group: Sequence = (), samples: int = 4) -> list[InvariantOracle]:
    """Coefficients e_2..e_n of every simple summand, keeping those not identically zero on ``domain``.

    Vanishing is decided at ``samples`` random points from a large box.
    """
    out = []
    for si, s in enumerate(g.summands):
        pts = [g.random_in(domain, rng, box=10 ** 4) for _ in range(samples)]
        for k in range(2, s.n + 1):
            F = InvariantOracle(g, domain, k, "charpoly", si, k)
            if all(not F(p) for p in pts):
                continue
            _self_test(F, rng, group)
            out.append(F)
    return out


def pfaffian_invariant(g: LieAlgebra, domain: Subspace, summand: int = 0, rng: random.Random | None = None,
                       group: Sequence = ()) -> InvariantOracle:
    s = g.summands[summand]
    if s.kind != "so" or s.n % 2:
        raise PreconditionError("the Pfaffian needs an even orthogonal summand")
    F = InvariantOracle(g, domain, s.n // 2, "pfaffian", summand)
    if rng is not None:
        _self_test(F, rng, group)
    return F


def gradient(F, v: Sequence, domain: Subspace) -> list:
    """Exact partial derivatives of F at v along the basis of ``domain``."""
    return [F.jet(v, list(b))[1] for b in domain.basis]


def independence_at(e: Sequence, Fs: Sequence, domain: Subspace) -> bool:
    if not Fs:
        return True
    G = [gradient(F, e, domain) for F in Fs]
    return rank(G, domain.dim) == len(Fs)


def basic_invariants(g: LieAlgebra, domain: Subspace, rng: random.Random, expected: int | None = None,
                     group: Sequence = (), tries: int = 4) -> list[InvariantOracle]:
    """Char-poly coefficients and Pfaffians, filtered greedily by degree to an algebraically
    independent family (Jacobian rank at a random point).

    With ``expected`` (the dimension of a Cartan subspace of the domain) the
    selection is certified: Jacobian rank at a point never exceeds the generic
    rank, which never exceeds ``expected``.
    """
    cands = charpoly_invariants(g, domain, rng, group)
    for si, s in enumerate(g.summands):
        if s.kind == "so" and s.n % 2 == 0:
            P = pfaffian_invariant(g, domain, si, rng, group)
            pts = [g.random_in(domain, rng, box=10 ** 4) for _ in range(3)]
            if any(P(p) for p in pts):
                cands.append(P)
    cands.sort(key=lambda F: (F.degree, F.kind != "pfaffian", F.summand))
    best: list = []
    for _ in range(tries):
        v = g.random_in(domain, rng, box=50)
        grads = {id(F): gradient(F, v, domain) for F in cands}
        chosen, rows = [], []
        for F in cands:
            trial = rows + [grads[id(F)]]
            if rank(trial, domain.dim) == len(trial):
                rows = trial
                chosen.append(F)
        if len(chosen) > len(best):
            best = chosen
        if expected is None or len(best) == expected:
            break
    if expected is not None and len(best) != expected:
        raise Inconclusive(f"found {len(best)} independent invariants, expected {expected}", best=best)
    return best


# ---------------------------------------------------------------------------
# bi-homogeneous components

def split_pair(Q: QuaternionicDecomposition, alpha: str, gamma: str, vec: Sequence) -> tuple[list, list]:
    """Components of a vector of g_alpha + g_gamma."""
    idx = 0 if alpha[0] != gamma[0] else 1
    s = (Q.sigma1 if idx == 0 else Q.sigma2).apply(vec)
    e = 1 if alpha[idx] == "0" else -1
    ya = [_clean((a + e * b) * Fraction(1, 2)) for a, b in zip(vec, s)]
    yg = [_clean(a - b) for a, b in zip(vec, ya)]
    return ya, yg


@dataclass
class BiHomogComponent:
    """Component of bidegree (j, deg - j) of F on g_alpha + g_gamma (j = degree in g_alpha)."""

    split: "BiHomogSplit"
    j: int

    @property
    def bidegree(self) -> tuple[int, int]:
        return (self.j, self.split.degree - self.j)

    def __call__(self, v):
        return self.split.components(v)[self.j]

    def jet(self, v, w):
        vals, ders = self.split.component_jets(v, w)
        return vals[self.j], ders[self.j]


@dataclass
class BiHomogSplit:
    source: InvariantOracle
    Q: QuaternionicDecomposition
    alpha: str
    gamma: str
    top: int | None = None       # largest j with a nonzero component
    bottom: int | None = None    # smallest such j

    @property
    def degree(self) -> int:
        return self.source.degree

    def _line(self, v):
        ya, yg = split_pair(self.Q, self.alpha, self.gamma, v)
        return [[_clean(t * a + b) for a, b in zip(ya, yg)] for t in range(self.degree + 1)]

    def components(self, v) -> list:
        return coefficients_from_values([self.source(p) for p in self._line(v)])

    def component_jets(self, v, w):
        lv, lw = self._line(v), self._line(w)
        jets = [self.source.jet(p, q) for p, q in zip(lv, lw)]
        return (coefficients_from_values([a for a, _ in jets]),
                coefficients_from_values([b for _, b in jets]))

    def component(self, j: int) -> BiHomogComponent:
        return BiHomogComponent(self, j)

    @property
    def f_top(self) -> BiHomogComponent:
        return BiHomogComponent(self, self.top)

    @property
    def f_bottom(self) -> BiHomogComponent:
        return BiHomogComponent(self, self.bottom)


def bihomog_extract(F: InvariantOracle, Q: QuaternionicDecomposition, alpha: str, gamma: str,
                    rng: random.Random, samples: int = 4) -> BiHomogSplit:
    S = BiHomogSplit(F, Q, alpha, gamma)
    dom = Q.spaces[alpha] + Q.spaces[gamma]
    g = Q.algebra
    nonzero: set = set()
    for _ in range(samples):
        v = g.random_in(dom, rng, box=10 ** 3)
        comps = S.components(v)
        if _clean(sum(comps) - F(v)):
            raise InternalInconsistency("bi-homogeneous components do not add up")
        nonzero |= {j for j, c in enumerate(comps) if c}
    if not nonzero:
        raise Inconclusive(f"{F.name} vanishes at every sample of g{alpha}+g{gamma}")
    S.top, S.bottom = max(nonzero), min(nonzero)
    return S


# ---------------------------------------------------------------------------
# invariance under the degenerated actions

@dataclass
class InvarianceResult:
    ok: bool
    points: int
    checks: int
    counterexample: dict | None = None


class LinearFunction:
    """v -> c . v (in g coordinates); used as a deliberately non-invariant test function."""

    def __init__(self, c: Sequence):
        self.c = list(c)
        self.degree = 1

    def __call__(self, v):
        return _clean(sum(a * b for a, b in zip(self.c, v) if a and b))

    def jet(self, v, w):
        return self(v), self(w)


class ConstantFunction:
    def __init__(self, value=1):
        self.value = value
        self.degree = 0

    def __call__(self, v):
        return self.value

    def jet(self, v, w):
        return self.value, 0


def verify_invariance(F, V, rng: random.Random, points: int = 20, reductive_points: int | None = None,
                      box: int = 5) -> InvarianceResult:
    """Exact K-invariance of F on the degenerated module V.

    Nilradical: F(exp(x) v) = F(v) for random x in g_beta.  Reductive part:
    the derivative of F at v along x.v vanishes for every basis element x of g00.
    """
    Q, g = V.Q, V.Q.algebra
    reductive_points = points if reductive_points is None else reductive_points
    beta = Q.spaces[V.beta]
    full_v = Subspace.full(V.dim)
    checks = 0

    def to_g(vc):
        ya, yg = V.split(vc)
        return [_clean(a + b) for a, b in zip(ya, yg)]

    for i in range(points):
        vc = g.random_in(full_v, rng, box=box) if V.dim else []
        v = to_g(vc) if V.dim else g.zero()
        base = F(v)
        if beta.dim:
            x = g.random_in(beta, rng, box=box)
            moved = to_g(V.exp_nilradical(x, vc)) if V.dim else v
            checks += 1
            if _clean(F(moved) - base):
                return InvarianceResult(False, i + 1, checks, {"kind": "nilradical", "x": x, "v": v})
        if i < reductive_points:
            for x in Q.g00.basis:
                w = to_g(V.act(list(x), vc)) if V.dim else g.zero()
                checks += 1
                if _clean(F.jet(v, w)[1]):
                    return InvarianceResult(False, i + 1, checks, {"kind": "reductive", "x": list(x), "v": v})
    return InvarianceResult(True, points, checks)


# ---------------------------------------------------------------------------
# vanishing on X = closure of G0* . c10

@dataclass
class VanishingReport:
    condition_holds: bool
    dim_c10: int
    dim_big: int
    k: int
    vanishing: list          # names of invariants vanishing identically on c10
    certified: bool          # grid certificate (otherwise random sampling)
    count_matches: bool

    def to_dict(self) -> dict:
        return {
            "condition_holds": self.condition_holds,
            "dim_c10": self.dim_c10,
            "dim_big_css": self.dim_big,
            "k": self.k,
            "vanishing": self.vanishing,
            "grid_certified": self.certified,
            "count_matches": self.count_matches,
        }


def _vanishes_on(F, basis: Sequence[Sequence], g: LieAlgebra, rng: random.Random,
                 grid_limit: int = 4000) -> tuple[bool, bool]:
    """Does F vanish on span(basis)?  A polynomial of degree <= d in each variable
    vanishing on a grid {0..d}^k is zero; larger grids fall back to sampling."""
    k = len(basis)
    d = F.degree
    if k == 0:
        return True, True
    if (d + 1) ** k <= grid_limit:
        from itertools import product
        for coeffs in product(range(d + 1), repeat=k):
            v = [0] * g.dim
            for c, b in zip(coeffs, basis):
                if c:
                    v = [_clean(a + c * y) for a, y in zip(v, b)]
            if F(v):
                return False, True
        return True, True
    for _ in range(30):
        coeffs = [rng.randint(-10 ** 4, 10 ** 4) for _ in range(k)]
        v = [0] * g.dim
        for c, b in zip(coeffs, basis):
            v = [_clean(a + c * y) for a, y in zip(v, b)]
        if F(v):
            return False, False
    return True, False


def vanishing_on_X(Q: QuaternionicDecomposition, Fs: Sequence, rng: random.Random,
                   translates: int = 3) -> VanishingReport:
    """Which invariants of g1* vanish on c10 (hence on G0*.c10, by invariance).

    Requires that z_g(c10) meet g1* be a Cartan subspace of g1*; k is its
    dimension minus dim c10.  Translates of c10 by exp of nilpotent elements of
    g00 are evaluated as a consistency check.
    """
    from .cartan import certify_css, find_css

    g = Q.algebra
    big = Q.space("1*")
    c10 = find_css(g, Q.g10, rng, "g10")
    z = g.centralizer(c10.basis, big)
    ab, ss, sat = certify_css(g, z, big)
    if not (ab and ss and sat):
        broken = [n for n, ok in (("abelian", ab), ("semisimple", ss), ("saturated", sat)) if not ok]
        raise PreconditionError(f"z_g(c10) meet g1* is not a Cartan subspace of g1* ({', '.join(broken)} fails)")
    k = z.dim - c10.dim
    vanishing, certified = [], True
    for F in Fs:
        van, cert = _vanishes_on(F, c10.basis, g, rng)
        certified = certified and cert
        if van:
            vanishing.append(F.name)
            # consistency: translates by exp(n), n nilpotent in g00
            for _ in range(translates):
                n = _nilpotent_in(g, Q.g00, rng)
                if n is None:
                    break
                x = g.random_in(c10.basis_space, rng, box=5)
                y = _exp_conjugate(g, n, x)
                if F(y):
                    raise InternalInconsistency(f"{F.name} vanishes on c10 but not on a G00-translate")
    return VanishingReport(True, c10.dim, z.dim, k, vanishing, certified, len(vanishing) == k)


def _nilpotent_in(g: LieAlgebra, S: Subspace, rng: random.Random):
    U = g.strictly_upper_subspace() & S
    if U.dim == 0:
        return None
    n = g.random_in(U, rng, box=3)
    return n if g.is_nilpotent(n) else None


def _exp_conjugate(g: LieAlgebra, n: Sequence, x: Sequence) -> list:
    """exp(ad n) x, a finite sum since n is nilpotent."""
    out = list(x)
    term = list(x)
    k = 1
    while True:
        term = [_clean(div(c, k)) for c in g.bracket(n, term)]
        if not any(term):
            return out
        out = [_clean(a + b) for a, b in zip(out, term)]
        k += 1
