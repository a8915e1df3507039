"""Involutions, commuting pairs and their Z2 x Z2-gradings.

An :class:`Automorphism` is stored as a matrix on coordinate vectors
(column j is the image of basis vector j).  When it comes from the defining
representation it also remembers that description, either conjugation
``x -> S x S^-1`` or the twisted negative transpose ``x -> -F^-1 x^T F``;
compositions of such maps stay in this family, which is what lets dyads and
canonical triples be checked at the group level.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import (
    FieldError,
    InternalInconsistency,
    InvolutionError,
    PreconditionError,
)
from .field import imag_unit, is_rational, parse_scalar, sqrt_in_field
from .lie import LieAlgebra, Summand, antidiag, make_so, make_sp, make_sl, parse_matrix, symplectic_form
from .linalg import (
    Subspace,
    _clean,
    det,
    div,
    eigenvalues,
    identity,
    inverse,
    matmul,
    nullspace,
    transpose,
)

LITTLE = ("01", "10", "11")
BIG = {"1*": ("10", "11"), "*1": ("01", "11"), "*,1-*": ("01", "10")}


def big_name(a: str, b: str) -> str:
    pair = {a, b}
    for name, parts in BIG.items():
        if set(parts) == pair:
            return name
    raise ValueError(f"no big space contains {a} and {b}")


# ---------------------------------------------------------------------------
# Automorphism

@dataclass(eq=False)
class Automorphism:
    algebra: LieAlgebra
    matrix: list
    rep: tuple | None = None       # ("conj", S) or ("negT", F)
    label: str = ""

    # -- basic algebra ------------------------------------------------
    def apply(self, v: Sequence) -> list:
        rows = self.__dict__.get("_rows")
        if rows is None:
            rows = [[(c, a) for c, a in enumerate(row) if a] for row in self.matrix]
            self.__dict__["_rows"] = rows
        return [_clean(sum(a * v[c] for c, a in row if v[c])) for row in rows]

    def __call__(self, v):
        return self.apply(v)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other."""
        if other.algebra is not self.algebra:
            raise InvolutionError("automorphisms of different algebras")
        rep = _compose_rep(self.rep, other.rep)
        return Automorphism(self.algebra, matmul(self.matrix, other.matrix), rep,
                            f"({self.label})*({other.label})")

    __matmul__ = compose

    def inverse(self) -> "Automorphism":
        rep = None
        if self.rep is not None:
            kind, M = self.rep
            rep = ("conj", inverse(M)) if kind == "conj" else ("negT", transpose(M))
        return Automorphism(self.algebra, inverse(self.matrix), rep, f"({self.label})^-1")

    def power(self, k: int) -> "Automorphism":
        out = identity_automorphism(self.algebra)
        for _ in range(k):
            out = self.compose(out)
        return out

    def is_identity(self) -> bool:
        n = self.algebra.dim
        return all(self.matrix[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))

    def same_map(self, other: "Automorphism") -> bool:
        return self.matrix == other.matrix

    def commutes_with(self, other: "Automorphism") -> bool:
        return matmul(self.matrix, other.matrix) == matmul(other.matrix, self.matrix)

    def order(self, bound: int = 12) -> int:
        P = self
        for k in range(1, bound + 1):
            if P.is_identity():
                return k
            P = self.compose(P)
        raise InvolutionError(f"order exceeds {bound}")

    def eigenspace(self, eps) -> Subspace:
        n = self.algebra.dim
        M = [[_clean(self.matrix[i][j] - (eps if i == j else 0)) for j in range(n)] for i in range(n)]
        return nullspace(M, n)

    # -- verification -------------------------------------------------
    def check_automorphism(self) -> bool:
        g = self.algebra
        images = [self.apply(g.unit(i)) for i in range(g.dim)]
        for i in range(g.dim):
            for j in range(i + 1, g.dim):
                lhs = self.apply(g.bracket(g.unit(i), g.unit(j)))
                rhs = g.bracket(images[i], images[j])
                if lhs != rhs:
                    return False
        return True

    def preserves_killing(self) -> bool:
        K = self.algebra.killing_matrix()
        A = self.matrix
        return matmul(matmul(transpose(A), K), A) == K

    # -- group level ---------------------------------------------------
    def group_action(self, t):
        """Image of an invertible matrix t under the group automorphism inducing self."""
        if self.rep is None:
            raise InvolutionError(f"{self.label}: no defining-representation description")
        kind, M = self.rep
        if kind == "conj":
            return matmul(matmul(M, t), inverse(M))
        # differential x -> -F^-1 x^T F comes from t -> F^-1 t^-T F
        return matmul(matmul(inverse(M), transpose(inverse(t))), M)

    @property
    def is_inner(self) -> bool | None:
        """Innerness for the whole algebra; None when it cannot be decided from the data."""
        if self.is_identity():
            return True
        if self.rep is None:
            return None
        kind, M = self.rep
        g = self.algebra
        verdicts = []
        for s in g.summands:
            lo, hi = s.rep_offset, s.rep_offset + s.n
            # a map that mixes summands is not inner
            for r in range(g.rep_dim):
                for c in range(g.rep_dim):
                    if M[r][c] and ((lo <= r < hi) != (lo <= c < hi)):
                        return False
            block = [row[lo:hi] for row in M[lo:hi]]
            verdicts.append(_block_inner(s, kind, block))
        return all(verdicts)

    @property
    def kind(self) -> str:
        if self.is_identity():
            return "identity"
        inner = self.is_inner
        if inner is None:
            return "composite"
        return "inner" if inner else "outer"

    @property
    def witness(self):
        """S with self = Int(S) when the map is a conjugation, else None."""
        if self.rep and self.rep[0] == "conj":
            return self.rep[1]
        return None

    def __repr__(self):
        return f"Automorphism({self.label or '?'} on {self.algebra.label})"


def _block_inner(s: Summand, kind: str, M) -> bool:
    if s.kind == "sl":
        # x -> -x^T is inner only for sl(2)
        return kind == "conj" or s.n == 2
    if s.kind == "sp":
        return True
    if s.n % 2:
        return True
    # so(2N): a similitude S (S^T J S = c J) is proper iff det S = c^N
    J = [list(r) for r in s.form]
    N = s.n // 2
    if kind == "negT":
        # -F^-1 x^T F = Int(F^-1 J^-1 ...) on so(J): x^T = -J x J^-1, so the map is Int(F^-1 J)
        M = matmul(inverse(M), J)
    c_mat = matmul(matmul(transpose(M), J), M)
    c = None
    for r in range(s.n):
        for col in range(s.n):
            if J[r][col]:
                c = div(c_mat[r][col], J[r][col])
                break
        if c is not None:
            break
    return _clean(det(M) - c ** N) == 0


def _compose_rep(a, b):
    if a is None or b is None:
        return None
    ka, A = a
    kb, B = b
    if ka == "conj" and kb == "conj":
        return ("conj", matmul(A, B))
    if ka == "negT" and kb == "conj":
        return ("negT", matmul(transpose(B), A))
    if ka == "conj" and kb == "negT":
        return ("negT", matmul(B, inverse(A)))
    return ("conj", matmul(inverse(A), transpose(B)))


def identity_automorphism(g: LieAlgebra) -> Automorphism:
    return Automorphism(g, identity(g.dim), ("conj", identity(g.rep_dim)), "id")


def _from_rep(g: LieAlgebra, rep, label: str) -> Automorphism:
    kind, M = rep
    try:
        Minv = inverse(M)
    except Exception:
        raise InvolutionError(f"{label}: matrix is not invertible") from None
    cols = []
    for B in g.basis:
        if kind == "conj":
            img = matmul(matmul(M, B), Minv)
        else:
            img = [[-x for x in row] for row in matmul(matmul(Minv, transpose(B)), M)]
        try:
            cols.append(g.from_matrix(img))
        except Exception:
            raise InvolutionError(f"{label} does not preserve {g.label}") from None
    matrix = [[cols[j][i] for j in range(g.dim)] for i in range(g.dim)]
    return Automorphism(g, matrix, (kind, [list(r) for r in M]), label)


def automorphism_from_rep(g: LieAlgebra, rep, label: str = "", check: bool = True) -> Automorphism:
    a = _from_rep(g, rep, label)
    if check and not a.check_automorphism():
        raise InvolutionError(f"{label}: automorphism law fails")
    return a


def _require_involution(a: Automorphism) -> Automorphism:
    if a.is_identity():
        raise InvolutionError(f"{a.label} is the identity")
    if not a.compose(a).is_identity():
        raise InvolutionError(f"{a.label} does not square to the identity")
    return a


def _block_scalar(g: LieAlgebra, M) -> bool:
    R = g.rep_dim
    for r in range(R):
        for c in range(R):
            if r != c and M[r][c]:
                return False
    for s in g.summands:
        vals = {M[i][i] for i in range(s.rep_offset, s.rep_offset + s.n)}
        if len(vals) != 1:
            return False
    return True


def inner_automorphism(g: LieAlgebra, s, label: str = "") -> Automorphism:
    return automorphism_from_rep(g, ("conj", s), label or "Int(s)")


def inner_involution(g: LieAlgebra, s, label: str = "") -> Automorphism:
    if not _block_scalar(g, matmul(s, s)):
        raise InvolutionError(f"{label or 'witness'}: s^2 is not central")
    return _require_involution(inner_automorphism(g, s, label or "Int(s)"))


def outer_involution(g: LieAlgebra, form=None, label: str = "") -> Automorphism:
    """x -> -F^-1 x^T F (F = identity by default)."""
    F = form if form is not None else identity(g.rep_dim)
    return _require_involution(automorphism_from_rep(g, ("negT", F), label or "negtranspose"))


outer_involution_sl = outer_involution


def swap_involution(g: LieAlgebra) -> Automorphism:
    if len(g.summands) != 2:
        raise InvolutionError("swap needs a direct sum of two summands")
    a, b = g.summands
    if (a.kind, a.n, a.form, a.convention) != (b.kind, b.n, b.form, b.convention):
        raise InvolutionError("swap needs two isomorphic summands in the same realization")
    n = a.n
    P = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        P[i][n + i] = 1
        P[n + i][i] = 1
    return _require_involution(automorphism_from_rep(g, ("conj", P), "swap"))


def summand_algebra(s: Summand) -> LieAlgebra:
    if s.kind == "sl":
        return make_sl(s.n)
    if s.kind == "sp":
        return make_sp(s.n)
    return make_so(s.n, s.convention)


def diagonal_extension(g: LieAlgebra, sigma_on_summand: Automorphism) -> Automorphism:
    """sigma (+) sigma on g = h (+) h, built from an automorphism of h given in the same realization."""
    if len(g.summands) != 2:
        raise InvolutionError("both: needs a direct sum of two summands")
    kind, M = sigma_on_summand.rep
    n = len(M)
    big = [[0] * (2 * n) for _ in range(2 * n)]
    for r in range(n):
        for c in range(n):
            big[r][c] = M[r][c]
            big[n + r][n + c] = M[r][c]
    return automorphism_from_rep(g, (kind, big), f"{sigma_on_summand.label}+{sigma_on_summand.label}")


# ---------------------------------------------------------------------------
# involution mini-language

def _split_top(text: str, sep: str = ",") -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [p.strip() for p in out]


def _parse_group_matrix(g: LieAlgebra, body: str):
    body = body.strip()
    if body.startswith("diag(") and body.endswith(")"):
        entries = [parse_scalar(e) for e in _split_top(body[5:-1])]
        if len(entries) != g.rep_dim:
            raise InvolutionError(f"diag needs {g.rep_dim} entries, got {len(entries)}")
        return [[entries[r] if r == c else 0 for c in range(g.rep_dim)] for r in range(g.rep_dim)]
    if body.startswith("mat(") and body.endswith(")"):
        M = parse_matrix(body[4:-1])
        if len(M) != g.rep_dim:
            raise InvolutionError(f"matrix must be {g.rep_dim}x{g.rep_dim}")
        return M
    raise InvolutionError(f"cannot parse group element {body!r}")


def _named_form(g: LieAlgebra, name: str):
    if name in ("", "id", "identity"):
        return identity(g.rep_dim)
    if name == "antidiag":
        return antidiag(g.rep_dim)
    if name == "sympl":
        if g.rep_dim % 2:
            raise InvolutionError("sympl form needs even size")
        return symplectic_form(g.rep_dim)
    if name.startswith("mat(") or name.startswith("diag("):
        return _parse_group_matrix(g, name)
    raise InvolutionError(f"unknown form {name!r}")


def parse_automorphism(g: LieAlgebra, text: str, involution: bool = True) -> Automorphism:
    """Parse "inner:diag(i,i,-i,-i)", "inner:mat([[0,1],[1,0]])", "negtranspose[:F]",
    "swap", "both:<spec>" and "compose:A,B"."""
    t = text.strip()
    if t.startswith("compose:"):
        parts = _split_top(t[len("compose:"):])
        if len(parts) < 2:
            raise InvolutionError("compose needs at least two factors")
        auts = [parse_automorphism(g, p, involution=False) for p in parts]
        out = auts[0]
        for a in auts[1:]:
            out = out.compose(a)
        out.label = t
        return _require_involution(out) if involution else out
    if t.startswith("inner:"):
        s = _parse_group_matrix(g, t[len("inner:"):])
        return inner_involution(g, s, t) if involution else inner_automorphism(g, s, t)
    if t == "negtranspose" or t.startswith("negtranspose:"):
        F = _named_form(g, t.split(":", 1)[1] if ":" in t else "")
        a = automorphism_from_rep(g, ("negT", F), t)
        return _require_involution(a) if involution else a
    if t == "swap":
        return swap_involution(g)
    if t.startswith("both:"):
        if len(g.summands) != 2:
            raise InvolutionError("both: needs a direct sum of two summands")
        h = summand_algebra(g.summands[0])
        inner = parse_automorphism(h, t[len("both:"):], involution=False)
        a = diagonal_extension(g, inner)
        a.label = t
        return _require_involution(a) if involution else a
    if t in ("id", "identity"):
        return identity_automorphism(g)
    raise InvolutionError(f"cannot parse involution spec {text!r}")


parse_involution = parse_automorphism


# ---------------------------------------------------------------------------
# quaternionic decomposition

class QuaternionicDecomposition:
    """The four joint eigenspaces g_ij of a commuting pair (sigma1, sigma2).

    g_ij has sigma1-eigenvalue (-1)^i and sigma2-eigenvalue (-1)^j.
    """

    def __init__(self, sigma1: Automorphism, sigma2: Automorphism, check: bool = True):
        g = sigma1.algebra
        if sigma2.algebra is not g:
            raise InvolutionError("involutions act on different algebras")
        for s in (sigma1, sigma2):
            if s.is_identity():
                raise InvolutionError(f"{s.label} is the identity")
            if not s.compose(s).is_identity():
                raise InvolutionError(f"{s.label} is not an involution")
        if sigma1.same_map(sigma2):
            raise InvolutionError("sigma1 and sigma2 coincide")
        if not sigma1.commutes_with(sigma2):
            raise InvolutionError("sigma1 and sigma2 do not commute")
        self.algebra = g
        self.sigma1 = sigma1
        self.sigma2 = sigma2
        self.sigma3 = sigma1.compose(sigma2)
        n = g.dim
        self.spaces: dict[str, Subspace] = {}
        for i in (0, 1):
            for j in (0, 1):
                e1, e2 = (-1) ** i, (-1) ** j
                rows = [[_clean(sigma1.matrix[r][c] - (e1 if r == c else 0)) for c in range(n)] for r in range(n)]
                rows += [[_clean(sigma2.matrix[r][c] - (e2 if r == c else 0)) for c in range(n)] for r in range(n)]
                self.spaces[f"{i}{j}"] = nullspace(rows, n)
        if sum(S.dim for S in self.spaces.values()) != n:
            raise InternalInconsistency("joint eigenspaces do not span the algebra")
        self._cache: dict = {}
        if check:
            failed = self.bracket_relations_failures()
            if failed:
                raise InternalInconsistency(f"bracket relations fail: {failed}")

    # -- spaces ---------------------------------------------------------
    def space(self, name: str) -> Subspace:
        if name in self.spaces:
            return self.spaces[name]
        if name not in self._cache:
            parts = {"1*": ("10", "11"), "*1": ("01", "11"), "*,1-*": ("01", "10"),
                     "0*": ("00", "01"), "*0": ("00", "10")}.get(name)
            if parts is None:
                raise KeyError(name)
            self._cache[name] = self.spaces[parts[0]] + self.spaces[parts[1]]
        return self._cache[name]

    @property
    def g00(self):
        return self.spaces["00"]

    @property
    def g01(self):
        return self.spaces["01"]

    @property
    def g10(self):
        return self.spaces["10"]

    @property
    def g11(self):
        return self.spaces["11"]

    @property
    def dim_matrix(self) -> list[list[int]]:
        s = self.spaces
        return [[s["00"].dim, s["01"].dim], [s["10"].dim, s["11"].dim]]

    def involution_of_big(self, big: str) -> Automorphism:
        return {"1*": self.sigma1, "*1": self.sigma2, "*,1-*": self.sigma3}[big]

    # -- checks -----------------------------------------------------------
    def bracket_relations_failures(self) -> list[str]:
        g = self.algebra
        s = self.spaces
        rel = [("00", "00", "00")]
        for a in LITTLE:
            rel.append(("00", a, a))
            rel.append((a, a, "00"))
        for a, b in (("01", "10"), ("01", "11"), ("10", "11")):
            c = next(x for x in LITTLE if x not in (a, b))
            rel.append((a, b, c))
        bad = []
        for a, b, c in rel:
            if not g.bracket_included(s[a], s[b], s[c]):
                bad.append(f"[g{a},g{b}] not in g{c}")
        return bad

    def killing_orthogonal(self) -> bool:
        g = self.algebra
        names = list(self.spaces)
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                for x in self.spaces[a].basis:
                    for y in self.spaces[b].basis:
                        if g.killing(x, y):
                            return False
        return True


def quaternionic(sigma1: Automorphism, sigma2: Automorphism) -> QuaternionicDecomposition:
    return QuaternionicDecomposition(sigma1, sigma2)


# ---------------------------------------------------------------------------
# classification of a single involution

@dataclass
class InvolutionClass:
    maximal_rank: bool
    quasi_maximal: bool | None          # None means not applicable (outer)
    dim_g0: int
    dim_g1: int
    css_dim: int
    inner: bool | None
    semisimple_witness: list | None = None
    nilpotent_witness: list | None = None
    nilpotent_search_exhaustive: bool = False
    lemma_agrees: bool | None = None
    chambers_visited: int = 0

    def to_dict(self) -> dict:
        return {
            "maximal_rank": self.maximal_rank,
            "quasi_maximal": self.quasi_maximal,
            "dim_g0": self.dim_g0,
            "dim_g1": self.dim_g1,
            "css_dim": self.css_dim,
            "inner": self.inner,
            "regular_semisimple_found": self.semisimple_witness is not None,
            "regular_nilpotent_found": self.nilpotent_witness is not None,
            "nilpotent_search_exhaustive": self.nilpotent_search_exhaustive,
            "lemma_agrees": self.lemma_agrees,
        }


def classify_involution(sigma: Automorphism, rng: random.Random | None = None,
                        nilpotent_check: bool = True) -> InvolutionClass:
    """Maximal rank by dimension count; quasi-maximality by an exact CSS argument.

    Every semisimple element of g1 is G0-conjugate into a Cartan subspace c,
    so g1 holds a regular semisimple element iff dim z_g(c) = rk g; a generic
    element of c with that centraliser dimension is returned as certificate.
    The regular-nilpotent criterion is evaluated independently by searching
    the chambers of a Cartan subalgebra of g0.
    """
    from .cartan import find_css, generic_element_of

    g = sigma.algebra
    rng = rng or random.Random(f"classify:{sigma.label}")
    g0 = sigma.eigenspace(1)
    g1 = sigma.eigenspace(-1)
    maximal = g1.dim - g0.dim == g.rank
    c = find_css(g, g1, rng)
    inner = sigma.is_inner
    res = InvolutionClass(maximal, None, g0.dim, g1.dim, c.dim, inner)
    if inner is not True:
        return res
    zc = g.centralizer(c.basis)
    x = generic_element_of(g, c.basis_space, zc.dim, rng)
    qm = zc.dim == g.rank
    res.quasi_maximal = qm
    if qm:
        if not (g.is_semisimple(x) and g.is_regular(x)):
            raise InternalInconsistency("generic CSS element is not regular semisimple", counterexample=x)
        res.semisimple_witness = x
    if nilpotent_check:
        from .tori import cartan_of_reductive, search_nilpotent_in_chambers

        t0 = cartan_of_reductive(g, g0, rng)
        exhaustive = t0.dim == g.rank
        e, visited = search_nilpotent_in_chambers(
            g, t0, g1, lambda v: g.is_regular(v), rng)
        res.nilpotent_witness = e
        res.nilpotent_search_exhaustive = exhaustive
        res.chambers_visited = visited
        if e is not None or exhaustive:
            res.lemma_agrees = (e is not None) == qm
            if not res.lemma_agrees:
                raise InternalInconsistency(
                    "regular semisimple and regular nilpotent criteria disagree",
                    counterexample={"semisimple": x, "nilpotent": e})
    return res


# ---------------------------------------------------------------------------
# dyads

@dataclass
class Dyad:
    sigma1: Automorphism
    sigma2: Automorphism
    phi: Automorphism
    s: list
    checks: dict = field(default_factory=dict)


def build_dyad(sigma1: Automorphism, direction) -> Dyad:
    """phi = Int(s) with s on the one-dimensional torus through ``direction``.

    The torus direction t must satisfy sigma1(t) = -t and be semisimple with
    eigenvalues whose pairwise differences are rational; after normalising
    those differences to coprime integers, s = sum i^k P_k (P_k the
    eigenprojections) has s^4 = 1, and sigma2 = phi sigma1 phi^-1.
    """
    g = sigma1.algebra
    if isinstance(direction, list) and direction and isinstance(direction[0], list):
        t_mat = direction
        t = g.from_matrix(t_mat)
    else:
        t = list(direction)
        t_mat = g.to_matrix(t)
    if not any(t):
        raise PreconditionError("torus direction is zero")
    if sigma1.apply(t) != [_clean(-x) for x in t]:
        raise PreconditionError("direction is not anisotropic: sigma1(t) != -t")
    if not g.is_semisimple(t):
        raise PreconditionError("direction is not semisimple")
    evs = eigenvalues(t_mat)
    base = evs[0]
    diffs = [_clean(e - base) for e in evs]
    if not all(is_rational(d) for d in diffs):
        raise PreconditionError("eigenvalue differences of the direction must be rational")
    fr = [Fraction(d) for d in diffs]
    num = 0
    den = 1
    for q in fr:
        num = gcd(num, q.numerator)
        den = den * q.denominator // gcd(den, q.denominator)
    unit = Fraction(num, den) if num else Fraction(1)
    # reduce: the gcd of the differences becomes 1
    lvl = [int(q / unit) for q in fr] if num else [0] * len(fr)
    try:
        w = imag_unit()
    except FieldError as exc:
        raise FieldError(f"{exc}; a dyad needs a primitive 4th root of unity") from None
    R = g.rep_dim
    s = [[0] * R for _ in range(R)]
    for lam, k in zip(evs, lvl):
        # projector onto the lam-eigenspace by Lagrange interpolation
        Pm = identity(R)
        for mu in evs:
            if mu == lam:
                continue
            num_m = [[_clean(t_mat[r][c] - (mu if r == c else 0)) for c in range(R)] for r in range(R)]
            Pm = matmul(Pm, num_m)
            inv = div(1, _clean(lam - mu))
            Pm = [[_clean(x * inv) for x in row] for row in Pm]
        coef = w ** (k % 4) if k % 4 else 1
        s = [[_clean(a + coef * b) for a, b in zip(ra, rb)] for ra, rb in zip(s, Pm)]
    # group-level anisotropy: sigma1(s) * s is central
    if sigma1.rep is not None:
        prod = matmul(sigma1.group_action(s), s)
        if not _block_scalar(g, prod):
            raise PreconditionError("torus is not sigma1-anisotropic at the group level")
    phi = inner_automorphism(g, s, "phi")
    sigma2 = phi.compose(sigma1).compose(phi.inverse())
    sigma2.label = f"phi {sigma1.label} phi^-1"
    phi2 = phi.compose(phi)
    checks = {
        "phi^4 = id": phi2.compose(phi2).is_identity(),
        "sigma1 sigma2 = phi^2": sigma1.compose(sigma2).same_map(phi2),
        "sigma1 sigma2 = sigma2 sigma1": sigma1.commutes_with(sigma2),
        "sigma2 involution": sigma2.compose(sigma2).is_identity(),
        "sigma2 != sigma1": not sigma2.same_map(sigma1),
    }
    bad = [k for k, v in checks.items() if not v]
    if bad:
        raise InternalInconsistency(f"dyad identities fail: {bad}")
    return Dyad(sigma1, sigma2, phi, s, checks)


# ---------------------------------------------------------------------------
# canonical triples

@dataclass
class CanonicalTriple:
    theta: Automorphism
    theta_prime: Automorphism
    mu: Automorphism
    g0: list
    decomposition: QuaternionicDecomposition
    checks: dict


def _max_rank_involution_with_diagonal_torus(g: LieAlgebra) -> Automorphism:
    if len(g.summands) != 1:
        raise PreconditionError("canonical triples are built on simple algebras")
    s = g.summands[0]
    if s.kind == "sl":
        return outer_involution(g, None, "negtranspose")
    if s.kind == "so" and s.convention == "antidiag" and s.n % 2 == 0:
        J = antidiag(s.n)
        return _require_involution(automorphism_from_rep(g, ("conj", J), "Int(J)"))
    raise PreconditionError(
        f"no maximal-rank involution with diagonal anisotropic torus is built in for {g.label}"
    )


def canonical_triple(g: LieAlgebra, mu: Automorphism) -> CanonicalTriple:
    """theta of maximal rank with mu's witness in its anisotropic diagonal torus,
    theta' = Int(g0) theta Int(g0)^-1 where g0 is a diagonal square root of s^-1."""
    if mu.is_identity() or not mu.compose(mu).is_identity():
        raise PreconditionError("mu must be a non-trivial involution")
    s = mu.witness
    if s is None or mu.is_inner is not True:
        raise PreconditionError("mu must be inner with a known witness")
    R = g.rep_dim
    if any(s[r][c] for r in range(R) for c in range(R) if r != c):
        raise PreconditionError("mu's witness must be diagonal (it has to lie in the anisotropic torus)")
    theta = _max_rank_involution_with_diagonal_torus(g)
    summ = g.summands[0]
    d = [s[i][i] for i in range(R)]
    b = [None] * R
    if summ.kind == "sl":
        for i in range(R):
            b[i] = sqrt_in_field(div(1, d[i]))
    else:
        for i in range(R // 2):
            b[i] = sqrt_in_field(div(1, d[i]))
            b[R - 1 - i] = div(1, b[i])
    b = [_clean(x) for x in b]
    g0 = [[b[r] if r == c else 0 for c in range(R)] for r in range(R)]
    Ig0 = inner_automorphism(g, g0, "Int(g0)")
    theta_p = Ig0.compose(theta).compose(Ig0.inverse())
    theta_p.label = "theta'"
    if not theta_p.compose(theta_p).is_identity():
        raise InternalInconsistency("theta' is not an involution")
    Q = QuaternionicDecomposition(theta, theta_p)
    x, y = Q.dim_matrix[0]
    u, v = Q.dim_matrix[1]
    rk = g.rank
    t_dim1 = theta.eigenspace(-1).dim - theta.eigenspace(1).dim
    tp_dim1 = theta_p.eigenspace(-1).dim - theta_p.eigenspace(1).dim
    checks = {
        "theta theta' = mu": theta.compose(theta_p).same_map(mu),
        "theta theta' = theta' theta": theta.commutes_with(theta_p),
        "theta maximal rank": t_dim1 == rk,
        "theta' maximal rank": tp_dim1 == rk,
        "u = y": u == y,
        "v - x = rk": v - x == rk,
        "dim g11 - dim g00 = rk": Q.g11.dim - Q.g00.dim == rk,
    }
    bad = [k for k, ok in checks.items() if not ok]
    if bad:
        raise InternalInconsistency(f"canonical triple identities fail: {bad}")
    return CanonicalTriple(theta, theta_p, mu, g0, Q, checks)


# ---------------------------------------------------------------------------
# restricted roots

@dataclass
class RestrictedRootSystem:
    css_basis: list
    roots: list            # weight tuples (values on css_basis)
    spaces: list           # Subspace per root
    zero_space: Subspace

    @property
    def multiplicities(self) -> list[int]:
        return [S.dim for S in self.spaces]

    def multiplicity(self, root) -> int:
        return self.spaces[self.roots.index(root)].dim


def restricted_roots(g: LieAlgebra, css_basis: Sequence[Sequence]) -> RestrictedRootSystem:
    from .errors import LinalgError
    from .tori import weight_decomposition

    try:
        dec = weight_decomposition(g, css_basis)
    except LinalgError as exc:
        raise PreconditionError(f"realign CSS: {exc}") from None
    rs = RestrictedRootSystem([list(c) for c in css_basis], dec.weights, dec.spaces, dec.zero_space)
    neg = {tuple(_clean(-x) for x in w) for w in rs.roots}
    if set(rs.roots) != neg:
        raise InternalInconsistency("restricted roots are not symmetric")
    for w, S in zip(rs.roots, rs.spaces):
        wn = tuple(_clean(-x) for x in w)
        if rs.multiplicity(wn) != S.dim:
            raise InternalInconsistency("opposite restricted roots have different multiplicities")
    return rs


def sigma3_from_form(Phi: RestrictedRootSystem, ell: Sequence, sigma1: Automorphism) -> Automorphism:
    """+1 on g^C and even-level root spaces, -1 on odd levels, level = sum ell_j gamma(c_j)."""
    g = sigma1.algebra
    levels = []
    for w in Phi.roots:
        val = _clean(sum(a * x for a, x in zip(ell, w)))
        if not is_rational(val) or Fraction(val).denominator != 1:
            raise PreconditionError(f"form is not integral on the root {w}")
        levels.append(int(val))
    if all(lv % 2 == 0 for lv in levels):
        raise PreconditionError("form takes only even values on the restricted roots")
    cols, signs = [], []
    for v in Phi.zero_space.basis:
        cols.append(list(v))
        signs.append(1)
    for lv, S in zip(levels, Phi.spaces):
        for v in S.basis:
            cols.append(list(v))
            signs.append(-1 if lv % 2 else 1)
    P = transpose(cols)
    Pinv = inverse(P)
    D = [[signs[i] if i == j else 0 for j in range(len(signs))] for i in range(len(signs))]
    M = matmul(matmul(P, D), Pinv)
    a = Automorphism(g, M, None, f"sigma3[ell={list(ell)}]")
    if not a.compose(a).is_identity() or not a.check_automorphism():
        raise InternalInconsistency("form-defined sigma3 is not an involutive automorphism")
    if not a.commutes_with(sigma1):
        raise InternalInconsistency("form-defined sigma3 does not commute with sigma1")
    return a
