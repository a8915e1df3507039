"""Classical Lie algebras in their defining matrix realizations.

Elements are coordinate vectors (plain lists) in a canonical basis obtained
by row-reducing flattened spanning matrices.  Because that basis is in RREF,
the coordinates of a matrix M in the algebra are simply the entries of M at
the pivot positions, so converting matrices to coordinates is free.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AlgebraError, InternalInconsistency
from .field import parse_scalar
from .linalg import (
    Subspace,
    _clean,
    inverse,
    is_squarefree,
    matmul,
    minimal_polynomial,
    nullspace,
    rank,
    rref,
    transpose,
)

Vec = list


def _sparse(M) -> dict:
    return {(r, c): x for r, row in enumerate(M) for c, x in enumerate(row) if x}


def _sparse_mul(A: dict, B: dict) -> dict:
    brows: dict = {}
    for (r, c), v in B.items():
        brows.setdefault(r, []).append((c, v))
    out: dict = {}
    for (r, k), a in A.items():
        for c, b in brows.get(k, ()):
            key = (r, c)
            out[key] = out.get(key, 0) + a * b
    return {k: v for k, v in out.items() if v}


def _sparse_comm(A: dict, B: dict) -> dict:
    ab = _sparse_mul(A, B)
    for k, v in _sparse_mul(B, A).items():
        ab[k] = ab.get(k, 0) - v
    return {k: _clean(v) for k, v in ab.items() if v}


def antidiag(n: int, signs: Sequence[int] | None = None) -> list[list]:
    signs = signs or [1] * n
    return [[signs[r] if c == n - 1 - r else 0 for c in range(n)] for r in range(n)]


def symplectic_form(n2: int) -> list[list]:
    """antidiag(1,..,1,-1,..,-1); the diagonal matrices diag(a, -reverse(a)) lie in sp."""
    if n2 % 2:
        raise AlgebraError("symplectic form needs even size")
    h = n2 // 2
    return antidiag(n2, [1] * h + [-1] * h)


@dataclass(frozen=True)
class Summand:
    kind: str          # "sl" | "so" | "sp"
    n: int             # matrix size of the summand
    form: tuple | None  # Gram matrix for so/sp
    convention: str    # "antidiag" | "standard" | "" (sl)
    rep_offset: int
    coord_start: int
    coord_stop: int

    @property
    def cartan_type(self) -> tuple[str, int]:
        n = self.n
        if self.kind == "sl":
            return ("A", n - 1)
        if self.kind == "sp":
            return ("C", n // 2)
        if n % 2:
            return ("B", (n - 1) // 2)
        return ("D", n // 2)

    @property
    def rank(self) -> int:
        return self.cartan_type[1]

    @property
    def exponents(self) -> list[int]:
        t, r = self.cartan_type
        if t == "A":
            return list(range(1, r + 1))
        if t in ("B", "C"):
            return list(range(1, 2 * r, 2))
        return sorted(list(range(1, 2 * r - 2, 2)) + [r - 1])


class Element:
    """An element of a LieAlgebra, carried as a coordinate vector."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: "LieAlgebra", coeffs: Sequence):
        if len(coeffs) != algebra.dim:
            raise AlgebraError(f"expected {algebra.dim} coordinates, got {len(coeffs)}")
        self.algebra = algebra
        self.coeffs = [_clean(c) for c in coeffs]

    def _same(self, other: "Element"):
        if other.algebra is not self.algebra:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other):
        self._same(other)
        return Element(self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._same(other)
        return Element(self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rmul__(self, c):
        return Element(self.algebra, [c * a for a in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, Element) and other.algebra is self.algebra and other.coeffs == self.coeffs

    def __repr__(self):
        return f"Element({self.algebra.label}, {self.coeffs})"

    def bracket(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, self.algebra.bracket(self.coeffs, other.coeffs))

    def matrix(self):
        return self.algebra.to_matrix(self.coeffs)


class LieAlgebra:
    """Matrix Lie algebra with sparse structure constants.

    ``sc[i][j]`` lists the pairs (k, c) with [b_i, b_j] = sum c * b_k.
    """

    def __init__(self, label: str, rep_dim: int, spanning: Iterable, summands: Sequence[Summand]):
        self.label = label
        self.rep_dim = rep_dim
        R = rep_dim
        flat = [[x for row in M for x in row] for M in spanning]
        red, piv = rref(flat, R * R)
        self._flat_basis = red
        self.pivots = list(piv)
        self.dim = len(red)
        self.summands = list(summands)
        self.basis = [[list(row[r * R:(r + 1) * R]) for r in range(R)] for row in red]
        self._sparse_basis = [_sparse(M) for M in self.basis]
        self._build_structure_constants()
        self._killing = None
        self._nnz_avg = max(1.0, sum(len(self.sc[i][j]) for i in range(self.dim) for j in range(self.dim)) / max(1, self.dim ** 2))

    # -- structure ----------------------------------------------------
    def _build_structure_constants(self):
        n = self.dim
        sc = [[() for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                C = _sparse_comm(self._sparse_basis[i], self._sparse_basis[j])
                coords = self._coords_from_sparse(C)
                if _sparse_from_coords(self, coords) != C:
                    raise AlgebraError(f"{self.label}: bracket of basis elements {i},{j} leaves the span")
                entries = tuple((k, c) for k, c in enumerate(coords) if c)
                sc[i][j] = entries
                sc[j][i] = tuple((k, -c) for k, c in entries)
        self.sc = sc

    def _coords_from_sparse(self, C: dict) -> list:
        R = self.rep_dim
        return [_clean(C.get((p // R, p % R), 0)) for p in self.pivots]

    @property
    def rank(self) -> int:
        return sum(s.rank for s in self.summands)

    @property
    def exponents(self) -> list[int]:
        return sorted(e for s in self.summands for e in s.exponents)

    @property
    def k0(self) -> int:
        return sum(1 for e in self.exponents if e % 2 == 0)

    @property
    def k1(self) -> int:
        return sum(1 for e in self.exponents if e % 2 == 1)

    @property
    def form_convention(self) -> list[str]:
        return [s.convention for s in self.summands]

    def __repr__(self):
        return f"LieAlgebra({self.label}, dim={self.dim})"

    # -- conversions --------------------------------------------------
    def to_matrix(self, v: Sequence) -> list[list]:
        R = self.rep_dim
        M = [[0] * R for _ in range(R)]
        for a, B in zip(v, self._sparse_basis):
            if a:
                for (r, c), x in B.items():
                    M[r][c] = M[r][c] + a * x
        return [[_clean(x) for x in row] for row in M]

    def from_matrix(self, M, check: bool = True) -> list:
        R = self.rep_dim
        coords = [_clean(M[p // R][p % R]) for p in self.pivots]
        if check:
            back = self.to_matrix(coords)
            if any(_clean(a - b) for ra, rb in zip(back, M) for a, b in zip(ra, rb)):
                raise AlgebraError(f"matrix does not lie in {self.label}")
        return coords

    def element(self, coeffs: Sequence) -> Element:
        return Element(self, coeffs)

    def element_from_matrix(self, M) -> Element:
        return Element(self, self.from_matrix(M))

    def zero(self) -> list:
        return [0] * self.dim

    def unit(self, i: int) -> list:
        v = [0] * self.dim
        v[i] = 1
        return v

    def full_space(self) -> Subspace:
        return Subspace.full(self.dim)

    # -- bracket, ad, Killing ----------------------------------------
    def bracket(self, x: Sequence, y: Sequence) -> list:
        nx = [(i, a) for i, a in enumerate(x) if a]
        ny = [(j, b) for j, b in enumerate(y) if b]
        if not nx or not ny:
            return [0] * self.dim
        if len(nx) * len(ny) * self._nnz_avg > 2 * self.rep_dim ** 3:
            X, Y = self.to_matrix(x), self.to_matrix(y)
            C = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(matmul(X, Y), matmul(Y, X))]
            return self.from_matrix(C, check=False)
        out = [0] * self.dim
        sc = self.sc
        for i, a in nx:
            row = sc[i]
            for j, b in ny:
                ent = row[j]
                if ent:
                    ab = a * b
                    for k, c in ent:
                        out[k] = out[k] + ab * c
        return [_clean(v) for v in out]

    def ad(self, x: Sequence) -> list[list]:
        """Matrix of ad x in the coordinate basis (columns = images of basis vectors)."""
        n = self.dim
        M = [[0] * n for _ in range(n)]
        for i, a in enumerate(x):
            if a:
                row = self.sc[i]
                for j in range(n):
                    for k, c in row[j]:
                        M[k][j] = M[k][j] + a * c
        return [[_clean(v) for v in r] for r in M]

    def killing_matrix(self) -> list[list]:
        """Gram matrix K_ij = tr(ad b_i ad b_j), computed from the structure constants."""
        if self._killing is None:
            n = self.dim
            ads = []
            for i in range(n):
                d = {}
                for j in range(n):
                    for k, c in self.sc[i][j]:
                        d[(k, j)] = c
                ads.append(d)
            K = [[0] * n for _ in range(n)]
            for i in range(n):
                Ai = ads[i]
                for j in range(i, n):
                    Aj = ads[j]
                    s = 0
                    for (m, l), c in Ai.items():
                        v = Aj.get((l, m))
                        if v:
                            s = s + c * v
                    K[i][j] = K[j][i] = _clean(s)
            self._killing = K
        return self._killing

    def killing(self, x: Sequence, y: Sequence):
        K = self.killing_matrix()
        s = 0
        for i, a in enumerate(x):
            if a:
                row = K[i]
                for j, b in enumerate(y):
                    if b and row[j]:
                        s = s + a * row[j] * b
        return _clean(s)

    # -- subspaces ----------------------------------------------------
    def span(self, vectors: Iterable[Sequence]) -> Subspace:
        return Subspace.span(list(vectors), self.dim)

    def centralizer(self, S: Subspace | Sequence[Sequence], W: Subspace | None = None) -> Subspace:
        """{w in W : [s, w] = 0 for every s in S}."""
        W = W if W is not None else self.full_space()
        gens = S.basis if isinstance(S, Subspace) else [list(s) for s in S]
        gens = [g for g in gens if any(g)]
        if not gens or W.dim == 0:
            return W
        rows = []
        for s in gens:
            images = [self.bracket(s, w) for w in W.basis]
            for k in range(self.dim):
                row = [img[k] for img in images]
                if any(row):
                    rows.append(row)
        if not rows:
            return W
        ker = nullspace(rows, W.dim)
        return Subspace.span([W.combine(c) for c in ker.basis], self.dim) if ker.dim else Subspace.zero(self.dim)

    def bracket_space(self, A: Subspace, B: Subspace) -> Subspace:
        vecs = [self.bracket(a, b) for a in A.basis for b in B.basis]
        return Subspace.span(vecs, self.dim) if vecs else Subspace.zero(self.dim)

    def bracket_included(self, A: Subspace, B: Subspace, C: Subspace) -> bool:
        """[A, B] is contained in C (checked on the full bases)."""
        ann = C.annihilator().basis
        for a in A.basis:
            for b in B.basis:
                v = self.bracket(a, b)
                if any(v):
                    for w in ann:
                        s = 0
                        for x, y in zip(v, w):
                            if x and y:
                                s = s + x * y
                        if s:
                            return False
        return True

    def is_abelian(self, S: Subspace) -> bool:
        b = S.basis
        return all(not any(self.bracket(b[i], b[j])) for i in range(len(b)) for j in range(i + 1, len(b)))

    def matrix_pattern_subspace(self, allowed) -> Subspace:
        """Elements whose defining matrix vanishes outside positions where allowed(r, c) is true."""
        R = self.rep_dim
        rows = []
        for r in range(R):
            for c in range(R):
                if allowed(r, c):
                    continue
                row = [B.get((r, c), 0) for B in self._sparse_basis]
                if any(row):
                    rows.append(row)
        return nullspace(rows, self.dim) if rows else self.full_space()

    def diagonal_subspace(self) -> Subspace:
        return self.matrix_pattern_subspace(lambda r, c: r == c)

    def strictly_upper_subspace(self) -> Subspace:
        return self.matrix_pattern_subspace(lambda r, c: r < c)

    # -- sampling -----------------------------------------------------
    def random_in(self, S: Subspace, rng: random.Random, box: int = 3) -> list:
        coeffs = [rng.randint(-box, box) for _ in range(S.dim)]
        return S.combine(coeffs)

    # -- element classification ---------------------------------------
    def minimal_polynomial_of(self, x: Sequence):
        return minimal_polynomial(self.to_matrix(x))

    def is_semisimple(self, x: Sequence) -> bool:
        return is_squarefree(self.minimal_polynomial_of(x))

    def is_nilpotent(self, x: Sequence) -> bool:
        mp = self.minimal_polynomial_of(x)
        return all(not c for c in mp.coeffs[:-1])

    def classify_element(self, x: Sequence) -> str:
        if not any(x):
            return "zero"
        if self.is_semisimple(x):
            return "semisimple"
        if self.is_nilpotent(x):
            return "nilpotent"
        return "mixed"

    def centralizer_dim(self, x: Sequence) -> int:
        return self.dim - rank(self.ad(x), self.dim)

    def is_regular(self, x: Sequence) -> bool:
        return self.centralizer_dim(x) == self.rank

    def certify_rank(self, rng: random.Random | None = None, tries: int = 20) -> list:
        """Find a semisimple x with abelian centralizer and check dim z(x) against the rank.

        A semisimple x whose centralizer is abelian has a Cartan subalgebra as
        centralizer, so dim z(x) is the rank.  Returns the witness.
        """
        rng = rng or random.Random(f"rank:{self.label}")
        for t in range(tries):
            x = self.random_in(self.full_space(), rng, box=3 + t)
            if not self.is_semisimple(x):
                continue
            z = self.centralizer([x])
            if self.is_abelian(z):
                if z.dim != self.rank:
                    raise InternalInconsistency(
                        f"{self.label}: centralizer of a regular semisimple element has dim {z.dim}, "
                        f"type table says rank {self.rank}",
                        counterexample=x,
                    )
                return x
        raise AlgebraError(f"{self.label}: no regular semisimple witness after {tries} samples")

    # -- verification -------------------------------------------------
    def check_jacobi(self) -> bool:
        n = self.dim
        sc = self.sc

        def br_basis_vec(entries, k):
            out = {}
            for i, c in entries:
                for m, d in sc[i][k]:
                    out[m] = out.get(m, 0) + c * d
            return out

        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    acc: dict = {}
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        for m, v in br_basis_vec(sc[a][b], c).items():
                            acc[m] = acc.get(m, 0) + v
                    if any(_clean(v) for v in acc.values()):
                        return False
        return True

    # -- group action -------------------------------------------------
    def conjugate(self, s, x: Sequence, s_inv=None) -> list:
        s_inv = s_inv if s_inv is not None else inverse(s)
        return self.from_matrix(matmul(matmul(s, self.to_matrix(x)), s_inv), check=False)


def _sparse_from_coords(g: LieAlgebra, coords) -> dict:
    out: dict = {}
    for a, B in zip(coords, g._sparse_basis):
        if a:
            for k, x in B.items():
                out[k] = out.get(k, 0) + a * x
    return {k: _clean(v) for k, v in out.items() if _clean(v)}


# ---------------------------------------------------------------------------
# constructors

def _unit(n, r, c):
    M = [[0] * n for _ in range(n)]
    M[r][c] = 1
    return M


def _form_algebra_spanning(J) -> list:
    n = len(J)
    Jinv = inverse(J)
    out = []
    for r in range(n):
        for c in range(n):
            E = _unit(n, r, c)
            P = matmul(matmul(Jinv, transpose(E)), J)
            G = [[_clean(a - b) for a, b in zip(ra, rb)] for ra, rb in zip(E, P)]
            if any(any(row) for row in G):
                out.append(G)
    return out


def make_sl(n: int) -> LieAlgebra:
    if n < 2:
        raise AlgebraError("sl(n) needs n >= 2")
    span = [_unit(n, r, c) for r in range(n) for c in range(n) if r != c]
    for i in range(n - 1):
        M = _unit(n, i, i)
        M[n - 1][n - 1] = -1
        span.append(M)
    s = Summand("sl", n, None, "", 0, 0, n * n - 1)
    return LieAlgebra(f"sl({n})", n, span, [s])


def make_so(n: int, form_convention: str = "antidiag") -> LieAlgebra:
    if n < 3:
        raise AlgebraError("so(n) needs n >= 3")
    if form_convention == "antidiag":
        J = antidiag(n)
    elif form_convention == "standard":
        J = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    else:
        raise AlgebraError(f"unknown form convention {form_convention!r}")
    s = Summand("so", n, tuple(map(tuple, J)), form_convention, 0, 0, n * (n - 1) // 2)
    return LieAlgebra(f"so({n},{form_convention})", n, _form_algebra_spanning(J), [s])


def make_sp(n2: int) -> LieAlgebra:
    if n2 < 2 or n2 % 2:
        raise AlgebraError("sp(2n) needs an even size >= 2")
    J = symplectic_form(n2)
    h = n2 // 2
    s = Summand("sp", n2, tuple(map(tuple, J)), "antidiag", 0, 0, h * (2 * h + 1))
    return LieAlgebra(f"sp({n2})", n2, _form_algebra_spanning(J), [s])


def direct_sum(g: LieAlgebra, h: LieAlgebra) -> LieAlgebra:
    """Block-diagonal realization; coordinates of g come first, then those of h."""
    R = g.rep_dim + h.rep_dim
    span = []
    for B in g.basis:
        M = [[0] * R for _ in range(R)]
        for r in range(g.rep_dim):
            M[r][: g.rep_dim] = B[r]
        span.append(M)
    for B in h.basis:
        M = [[0] * R for _ in range(R)]
        for r in range(h.rep_dim):
            M[g.rep_dim + r][g.rep_dim:] = B[r]
        span.append(M)
    summands = list(g.summands)
    for s in h.summands:
        summands.append(
            Summand(s.kind, s.n, s.form, s.convention, s.rep_offset + g.rep_dim,
                    s.coord_start + g.dim, s.coord_stop + g.dim)
        )
    out = LieAlgebra(f"{g.label}+{h.label}", R, span, summands)
    if out.dim != g.dim + h.dim:
        raise InternalInconsistency("direct sum dimension is not additive")
    return out


_SPEC_RE = re.compile(r"^\s*(sl|so|sp)\s*\(\s*(\d+)\s*(?:,\s*(antidiag|standard)\s*)?\)\s*$")


def parse_algebra(spec: str) -> LieAlgebra:
    """Build an algebra from strings such as "sl(4)", "so(8,antidiag)", "sp(4)", "sl(2)+sl(2)"."""
    parts = [p for p in spec.split("+")]
    algs = []
    for p in parts:
        m = _SPEC_RE.match(p)
        if not m:
            raise AlgebraError(f"cannot parse algebra spec {p!r}")
        kind, n, conv = m.group(1), int(m.group(2)), m.group(3)
        if kind == "sl":
            if conv:
                raise AlgebraError("sl takes no form convention")
            algs.append(make_sl(n))
        elif kind == "so":
            algs.append(make_so(n, conv or "antidiag"))
        else:
            algs.append(make_sp(n))
    g = algs[0]
    for h in algs[1:]:
        g = direct_sum(g, h)
    return g


def parse_matrix(text: str) -> list[list]:
    """Parse "[[1,0],[0,i]]"-style matrices with scalar entries in Q(zeta_m)."""
    t = text.strip()
    if not (t.startswith("[[") and t.endswith("]]")):
        raise AlgebraError(f"matrix literal must look like [[..],[..]]: {text!r}")
    rows = re.findall(r"\[([^\[\]]*)\]", t[1:-1])
    M = [[parse_scalar(e) for e in r.split(",")] for r in rows]
    if not M or any(len(r) != len(M[0]) for r in M):
        raise AlgebraError(f"ragged matrix literal {text!r}")
    return M


def exponents_from_regular_nilpotent(g: LieAlgebra, e: Sequence) -> list[int]:
    """Recover exponents from the kernel filtration of ad e for a regular nilpotent e.

    Under a principal sl2 the adjoint module splits into irreducibles of
    dimension 2m+1 (m an exponent), so dim ker (ad e)^k = sum_i min(k, 2 m_i + 1).
    """
    A = g.ad(e)
    n = g.dim
    dims = [0]
    P = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    while dims[-1] < n:
        P = matmul(A, P)
        dims.append(n - rank(P, n))
        if len(dims) > n + 1:
            raise AlgebraError("ad e is not nilpotent")
    # number of blocks of size >= k is dims[k] - dims[k-1]
    counts = [dims[k] - dims[k - 1] for k in range(1, len(dims))]
    sizes = []
    for k in range(len(counts)):
        nxt = counts[k + 1] if k + 1 < len(counts) else 0
        sizes += [k + 1] * (counts[k] - nxt)
    if any(s % 2 == 0 for s in sizes) or len(sizes) != g.rank:
        raise AlgebraError("block structure of ad e is not that of a regular nilpotent")
    return sorted((s - 1) // 2 for s in sizes)
