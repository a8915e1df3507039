"""Exact linear algebra over Q(zeta_m).

Matrices are plain lists of rows.  Entries are ``int``, ``Fraction`` or
:class:`~isolab.field.FieldScalar`.  Purely rational input is routed
through integer fraction-free elimination (row operations
``p*row_i - a*row_r`` followed by removal of the row content), which keeps
entries small and avoids ``Fraction`` overhead; anything involving an
irrational scalar goes through ordinary Gauss-Jordan elimination over the
field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import LinalgError
from .field import FieldScalar, get_modulus, is_rational, to_fraction_or_field, zeta

Row = Sequence


# ---------------------------------------------------------------------------
# scalar helpers

def div(a, b):
    """Exact quotient that never produces a float."""
    if type(b) is int and type(a) is int:
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    if is_rational(a) and is_rational(b):
        q = Fraction(a) / Fraction(b)
        return q.numerator if q.denominator == 1 else q
    return to_fraction_or_field(a / b)


def _all_rational(rows: Iterable[Row]) -> bool:
    for r in rows:
        for x in r:
            t = type(x)
            if t is not int and t is not Fraction:
                return False
    return True


def _norm(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


# ---------------------------------------------------------------------------
# elimination kernels

def _rows_to_int(rows: Iterable[Row]) -> list[list[int]]:
    out = []
    for r in rows:
        den = 1
        for x in r:
            if type(x) is Fraction and x.denominator != 1:
                d = x.denominator
                den = den * d // gcd(den, d)
        if den == 1:
            ir = [int(x) for x in r]
        else:
            ir = [int(x * den) for x in r]
        if any(ir):
            c = gcd(*ir)
            if c > 1:
                ir = [x // c for x in ir]
            out.append(ir)
    return out


def _rref_int(mat: list[list[int]], ncols: int, full: bool = True):
    nrows = len(mat)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        bestv = 0
        for i in range(r, nrows):
            v = mat[i][c]
            if v:
                av = abs(v)
                if best < 0 or av < bestv:
                    best, bestv = i, av
                    if av == 1:
                        break
        if best < 0:
            continue
        mat[r], mat[best] = mat[best], mat[r]
        prow = mat[r]
        p = prow[c]
        lo = 0 if full else r + 1
        for i in range(lo, nrows):
            if i == r:
                continue
            row = mat[i]
            a = row[c]
            if a:
                g = gcd(p, a)
                mp, ma = p // g, a // g
                if mp == 1:
                    new = [x - ma * y for x, y in zip(row, prow)]
                else:
                    new = [mp * x - ma * y for x, y in zip(row, prow)]
                cont = gcd(*new)
                if cont > 1:
                    new = [x // cont for x in new]
                mat[i] = new
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def _rref_field(rows: list[list], ncols: int):
    mat = [[x if not is_rational(x) else Fraction(x) for x in row] for row in rows]
    mat = [row for row in mat if any(row)]
    nrows = len(mat)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        for i in range(r, nrows):
            if mat[i][c]:
                best = i
                if is_rational(mat[i][c]):
                    break
        if best < 0:
            continue
        mat[r], mat[best] = mat[best], mat[r]
        p = mat[r][c]
        inv = (1 / p) if not is_rational(p) else Fraction(1) / p
        prow = [x * inv if x else x for x in mat[r]]
        mat[r] = prow
        for i in range(nrows):
            if i != r:
                a = mat[i][c]
                if a:
                    mat[i] = [x - a * y if y else x for x, y in zip(mat[i], prow)]
        pivots.append(c)
        r += 1
    return [[to_fraction_or_field(x) for x in row] for row in mat[:r]], pivots


def rref(rows: Iterable[Row], ncols: int | None = None) -> tuple[list[tuple], list[int]]:
    """Reduced row-echelon form: (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise LinalgError("ncols required for an empty matrix")
        ncols = len(rows[0])
    for r in rows:
        if len(r) != ncols:
            raise LinalgError("ragged matrix")
    if not rows:
        return [], []
    if _all_rational(rows):
        mat, pivots = _rref_int(_rows_to_int(rows), ncols)
        out = []
        for row, c in zip(mat, pivots):
            p = row[c]
            out.append(tuple(x // p if x % p == 0 else Fraction(x, p) for x in row))
        return out, pivots
    red, pivots = _rref_field(rows, ncols)
    return [tuple(r) for r in red], pivots


def rank(M: Iterable[Row], ncols: int | None = None) -> int:
    """Rank over Q(zeta_m) by fraction-free (rational) or field elimination."""
    rows = [list(r) for r in M]
    if not rows:
        return 0
    ncols = ncols if ncols is not None else len(rows[0])
    if _all_rational(rows):
        mat, pivots = _rref_int(_rows_to_int(rows), ncols, full=False)
        return len(pivots)
    return len(_rref_field(rows, ncols)[1])


# ---------------------------------------------------------------------------
# Subspace

class Subspace:
    """A subspace of k^n stored by its canonical RREF basis."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_hash")

    def __init__(self, ambient_dim: int, basis: Sequence[tuple], pivots: Sequence[int]):
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in basis)
        self.pivots = tuple(pivots)
        self._hash = None

    # constructors
    @classmethod
    def span(cls, vectors: Iterable[Row], ambient_dim: int) -> "Subspace":
        red, piv = rref(vectors, ambient_dim)
        return cls(ambient_dim, red, piv)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)], range(n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self.basis))
        return self._hash

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise LinalgError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def contains(self, v: Row) -> bool:
        w = list(v)
        for row, p in zip(self.basis, self.pivots):
            a = w[p]
            if a:
                w = [x - a * y if y else x for x, y in zip(w, row)]
        return not any(w)

    def contains_sparse(self, v: dict) -> bool:
        """Membership for a vector given as {index: value}."""
        if not v:
            return True
        piv_index = {p: r for r, p in enumerate(self.pivots)}
        acc = {}
        for k, a in v.items():
            if a and k in piv_index:
                row = self.basis[piv_index[k]]
                for j, y in enumerate(row):
                    if y:
                        acc[j] = acc.get(j, 0) + a * y
        for k in set(v) | set(acc):
            if v.get(k, 0) != acc.get(k, 0):
                return False
        return True

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(r) for r in self.basis)

    def coords(self, v: Row) -> list:
        """Coordinates of v (assumed to lie in the subspace) in the RREF basis."""
        return [v[p] for p in self.pivots]

    def combine(self, coeffs: Sequence) -> list:
        out = [0] * self.ambient_dim
        for c, row in zip(coeffs, self.basis):
            if c:
                for j, y in enumerate(row):
                    if y:
                        out[j] = out[j] + c * y
        return [to_fraction_or_field(x) if not is_rational(x) else _norm(x) for x in out]

    def annihilator(self) -> "Subspace":
        """Vectors w with <b, w> = 0 for every basis row b."""
        return nullspace(self.basis, self.ambient_dim)


def intersect(A: Subspace, B: Subspace) -> Subspace:
    """A ∩ B computed as the annihilator of ann(A) + ann(B)."""
    A._check(B)
    n = A.ambient_dim
    if A.dim == 0 or B.dim == 0:
        return Subspace.zero(n)
    if A.dim == n:
        return B
    if B.dim == n:
        return A
    rows = list(A.annihilator().basis) + list(B.annihilator().basis)
    return nullspace(rows, n)


def nullspace(M: Iterable[Row], ncols: int | None = None) -> Subspace:
    """Right kernel {v : M v = 0} as a canonical subspace."""
    rows = [list(r) for r in M]
    if ncols is None:
        if not rows:
            raise LinalgError("ncols required for an empty matrix")
        ncols = len(rows[0])
    if not rows:
        return Subspace.full(ncols)
    red, piv = rref(rows, ncols)
    pivset = set(piv)
    vecs = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(red, piv):
            if row[f]:
                v[p] = -row[f]
        vecs.append(v)
    return Subspace.span(vecs, ncols) if vecs else Subspace.zero(ncols)


# ---------------------------------------------------------------------------
# dense matrix helpers

@dataclass(frozen=True)
class Mat:
    """Immutable rectangular matrix wrapper used at API boundaries."""

    rows: tuple

    @classmethod
    def of(cls, rows: Iterable[Row]) -> "Mat":
        rows = tuple(tuple(r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise LinalgError("ragged matrix")
        return cls(rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def rank(self) -> int:
        return rank(self.rows, self.ncols)

    def nullspace(self) -> Subspace:
        return nullspace(self.rows, self.ncols)

    def __matmul__(self, other: "Mat") -> "Mat":
        return Mat.of(matmul(self.rows, other.rows))


def identity(n: int) -> list[list]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> list[list]:
    return [[0] * c for _ in range(r)]


def transpose(A: Sequence[Row]) -> list[list]:
    return [list(c) for c in zip(*A)] if A else []


def matmul(A: Sequence[Row], B: Sequence[Row]) -> list[list]:
    if not A:
        return []
    nb = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * nb
        for k, a in enumerate(row):
            if a:
                brow = B[k]
                for j, b in enumerate(brow):
                    if b:
                        acc[j] = acc[j] + a * b
        out.append([_clean(x) for x in acc])
    return out


def _clean(x):
    if type(x) is Fraction:
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, FieldScalar):
        return to_fraction_or_field(x)
    return x


def matvec(A: Sequence[Row], v: Row) -> list:
    out = []
    for row in A:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = acc + a * x
        out.append(_clean(acc))
    return out


def matadd(A, B, alpha=1):
    return [[_clean(a + alpha * b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scalar_mat(A, c):
    return [[_clean(c * a) if a else 0 for a in row] for row in A]


def trace(A) -> object:
    t = 0
    for i, row in enumerate(A):
        t = t + row[i]
    return _clean(t)


def is_zero_matrix(A) -> bool:
    return not any(any(r) for r in A)


def inverse(A: Sequence[Row]) -> list[list]:
    n = len(A)
    aug = [list(A[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise LinalgError("matrix is singular")
    return [[_norm(x) for x in row[n:]] for row in red[:n]]


def det(A: Sequence[Row]):
    """Determinant via Bareiss (rational) or Gaussian elimination (field)."""
    n = len(A)
    if n == 0:
        return 1
    if _all_rational(A):
        M = [[Fraction(x) for x in row] for row in A]
        den = 1
        for row in M:
            for x in row:
                den = den * x.denominator // gcd(den, x.denominator)
        Mi = [[int(x * den) for x in row] for row in M]
        return _norm(Fraction(_bareiss_det(Mi), den ** n))
    M = [[Fraction(x) if is_rational(x) else x for x in row] for row in A]
    sign = 1
    d = 1
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            sign = -sign
        piv = M[c][c]
        d = d * piv
        inv = div(1, piv)
        for i in range(c + 1, n):
            a = M[i][c]
            if a:
                f = a * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return _clean(sign * d)


def _bareiss_det(M: list[list[int]]) -> int:
    n = len(M)
    M = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k]), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def charpoly(A: Sequence[Row]) -> list:
    """Coefficients c_0..c_n of det(tI - A), low degree first (Faddeev-LeVerrier)."""
    n = len(A)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = zeros(n, n)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        Mk = matmul(A, Mk) if k > 1 else [[0] * n for _ in range(n)]
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            Mk[i][i] = _clean(Mk[i][i] + c_prev)
        AM = matmul(A, Mk)
        coeffs[n - k] = div(-trace(AM), k)
    return coeffs


def pfaffian(A: Sequence[Row]):
    """Pfaffian of a skew-symmetric matrix by exact skew elimination."""
    n = len(A)
    if n % 2:
        return 0
    M = [[Fraction(x) if is_rational(x) else x for x in row] for row in A]
    result = 1
    for k in range(0, n - 1, 2):
        # find a pivot in row k to the right of the diagonal
        p = next((j for j in range(k + 1, n) if M[k][j]), None)
        if p is None:
            return 0
        if p != k + 1:
            # swap index k+1 with p (rows and columns), flips the sign
            M[k + 1], M[p] = M[p], M[k + 1]
            for row in M:
                row[k + 1], row[p] = row[p], row[k + 1]
            result = -result
        piv = M[k][k + 1]
        result = result * piv
        inv = div(1, piv)
        # eliminate rows/cols >= k+2 using the 2x2 block at (k, k+1)
        for i in range(k + 2, n):
            # row_i -= (M[i][k+1]/M[k][k+1]) row_k + (-M[i][k]/M[k][k+1]) row_{k+1}
            a = M[i][k + 1] * inv
            b = M[i][k] * inv
            if a or b:
                M[i] = [x - a * yk + b * yk1 for x, yk, yk1 in zip(M[i], M[k], M[k + 1])]
        for i in range(k + 2, n):
            a = M[k + 1][i] * inv
            b = M[k][i] * inv
            if a or b:
                for row in M:
                    row[i] = row[i] - a * row[k] + b * row[k + 1]
    return _clean(result)


# ---------------------------------------------------------------------------
# univariate polynomials

class UniPoly:
    """Polynomial with exact coefficients, stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_clean(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = div(1, self.lead())
        return UniPoly([c * inv for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)})"

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return _clean(acc)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def derivative(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), UniPoly(rem)
        quot = [0] * (dq + 1)
        inv = div(1, other.lead())
        od = other.degree
        for k in range(dq, -1, -1):
            c = _clean(rem[k + od] * inv)
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    if b:
                        rem[k + j] = _clean(rem[k + j] - c * b)
        return UniPoly(quot), UniPoly(rem[:od])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def evaluate_matrix(self, A: Sequence[Row]) -> list[list]:
        n = len(A)
        acc = zeros(n, n)
        for c in reversed(self.coeffs):
            acc = matmul(acc, A)
            for i in range(n):
                acc[i][i] = _clean(acc[i][i] + c)
        return acc


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def is_squarefree(p: UniPoly) -> bool:
    """True iff gcd(p, p') is a nonzero constant."""
    if p.is_zero():
        return False
    return poly_gcd(p, p.derivative()).degree == 0


def minimal_polynomial(A: Sequence[Row]) -> UniPoly:
    """Monic minimal polynomial, found from the first linear dependency among
    the flattened powers I, A, A^2, ..."""
    n = len(A)
    if n == 0:
        return UniPoly([1])
    flat_rows: list[list] = []
    P = identity(n)
    red: list = []
    piv: list = []
    powers = []
    for k in range(n + 1):
        vec = [x for row in P for x in row]
        powers.append(vec)
        # test dependency of vec on earlier powers by solving for coefficients
        cand = Subspace(n * n, red, piv)
        if cand.contains(vec):
            # solve sum c_j A^j = A^k via the transposed system
            cols = transpose(powers[:k])  # (n*n) x k
            aug = [list(r) + [v] for r, v in zip(cols, vec)]
            rr, pp = rref(aug, k + 1)
            sol = [0] * k
            for row, p in zip(rr, pp):
                if p < k:
                    sol[p] = row[k]
            return UniPoly([-c for c in sol] + [1])
        red, piv = rref(list(red) + [vec], n * n)
        flat_rows.append(vec)
        P = matmul(P, A)
    raise LinalgError("no annihilating polynomial found (Cayley-Hamilton violated?)")


def interpolate(points: Sequence[tuple]) -> UniPoly:
    """Unique polynomial of degree < len(points) through the given points (Newton form)."""
    xs = [p[0] for p in points]
    if len(set(_key(x) for x in xs)) != len(xs):
        raise LinalgError("interpolation abscissae must be pairwise distinct")
    n = len(points)
    coef = [p[1] for p in points]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = div(coef[i] - coef[i - 1], xs[i] - xs[i - j])
    poly = UniPoly([coef[n - 1]]) if n else UniPoly()
    for i in range(n - 2, -1, -1):
        poly = poly * UniPoly([-xs[i], 1]) + UniPoly([coef[i]])
    return poly


def _key(x):
    if is_rational(x):
        return Fraction(x)
    return x


# ---------------------------------------------------------------------------
# roots of polynomials inside Q(zeta_m)

def _divisors(n: int, limit: int = 10 ** 7) -> list[int]:
    n = abs(n)
    if n == 0:
        return [0]
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
        if d > limit:
            raise LinalgError("constant term too large for rational root search")
    return small + large[::-1]


def rational_roots(p: UniPoly) -> list[Fraction]:
    """Distinct rational roots of a polynomial with rational coefficients."""
    if p.is_zero():
        raise LinalgError("zero polynomial has every number as a root")
    if not all(is_rational(c) for c in p.coeffs):
        raise LinalgError("rational_roots needs rational coefficients")
    sq = p // poly_gcd(p, p.derivative())
    cs = [Fraction(c) for c in sq.coeffs]
    roots = []
    k = 0
    while k < len(cs) and cs[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    cs = cs[k:]
    if len(cs) <= 1:
        return roots
    den = 1
    for c in cs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    g = gcd(*ints)
    ints = [x // g for x in ints]
    a0, an = ints[0], ints[-1]
    q = UniPoly(ints)
    for num in _divisors(a0):
        for dd in _divisors(an):
            for s in (1, -1):
                x = Fraction(s * num, dd)
                if x not in roots and q(x) == 0:
                    roots.append(x)
    return sorted(roots)


def roots_in_field(p: UniPoly, m: int | None = None) -> list:
    """Roots of p lying in Q(zeta_m) of the form q * zeta^k with q rational.

    Returns distinct roots; callers compare the count with the degree of the
    squarefree part to decide whether p splits completely this way.
    """
    m = m or get_modulus()
    if p.degree <= 0:
        return []
    found: list = []
    seen = set()
    for k in range(m):
        u = zeta(k, m) if k else 1
        # coefficients of p(u * t)
        shifted = []
        uk = 1
        for c in p.coeffs:
            shifted.append(_clean(c * uk))
            uk = _clean(uk * u)
        # split into rational coordinate polynomials and take their gcd
        comps = _coordinate_polys(shifted, m)
        g = None
        for comp in comps:
            if comp.is_zero():
                continue
            g = comp if g is None else poly_gcd(g, comp)
        if g is None or g.degree <= 0:
            continue
        for r in rational_roots(g):
            root = _clean(r * u)
            key = _key(root)
            if key not in seen:
                seen.add(key)
                found.append(root)
    return found


def _coordinate_polys(coeffs: list, m: int) -> list[UniPoly]:
    from .field import field_degree

    d = field_degree(m)
    cols = [[0] * len(coeffs) for _ in range(d)]
    for j, c in enumerate(coeffs):
        if is_rational(c):
            cols[0][j] = c
        else:
            for t, x in enumerate(c.coeffs):
                cols[t][j] = x
    return [UniPoly(c) for c in cols]


def eigenvalues(A: Sequence[Row]) -> list:
    """Distinct eigenvalues of a diagonalisable-over-Q(zeta_m) matrix.

    Raises LinalgError when the minimal polynomial does not split into
    factors t - q*zeta^k.
    """
    mp = minimal_polynomial(A)
    sq = mp // poly_gcd(mp, mp.derivative())
    roots = roots_in_field(sq)
    if len(roots) != sq.degree:
        raise LinalgError("spectrum is not contained in the rational multiples of roots of unity")
    return roots
