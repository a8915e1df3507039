"""Tori acting on a matrix Lie algebra: weight decompositions and chambers.

A torus is given by a list of commuting semisimple elements (coordinate
vectors).  Their defining matrices are diagonalised simultaneously over
Q(zeta_m); the weight of the matrix unit (a, b) in that eigenbasis is
d(a) - d(b), so weight spaces of any torus-stable subspace are obtained by
masking the conjugated matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import Inconclusive, LinalgError
from .field import field_degree, is_rational
from .lie import LieAlgebra
from .linalg import Subspace, _clean, eigenvalues, inverse, matmul, nullspace


@dataclass
class WeightDecomposition:
    torus: list                  # coordinate vectors spanning the torus
    weights: list                # weight tuples (values on the torus vectors)
    spaces: list                 # Subspace per weight, aligned with ``weights``
    zero_space: Subspace         # weight-zero part

    def total_dim(self) -> int:
        return self.zero_space.dim + sum(s.dim for s in self.spaces)


def simultaneous_eigenbasis(mats: Sequence) -> tuple[list[list], list[tuple]]:
    """Columns of P diagonalise every matrix; returns (P, joint eigenvalue tuples)."""
    R = len(mats[0])
    blocks = [([[1 if i == j else 0 for j in range(R)] for i in range(R)], ())]
    for T in mats:
        evs = eigenvalues(T)
        new_blocks = []
        for B, vals in blocks:
            # B: list of basis vectors (as rows) of a joint eigenspace so far
            got = 0
            for lam in evs:
                rows = []
                for r in range(R):
                    rows.append([_clean(sum(T[r][c] * v[c] for c in range(R) if v[c]) - lam * v[r]) for v in B])
                ker = nullspace(rows, len(B))
                if ker.dim:
                    vecs = []
                    for coeffs in ker.basis:
                        vec = [0] * R
                        for c, v in zip(coeffs, B):
                            if c:
                                vec = [_clean(a + c * b) for a, b in zip(vec, v)]
                        vecs.append(vec)
                    new_blocks.append((vecs, vals + (lam,)))
                    got += ker.dim
            if got != len(B):
                raise LinalgError("torus element is not diagonalisable over Q(zeta_m)")
        blocks = new_blocks
    cols = []
    diag = []
    for B, vals in blocks:
        for v in B:
            cols.append(v)
            diag.append(vals)
    P = [[cols[j][i] for j in range(R)] for i in range(R)]
    return P, diag


def weight_decomposition(g: LieAlgebra, torus: Sequence[Sequence], ambient: Subspace | None = None) -> WeightDecomposition:
    """Joint ad-eigenspaces of the torus inside ``ambient`` (default: all of g)."""
    ambient = ambient if ambient is not None else g.full_space()
    torus = [list(t) for t in torus]
    if not torus:
        return WeightDecomposition([], [], [], ambient)
    mats = [g.to_matrix(t) for t in torus]
    P, diag = simultaneous_eigenbasis(mats)
    Pinv = inverse(P)
    R = g.rep_dim
    groups: dict = {}
    for a in range(R):
        for b in range(R):
            w = tuple(_clean(x - y) for x, y in zip(diag[a], diag[b]))
            groups.setdefault(w, []).append((a, b))
    conj = [matmul(matmul(Pinv, g.to_matrix(v)), P) for v in ambient.basis]
    weights, spaces = [], []
    zero = None
    for w, positions in groups.items():
        vecs = []
        for C in conj:
            M = [[0] * R for _ in range(R)]
            nz = False
            for a, b in positions:
                if C[a][b]:
                    M[a][b] = C[a][b]
                    nz = True
            if nz:
                vecs.append(g.from_matrix(matmul(matmul(P, M), Pinv), check=False))
        if not vecs:
            continue
        S = Subspace.span(vecs, g.dim)
        if not S.dim:
            continue
        if all(not x for x in w):
            zero = S
        else:
            weights.append(w)
            spaces.append(S)
    zero = zero if zero is not None else Subspace.zero(g.dim)
    dec = WeightDecomposition(torus, weights, spaces, zero)
    if dec.total_dim() != ambient.dim:
        raise LinalgError("weight spaces do not add up; ambient is not stable under the torus")
    return dec


# ---------------------------------------------------------------------------
# weights as rational vectors, positive systems and chambers

def _rational_vector(w: tuple) -> tuple:
    d = field_degree()
    out = []
    for x in w:
        if is_rational(x):
            out += [Fraction(x)] + [Fraction(0)] * (d - 1)
        else:
            out += list(x.coeffs)
    return tuple(out)


def _proportional_positive(u: tuple, v: tuple) -> bool:
    ratio = None
    for a, b in zip(u, v):
        if (a == 0) != (b == 0):
            return False
        if a:
            r = b / a
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return ratio is not None and ratio > 0


def positive_systems(weights: Sequence[tuple], rng: random.Random, limit: int = 5000):
    """Enumerate the chambers of a root-type weight set by wall crossing.

    Yields frozensets of indices into ``weights`` (the positive weights).
    Walls of a chamber are its simple weights (positive weights that are not
    a sum of two positive weights); crossing a wall negates the weights
    positively proportional to it.
    """
    vecs = [_rational_vector(w) for w in weights]
    n = len(vecs)
    index = {v: i for i, v in enumerate(vecs)}
    neg = [index.get(tuple(-x for x in v)) for v in vecs]
    if any(j is None for j in neg):
        raise LinalgError("weight set is not symmetric under negation")
    dimv = len(vecs[0]) if vecs else 0
    start = None
    for _ in range(200):
        f = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(dimv)]
        vals = [sum(a * b for a, b in zip(f, v)) for v in vecs]
        if all(vals):
            start = frozenset(i for i in range(n) if vals[i] > 0)
            break
    if start is None:
        raise Inconclusive("could not find a generic linear functional on the weights")
    seen = {start}
    queue = [start]
    while queue:
        P = queue.pop()
        yield P
        if len(seen) >= limit:
            return
        plist = sorted(P)
        sumset = set()
        for i in plist:
            for j in plist:
                if i <= j:
                    key = tuple(a + b for a, b in zip(vecs[i], vecs[j]))
                    if key in index:
                        sumset.add(index[key])
        for a in plist:
            if a in sumset:
                continue
            flip = {b for b in plist if _proportional_positive(vecs[a], vecs[b])}
            Q = frozenset((P - flip) | {neg[b] for b in flip})
            if Q not in seen:
                seen.add(Q)
                queue.append(Q)


def _greedy_torus(g: LieAlgebra, k0: Subspace, rng: random.Random, rounds: int = 4) -> Subspace | None:
    """Commuting semisimple basis vectors of k0, collected greedily and accepted only when
    a generic combination has exactly their span as centraliser in k0.  Catches tori
    such as the rotation blocks of so(n, standard), whose generic elements are not
    diagonalisable over the working field."""
    basis = [list(b) for b in k0.basis]
    for r in range(rounds):
        order = list(range(len(basis)))
        if r:
            rng.shuffle(order)
        T: list = []
        for i in order:
            b = basis[i]
            if not g.is_semisimple(b) or any(any(g.bracket(b, t)) for t in T):
                continue
            try:
                simultaneous_eigenbasis([g.to_matrix(v) for v in T + [b]])
            except LinalgError:
                continue
            T.append(b)
        if not T:
            continue
        span = Subspace.span(T, g.dim)
        x = g.random_in(span, rng, box=10 ** 3)
        if g.centralizer([x], k0) == span:
            return span
    return None


def cartan_of_reductive(g: LieAlgebra, k0: Subspace, rng: random.Random, tries: int = 30) -> Subspace:
    """A Cartan subalgebra of a reductive subalgebra k0 of g with a diagonalisable basis.

    The diagonal part of k0 is preferred when it is already a Cartan
    subalgebra (it is then certified by the same test as below).
    Certificate: a semisimple x with abelian centraliser z_{k0}(x) whose basis
    elements are all diagonalisable over Q(zeta_m).
    """
    diag = g.diagonal_subspace() & k0
    if diag.dim:
        x = g.random_in(diag, rng, box=50)
        z = g.centralizer([x], k0)
        if z == diag:
            return diag
    greedy = _greedy_torus(g, k0, rng)
    if greedy is not None:
        return greedy
    for t in range(tries):
        x = g.random_in(k0, rng, box=3 + t)
        if not any(x) or not g.is_semisimple(x):
            continue
        z = g.centralizer([x], k0)
        if not g.is_abelian(z):
            continue
        try:
            simultaneous_eigenbasis([g.to_matrix(b) for b in z.basis])
        except LinalgError:
            continue
        return z
    raise Inconclusive("no diagonalisable Cartan subalgebra found in the given reductive subalgebra")


def search_nilpotent_in_chambers(
    g: LieAlgebra,
    torus: Subspace,
    target: Subspace,
    accept: Callable[[list], bool],
    rng: random.Random,
    samples_per_chamber: int = 2,
    limit: int = 5000,
):
    """Look for e in ``target`` lying in the positive part of some chamber with accept(e).

    ``torus`` must normalise ``target``.  Weights are those of the torus on
    the whole algebra; if they form a root system the enumeration of chambers
    is exhaustive, so a None result means that no chamber's positive part
    contains an accepted element (up to the random sampling inside each
    positive part).  Returns (e, chambers_visited).
    """
    full = weight_decomposition(g, torus.basis)
    tdec = weight_decomposition(g, torus.basis, target)
    tspace = {w: S for w, S in zip(tdec.weights, tdec.spaces)}
    visited = 0
    for P in positive_systems(full.weights, rng, limit=limit):
        visited += 1
        vecs = []
        for i in P:
            S = tspace.get(full.weights[i])
            if S is not None:
                vecs.extend(S.basis)
        if not vecs:
            continue
        pos = Subspace.span(vecs, g.dim)
        for _ in range(samples_per_chamber):
            e = g.random_in(pos, rng, box=5)
            if any(e) and accept(e):
                return e, visited
    return None, visited
