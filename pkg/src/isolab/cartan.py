"""Certified Cartan subspaces and the coincidence table of a quaternionic decomposition."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import Inconclusive, InternalInconsistency, PreconditionError
from .involutions import BIG, LITTLE, QuaternionicDecomposition, big_name
from .lie import LieAlgebra
from .linalg import Subspace, rank

# (alpha, gamma) pairs in a fixed reporting order
COINCIDENCE_PAIRS = [
    ("10", "11"), ("10", "01"),
    ("01", "11"), ("01", "10"),
    ("11", "10"), ("11", "01"),
]


@dataclass
class CartanSubspace:
    """A Cartan subspace c of ``ambient`` with the data certifying it.

    Certificate: c is abelian, each basis element has a squarefree minimal
    polynomial (so c is toral), and z_g(c) meets the ambient space exactly in c.
    """

    ambient_name: str
    ambient: Subspace
    basis_space: Subspace
    witness: list
    abelian: bool
    semisimple: bool
    saturated: bool

    @property
    def dim(self) -> int:
        return self.basis_space.dim

    @property
    def basis(self):
        return self.basis_space.basis

    @property
    def certified(self) -> bool:
        return self.abelian and self.semisimple and self.saturated


def certify_css(g: LieAlgebra, c: Subspace, ambient: Subspace) -> tuple[bool, bool, bool]:
    abelian = g.is_abelian(c)
    semisimple = abelian and all(g.is_semisimple(b) for b in c.basis)
    saturated = semisimple and g.centralizer(c.basis, ambient) == c
    return abelian, semisimple, saturated


def find_css(g: LieAlgebra, ambient: Subspace, rng: random.Random, name: str = "",
             tries: int = 12) -> CartanSubspace:
    """c = z_g(x) meet ambient for a random x, accepted only with a full certificate."""
    if ambient.dim == 0:
        return CartanSubspace(name, ambient, Subspace.zero(g.dim), g.zero(), True, True, True)
    best = None
    for attempt in range(tries):
        x = g.random_in(ambient, rng, box=2 + attempt)
        if not any(x):
            continue
        c = g.centralizer([x], ambient)
        ab, ss, sat = certify_css(g, c, ambient)
        if ab and ss and sat:
            return CartanSubspace(name, ambient, c, x, ab, ss, sat)
        if best is None or c.dim < best.dim:
            best = c
    raise Inconclusive(f"no certified Cartan subspace of {name or 'ambient'} after {tries} samples", best=best)


def generic_element_of(g: LieAlgebra, S: Subspace, target_centralizer_dim: int,
                       rng: random.Random, tries: int = 20) -> list:
    """x in S with dim z_g(x) = target (typically dim z_g(S)), i.e. z_g(x) = z_g(S)."""
    if S.dim == 0:
        return g.zero()
    for attempt in range(tries):
        x = g.random_in(S, rng, box=3 + 2 * attempt)
        if g.centralizer_dim(x) == target_centralizer_dim:
            return x
    raise Inconclusive("could not certify a generic element", best=None)


# ---------------------------------------------------------------------------
# coincidences

@dataclass
class CoincidenceResult:
    alpha: str
    gamma: str
    saturated: bool          # method 1
    witness_rank: int        # method 2: rank of ad x : g_beta -> g_gamma
    dim_gamma: int
    little_dim: int
    big_dim: int | None

    @property
    def value(self) -> bool:
        return self.saturated

    @property
    def key(self) -> str:
        return f"{self.alpha}->{self.alpha}+{self.gamma}"


def coincidence(Q: QuaternionicDecomposition, c_alpha: CartanSubspace, alpha: str, gamma: str,
                rng: random.Random, big_dim: int | None = None) -> CoincidenceResult:
    """Is the little CSS c_alpha also a CSS of g_alpha + g_gamma?  Decided twice.

    Method 1 checks z_g(c) meet (g_alpha + g_gamma) = c.  Method 2 takes x in c
    with z_g(x) = z_g(c) and asks whether [g_beta, x] fills g_gamma.
    """
    if alpha == gamma or alpha not in LITTLE or gamma not in LITTLE:
        raise PreconditionError(f"bad pair {alpha},{gamma}")
    g = Q.algebra
    beta = next(x for x in LITTLE if x not in (alpha, gamma))
    B = Q.spaces[alpha] + Q.spaces[gamma]
    sat = g.centralizer(c_alpha.basis, B) == c_alpha.basis_space
    zc = g.centralizer(c_alpha.basis).dim
    x = generic_element_of(g, c_alpha.basis_space, zc, rng)
    images = [g.bracket(x, b) for b in Q.spaces[beta].basis]
    rk = rank(images, g.dim) if images else 0
    dg = Q.spaces[gamma].dim
    res = CoincidenceResult(alpha, gamma, sat, rk, dg, c_alpha.dim, big_dim)
    if sat != (rk == dg):
        raise InternalInconsistency(
            f"coincidence {res.key}: saturation says {sat}, witness rank {rk} vs dim g_gamma {dg}",
            counterexample=x,
        )
    if big_dim is not None and sat != (c_alpha.dim == big_dim):
        raise InternalInconsistency(
            f"coincidence {res.key}: saturation {sat} but dims {c_alpha.dim} vs {big_dim}")
    return res


@dataclass
class CoincidenceTable:
    little: dict            # "01"/"10"/"11" -> CartanSubspace
    big: dict               # "1*"/"*1"/"*,1-*" -> CartanSubspace
    results: dict           # key -> CoincidenceResult

    def little_dims(self) -> dict:
        return {k: v.dim for k, v in self.little.items()}

    def big_dims(self) -> dict:
        return {k: v.dim for k, v in self.big.items()}

    def flag(self, alpha: str, gamma: str) -> bool:
        return self.results[f"{alpha}->{alpha}+{gamma}"].value

    def flags(self) -> dict:
        return {k: r.value for k, r in self.results.items()}

    def any_coincidence(self) -> bool:
        return any(self.flags().values())

    def to_json(self) -> dict:
        return {
            "little": self.little_dims(),
            "big": self.big_dims(),
            "coincidence": {
                k: {
                    "value": r.value,
                    "saturation": r.saturated,
                    "witness_rank": r.witness_rank,
                    "dim_gamma": r.dim_gamma,
                    "dims_equal": r.little_dim == r.big_dim,
                }
                for k, r in self.results.items()
            },
        }

    def to_markdown(self) -> str:
        L, B = self.little_dims(), self.big_dims()
        lines = [
            "| | sigma2 = +1 | sigma2 = -1 |",
            "|---|---|---|",
            f"| sigma1 = +1 | g00 | c01 = {L['01']} |",
            f"| sigma1 = -1 | c10 = {L['10']} | c11 = {L['11']} |",
            "",
            f"Big Cartan subspaces: c1* = {B['1*']}, c*1 = {B['*1']}, c*,1-* = {B['*,1-*']}",
            "",
            "| coincidence | holds |",
            "|---|---|",
        ]
        for k, r in self.results.items():
            lines.append(f"| c{r.alpha} -> g{r.alpha}+g{r.gamma} | {'yes' if r.value else 'no'} |")
        return "\n".join(lines)


def rank_table(Q: QuaternionicDecomposition, rng: random.Random) -> CoincidenceTable:
    g = Q.algebra
    little = {a: find_css(g, Q.spaces[a], rng, f"g{a}") for a in LITTLE}
    big = {b: find_css(g, Q.space(b), rng, f"g{b}") for b in BIG}
    results = {}
    for a, c in COINCIDENCE_PAIRS:
        bn = big_name(a, c)
        if little[a].dim > big[bn].dim:
            raise InternalInconsistency(f"dim c{a} exceeds dim c{bn}")
        r = coincidence(Q, little[a], a, c, rng, big_dim=big[bn].dim)
        results[r.key] = r
    return CoincidenceTable(little, big, results)


# ---------------------------------------------------------------------------
# dim [g_beta, x] = dim [g_gamma, x] for x in g_alpha

def verify_raspred(Q: QuaternionicDecomposition, x: Sequence, alpha: str) -> tuple[bool, int, int]:
    g = Q.algebra
    if not Q.spaces[alpha].contains(x):
        raise PreconditionError(f"element is not in g{alpha}")
    others = [b for b in LITTLE if b != alpha]
    dims = []
    for b in others:
        imgs = [g.bracket(x, v) for v in Q.spaces[b].basis]
        dims.append(rank(imgs, g.dim) if imgs else 0)
    return dims[0] == dims[1], dims[0], dims[1]


# ---------------------------------------------------------------------------
# the degenerate case g11 = 0

def check_g11_zero_lemma(Q: QuaternionicDecomposition) -> dict:
    """With g11 = 0 and m_ij = [g_ij, g_ij]: [m01, g10] = [m10, g01] = 0,
    m01 and m10 are Killing-orthogonal with zero intersection, and
    m10 + g10, m01 + g01 are ideals of g meeting only in 0."""
    if Q.g11.dim:
        raise PreconditionError("g11 is not zero")
    g = Q.algebra
    m01 = g.bracket_space(Q.g01, Q.g01)
    m10 = g.bracket_space(Q.g10, Q.g10)
    zero = Subspace.zero(g.dim)
    full = g.full_space()
    i1 = m10 + Q.g10
    i2 = m01 + Q.g01
    out = {
        "[m01,g10] = 0": g.bracket_included(m01, Q.g10, zero),
        "[m10,g01] = 0": g.bracket_included(m10, Q.g01, zero),
        "kappa(m01,m10) = 0": all(not g.killing(a, b) for a in m01.basis for b in m10.basis),
        "m01 meet m10 = 0": (m01 & m10).dim == 0,
        "m10+g10 ideal": g.bracket_included(full, i1, i1),
        "m01+g01 ideal": g.bracket_included(full, i2, i2),
        "ideals disjoint": (i1 & i2).dim == 0,
    }
    return out
