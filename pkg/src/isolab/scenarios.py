"""Named constructions, end-to-end runs, reports."""

from __future__ import annotations

import json
import random
import re
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Iterable, Sequence

from .cartan import COINCIDENCE_PAIRS, check_g11_zero_lemma, find_css, rank_table, verify_raspred
from .contraction import (
    degenerate_module,
    duality_check,
    generic_stabilizer,
    max_nilradical_orbit_dim,
    z2_contract,
)
from .errors import ExpectationMismatch, InternalInconsistency, PreconditionError, ResourceGuardError
from .field import format_scalar
from .invariants import (
    basic_invariants,
    bihomog_extract,
    charpoly_invariants,
    gradient,
    independence_at,
    vanishing_on_X,
    verify_invariance,
)
from .involutions import (
    BIG,
    LITTLE,
    Automorphism,
    QuaternionicDecomposition,
    build_dyad,
    canonical_triple,
    classify_involution,
    parse_automorphism,
)
from .lie import LieAlgebra, parse_algebra, parse_matrix
from .linalg import _clean, det, inverse, matmul, rank

SUITES = ("decompose", "classify", "css", "contract", "modules", "invariants")
DEFAULT_MAX_DIM = 16
DEFAULT_SEED = 42
EVIDENCE_MAX_DIM = 40     # chamber searches above this size are skipped

# the six degenerated modules: g_alpha degenerating onto g_gamma, nilradical g_beta
SIX_MODULES = [(a, next(x for x in LITTLE if x not in (a, c)), c) for a, c in COINCIDENCE_PAIRS]


@dataclass
class Scenario:
    name: str
    algebra: str
    sigma1: str
    sigma2: str
    expected: dict = field(default_factory=dict)
    declared: dict = field(default_factory=dict)
    construction: dict = field(default_factory=dict)
    description: str = ""

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "Scenario":
        return cls(**{k: d[k] for k in cls.__dataclass_fields__ if k in d})


# ---------------------------------------------------------------------------
# formatting automorphisms back into the parseable text form

def format_matrix(M) -> str:
    return "[[" + "],[".join(",".join(format_scalar(x) for x in row) for row in M) + "]]"


def format_group_element(M) -> str:
    n = len(M)
    if all(not M[r][c] for r in range(n) for c in range(n) if r != c):
        return "diag(" + ",".join(format_scalar(M[i][i]) for i in range(n)) + ")"
    return "mat(" + format_matrix(M) + ")"


def format_automorphism(a: Automorphism) -> str:
    if a.rep is None:
        raise PreconditionError("automorphism has no group-level representative")
    kind, M = a.rep
    if kind == "conj":
        return "inner:" + format_group_element(M)
    return "negtranspose:mat(" + format_matrix(M) + ")"


def _diag_spec(entries: Iterable) -> str:
    return "inner:diag(" + ",".join(entries) + ")"


# ---------------------------------------------------------------------------
# builders

_REP_RE = re.compile(r"^\s*(sl|so|sp)\((\d+)")


def rep_dim_of(algebra_spec: str) -> int:
    total = 0
    for part in algebra_spec.split("+"):
        m = _REP_RE.match(part)
        if not m:
            raise PreconditionError(f"cannot read the size of {part!r}")
        total += int(m.group(2))
    return total


def scenario_so2N(n: int, m: int) -> Scenario:
    if n < 1 or m < 1:
        raise PreconditionError("n and m must be positive")
    N = n + m
    s1 = _diag_spec(["i"] * N + ["-i"] * N)
    s2 = _diag_spec(["i"] * m + ["-i"] * n + ["i"] * n + ["-i"] * m)
    lo = min(n, m)
    expected = {
        "little": {"01": lo, "10": lo, "11": n // 2 + m // 2},
        "big": {"1*": N // 2, "*1": N // 2, "*,1-*": 2 * lo},
        "source": {"little": "closed-form", "big": "closed-form"},
    }
    if n % 2 and m % 2 and n != m:
        expected["coincidence"] = {f"{a}->{a}+{c}": False for a, c in COINCIDENCE_PAIRS}
        expected["source"]["coincidence"] = "closed-form"
    return Scenario(f"so2N_{n}_{m}", f"so({2 * N},antidiag)", s1, s2, expected,
                    construction={"kind": "so2N", "n": n, "m": m},
                    description=f"so({2 * N}) with the block involutions of type ({n},{m})")


def scenario_dsum(g_spec: str, sigma_spec: str, name: str | None = None, values: dict | None = None,
                  no_coincidence: bool = False) -> Scenario:
    """g + g with the swap and sigma + sigma.  ``values`` = {r, rk_g0, rk_g} gives the
    expected Cartan dimensions (r = rank of the symmetric pair of sigma)."""
    exp: dict = {}
    if values:
        r, r0, rg = values["r"], values["rk_g0"], values["rk_g"]
        exp = {
            "little": {"01": r, "10": r0, "11": r},
            "big": {"1*": rg, "*1": 2 * r, "*,1-*": rg},
            "source": {"little": "closed-form", "big": "closed-form", "values": "computed"},
        }
    if no_coincidence:
        exp["coincidence"] = {f"{a}->{a}+{c}": False for a, c in COINCIDENCE_PAIRS}
        exp.setdefault("source", {})["coincidence"] = "closed-form"
    nm = name or f"dsum_{g_spec}"
    return Scenario(nm, f"{g_spec}+{g_spec}", "swap", f"both:{sigma_spec}", exp,
                    construction={"kind": "dsum", "summand": g_spec, "sigma": sigma_spec},
                    description=f"{g_spec} + {g_spec} with the swap and ({sigma_spec}) on both summands")


def _antidiag_conjugator(s_diag: Sequence) -> list[list]:
    """c with Int(c) Int(J) Int(c)^-1 = Int(diag(s)) on so(2N, antidiag), c proper orthogonal.

    Hyperbolic pairs of each eigenspace of diag(s) are sent to hyperbolic pairs
    built from the eigenvectors e_k +- e_mirror of J.
    """
    from .field import imag_unit
    from fractions import Fraction

    n2 = len(s_diag)
    N = n2 // 2
    i = imag_unit()
    half = Fraction(1, 2)

    def e(k):
        v = [0] * n2
        v[k] = 1
        return v

    def comb(a, u, b, v):
        return [_clean(a * x + b * y) for x, y in zip(u, v)]

    cols: dict = {}
    for sign in (1, -1):
        us = [comb(1, e(k), sign, e(n2 - 1 - k)) for k in range(N)]
        ks = [k for k in range(N) if s_diag[k] == sign]
        if len(ks) * 2 != N or N % 2:
            raise PreconditionError("eigenspace dimensions do not match those of J")
        for idx, k in enumerate(ks):
            u, w = us[2 * idx], us[2 * idx + 1]
            p = comb(half, u, half * i, w)
            q = comb(half * sign, u, -half * i * sign, w)
            cols[k] = p
            cols[n2 - 1 - k] = q
    h = [[cols[c][r] for c in range(n2)] for r in range(n2)]
    if det(h) != 1:
        k0 = min(cols)
        h = [[cols[n2 - 1 - k0][r] if c == k0 else cols[k0][r] if c == n2 - 1 - k0 else h[r][c]
              for c in range(n2)] for r in range(n2)]
    return inverse(h)


def scenario_canonical(g_spec: str, mu_spec: str, name: str | None = None) -> Scenario:
    g = parse_algebra(g_spec)
    mu = parse_automorphism(g, mu_spec)
    ct = canonical_triple(g, mu)
    s1 = format_automorphism(ct.theta)
    s2 = format_automorphism(ct.theta_prime)
    g0_spec = "inner:" + format_group_element(ct.g0)
    declared: dict = {}
    if ct.theta.is_inner:
        s = mu.witness
        c = _antidiag_conjugator([s[k][k] for k in range(g.rep_dim)])
        declared["triad"] = {"sigma2": g0_spec, "sigma3": "inner:" + format_group_element(c)}
    else:
        declared["dyad"] = {"conjugator": g0_spec}
    s0 = g.summands[0]
    dimU = (g.dim - g.rank) // 2
    k1 = g.k1
    x = (dimU - k1) // 2
    expected = {
        "dims": [[x, x + k1], [x + k1, x + g.rank]],
        "source": {"dims": "closed-form"},
    }
    return Scenario(name or f"canonical_{s0.kind}{s0.n}", g_spec, s1, s2, expected, declared,
                    construction={"kind": "canonical", "mu": mu_spec},
                    description=f"canonical decomposition of {g_spec} for mu = {mu_spec}")


def scenario_gh(n: int, p: int) -> Scenario:
    if not 1 <= p <= n - 1:
        raise PreconditionError("need 1 <= p <= n-1")
    s1 = _diag_spec(["1"] * (p + 1) + ["-1"] * (n - p))
    s2 = _diag_spec(["1"] * p + ["-1"] * (n - p + 1))
    r = min(p + 1, n - p)
    degrees = list(range(2, 2 * r + 1, 2)) if p + 1 != n - p else sorted(list(range(2, 2 * p + 1, 2)) + [p + 1])
    expected = {
        "dim_g00": p * (p - 1) // 2 + (n - p) * (n - p - 1) // 2,
        "little": {"10": 1, "11": min(p, n - p)},
        "big": {"1*": r},
        "coincidence": {"10->10+11": n - p == 1, "11->11+10": n - p <= p},
        "degrees": {"1*": degrees},
        "trdeg": {"10,01,11": r},
        "source": {k: "closed-form" for k in ("dim_g00", "little", "big", "coincidence", "degrees", "trdeg")},
    }
    return Scenario(f"gh_{n}_{p}", f"so({n + 1},standard)", s1, s2, expected,
                    construction={"kind": "gh", "n": n, "p": p},
                    description=f"so({n + 1}) with s1, s2 of sizes ({p + 1},{n - p}) and ({p},{n - p + 1})")


def scenario_dyad(g_spec: str, sigma1_spec: str, direction: str, name: str) -> Scenario:
    g = parse_algebra(g_spec)
    s1 = parse_automorphism(g, sigma1_spec)
    d = build_dyad(s1, parse_matrix(direction))
    declared = {"dyad": {"conjugator": "inner:" + format_group_element(d.s)}}
    return Scenario(name, g_spec, sigma1_spec, format_automorphism(d.sigma2), {}, declared,
                    construction={"kind": "dyad", "direction": direction},
                    description=f"dyad in {g_spec} from the torus direction {direction}")


# ---------------------------------------------------------------------------
# scenario files

def load_scenarios(path=None) -> dict[str, Scenario]:
    if path is None:
        text = resources.files("isolab").joinpath("data/scenarios.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    data = json.loads(text)
    out = {}
    for d in data["scenarios"]:
        s = Scenario.from_dict(d)
        out[s.name] = s
    return out


def get_scenario(name: str, path=None) -> Scenario:
    sc = load_scenarios(path)
    if name in sc:
        return sc[name]
    m = re.fullmatch(r"so2N_(\d+)_(\d+)", name)
    if m:
        return scenario_so2N(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"gh_(\d+)_(\d+)", name)
    if m:
        return scenario_gh(int(m.group(1)), int(m.group(2)))
    raise KeyError(f"unknown scenario {name!r}; known: {', '.join(sorted(sc))}")


# ---------------------------------------------------------------------------
# building

@dataclass
class Built:
    scenario: Scenario
    algebra: LieAlgebra
    sigma1: Automorphism
    sigma2: Automorphism
    Q: QuaternionicDecomposition


def build(scn: Scenario, max_dim: int = DEFAULT_MAX_DIM) -> Built:
    rd = rep_dim_of(scn.algebra)
    if rd > max_dim:
        raise ResourceGuardError(f"{scn.algebra} has matrix size {rd} > {max_dim}; raise --max-dim to run it")
    g = parse_algebra(scn.algebra)
    s1 = parse_automorphism(g, scn.sigma1)
    s1.label = "sigma1"
    s2 = parse_automorphism(g, scn.sigma2)
    s2.label = "sigma2"
    Q = QuaternionicDecomposition(s1, s2)
    Q.sigma3.label = "sigma3"
    return Built(scn, g, s1, s2, Q)


def _verify_conjugator(b: Built, spec: str, target: Automorphism) -> bool:
    c = parse_automorphism(b.algebra, spec, involution=False)
    return bool(c.is_inner) and c.compose(b.sigma1).compose(c.inverse()).same_map(target)


# ---------------------------------------------------------------------------
# running

class _Ledger:
    def __init__(self):
        self.entries: list[dict] = []

    def add(self, name: str, applicable: bool, hypothesis: str, ok: bool | None = None, detail=None):
        status = "not-applicable" if not applicable else ("pass" if ok else "fail")
        e = {"name": name, "applicable": applicable, "hypothesis": hypothesis, "status": status}
        if detail is not None:
            e["detail"] = detail
        self.entries.append(e)
        if applicable and not ok:
            raise InternalInconsistency(f"{name} fails ({hypothesis})", counterexample=detail)


def _rng(seed: int, scenario: str, step: str) -> random.Random:
    return random.Random(f"{seed}:{scenario}:{step}")


def _big_of_involution(k: int) -> str:
    return ("1*", "*1", "*,1-*")[k - 1]


def _maxrank_conclusions(big: str) -> list[tuple[str, str]]:
    """sigma of maximal rank with (-1)-space g_A + g_B, third little space C:
    c_A is a CSS of g_A + g_C and c_B one of g_B + g_C."""
    A, B = BIG[big]
    C = next(x for x in LITTLE if x not in (A, B))
    return [(A, C), (B, C)]


def run(scn: Scenario, seed: int = DEFAULT_SEED, suites: Sequence[str] | None = None,
        max_dim: int = DEFAULT_MAX_DIM, resamples: int = 10, points: int = 20,
        reductive_points: int = 3) -> dict:
    suites = list(suites) if suites else list(SUITES)
    bad = [s for s in suites if s not in SUITES]
    if bad:
        raise PreconditionError(f"unknown suites {bad}; choose from {SUITES}")
    b = build(scn, max_dim)
    g, Q = b.algebra, b.Q
    name = scn.name
    L = _Ledger()
    rep: dict = {
        "scenario": name,
        "algebra": scn.algebra,
        "sigma1": scn.sigma1,
        "sigma2": scn.sigma2,
        "seed": seed,
        "suites": suites,
        "dim": g.dim,
        "rank": g.rank,
        "dimension_matrix": Q.dim_matrix,
    }
    sig = {1: b.sigma1, 2: b.sigma2, 3: Q.sigma3}

    # -- decomposition -------------------------------------------------------
    rep["decomposition"] = {
        "bracket_relations_failures": Q.bracket_relations_failures(),
        "killing_orthogonal": Q.killing_orthogonal(),
        "inner": {f"sigma{k}": s.is_inner for k, s in sig.items()},
    }
    if rep["decomposition"]["bracket_relations_failures"] or not rep["decomposition"]["killing_orthogonal"]:
        raise InternalInconsistency("quaternionic decomposition is malformed")

    # declared structure, certified
    dyads: list[tuple[int, int]] = []
    triad = False
    if "dyad" in scn.declared:
        ok = _verify_conjugator(b, scn.declared["dyad"]["conjugator"], b.sigma2)
        rep["declared_dyad_certified"] = ok
        if not ok:
            raise InternalInconsistency("declared dyad conjugator does not conjugate sigma1 to sigma2")
        dyads.append((1, 2))
    if "triad" in scn.declared:
        ok2 = _verify_conjugator(b, scn.declared["triad"]["sigma2"], b.sigma2)
        ok3 = _verify_conjugator(b, scn.declared["triad"]["sigma3"], Q.sigma3)
        rep["declared_triad_certified"] = ok2 and ok3
        if not (ok2 and ok3):
            raise InternalInconsistency("declared triad conjugators fail")
        triad = True
        dyads += [(1, 2), (1, 3), (2, 3)]

    # -- classification --------------------------------------------------------
    classes = {}
    if "classify" in suites or "css" in suites:
        for k, s in sig.items():
            c = classify_involution(s, _rng(seed, name, f"classify{k}"), nilpotent_check=g.dim <= 40)
            classes[k] = c
        rep["classification"] = {f"sigma{k}": c.to_dict() for k, c in classes.items()}
        for k, c in classes.items():
            if c.quasi_maximal:
                lhs = c.dim_g0 - c.dim_g1
                L.add(f"quasi-maximal-dimension-identity[sigma{k}]", True, "inner and quasi-maximal",
                      lhs == g.k0 - g.k1, {"dim_g0-dim_g1": lhs, "k0-k1": g.k0 - g.k1})
            if c.lemma_agrees is not None:
                L.add(f"regular-semisimple-iff-regular-nilpotent[sigma{k}]", True,
                      "inner; nilpotent search exhaustive or successful", c.lemma_agrees)

    # -- Cartan subspaces and coincidences ---------------------------------------
    table = None
    if "css" in suites or "modules" in suites or "invariants" in suites:
        table = rank_table(Q, _rng(seed, name, "css"))
        rep["css"] = table.to_json()
        L.add("css-coincidence-dual-method", True, "always", True)
        rr = _rng(seed, name, "raspred")
        ok = True
        for a in LITTLE:
            for _ in range(5):
                x = g.random_in(Q.spaces[a], rr, box=5)
                ok = ok and verify_raspred(Q, x, a)[0]
        L.add("bracket-rank-equality", True, "always", ok)
        for k, c in classes.items():
            big = _big_of_involution(k)
            concl = _maxrank_conclusions(big)
            flags = {f"{a}->{a}+{cc}": table.flag(a, cc) for a, cc in concl}
            L.add(f"maximal-rank-coincidences[sigma{k}]", c.maximal_rank,
                  "maximal rank (dim g1 - dim g0 = rank)", all(flags.values()) if c.maximal_rank else None,
                  flags if c.maximal_rank else None)
        for i, j in dyads:
            bi, bj = _big_of_involution(i), _big_of_involution(j)
            common = next(x for x in BIG[bi] if x in BIG[bj])
            oi = next(x for x in BIG[bi] if x != common)
            oj = next(x for x in BIG[bj] if x != common)
            flags = {f"{common}->{common}+{oi}": table.flag(common, oi),
                     f"{common}->{common}+{oj}": table.flag(common, oj)}
            L.add(f"dyad-coincidences[sigma{i},sigma{j}]", True, "declared and certified conjugate pair",
                  all(flags.values()), flags)
        L.add("triad-all-coincidences", triad, "declared and certified triad",
              all(table.flags().values()) if triad else None)
        if Q.g11.dim == 0:
            lem = check_g11_zero_lemma(Q)
            rep["g11_zero"] = lem
            L.add("g11-zero-structure", True, "g11 = 0", all(lem.values()), lem)
        else:
            L.add("g11-zero-structure", False, "g11 = 0")

    # -- contractions -------------------------------------------------------------
    if "contract" in suites:
        out = {}
        for k, s in sig.items():
            C = z2_contract(g, s)
            out[f"sigma{k}"] = {"dim": C.dim, "jacobi": True, "ideal_abelian": C.ideal_abelian(),
                                "killing_degenerate": C.killing_degenerate()}
        rep["contractions"] = out

    # -- degenerated modules ------------------------------------------------------
    if "modules" in suites:
        mods = {}
        rr = _rng(seed, name, "modules")
        witness_ok = True
        stab_ok = True
        for perm in SIX_MODULES:
            a, be, c = perm
            V = degenerate_module(Q, perm, "a")
            orb = max_nilradical_orbit_dim(V, rr)
            st = generic_stabilizer(V, rr)
            dims = {st.stabilizer.dim}
            for _ in range(resamples):
                dims.add(generic_stabilizer(V, rr).stabilizer.dim)
            st.max_orbit_dim, st.witness_found = orb.max_orbit_dim, orb.witness_found
            d = st.to_dict()
            d["target_dim"] = orb.target_dim
            d["module_law"] = True
            d["stable_under_resampling"] = len(dims) == 1
            key = ",".join(perm)
            mods[key] = d
            witness_ok = witness_ok and orb.witness_found == table.flag(a, c)
            stab_ok = stab_ok and st.agree and st.rosenlicht and st.cancellation and len(dims) == 1
        rep["modules"] = mods
        L.add("nilradical-witness-iff-coincidence", True, "always", witness_ok)
        L.add("generic-stabilizer-formula", True, "always", stab_ok)
        dual = {}
        for perm in SIX_MODULES[::2]:
            Va = degenerate_module(Q, perm, "a")
            Vb = degenerate_module(Q, perm, "b")
            dual[",".join(perm)] = duality_check(Va, Vb)
        rep["duality"] = dual
        L.add("pairing-duality", True, "always", all(d["invariant"] and d["nondegenerate"] for d in dual.values()))

    # -- invariants ------------------------------------------------------------------
    if "invariants" in suites:
        rep["invariants"] = _run_invariants(b, table, seed, points, reductive_points, L)

    # -- construction-specific checks --------------------------------------------------
    kind = scn.construction.get("kind")
    if kind == "canonical":
        rep["canonical"] = _canonical_checks(b, seed, L, table)
    if kind == "dsum" and g.rep_dim <= 4 and "modules" in suites:
        from .contraction import adjoint_module_isomorphism
        h = parse_algebra(scn.construction["summand"])
        sigma = parse_automorphism(h, scn.construction["sigma"])
        ok = adjoint_module_isomorphism(h, g, Q, sigma)
        L.add("adjoint-module-identification", True, "g + g with the swap", ok)

    rep["theorems"] = L.entries
    rep["expectations"] = compare_expectations(scn, rep)
    return rep


def _run_invariants(b: Built, table, seed: int, points: int, reductive_points: int, L: _Ledger) -> dict:
    g, Q = b.algebra, b.Q
    name = b.scenario.name
    group = [s.rep[1] for s in (b.sigma1, b.sigma2) if s.rep is not None and s.rep[0] == "conj" and s.is_inner]
    out: dict = {}
    basic: dict = {}
    all_ok = True
    for big in BIG:
        alpha, gamma = BIG[big]
        beta = next(x for x in LITTLE if x not in (alpha, gamma))
        rr = _rng(seed, name, f"inv:{big}")
        dom = Q.space(big)
        Fs = basic_invariants(g, dom, rr, expected=table.big[big].dim, group=group)
        entries = []
        Va = degenerate_module(Q, (alpha, beta, gamma), "a")
        Vb = degenerate_module(Q, (alpha, beta, gamma), "b")
        for F in Fs:
            S = bihomog_extract(F, Q, alpha, gamma, rr)
            ra = verify_invariance(S.f_top, Va, rr, points=points, reductive_points=reductive_points)
            rb = verify_invariance(S.f_bottom, Vb, rr, points=points, reductive_points=reductive_points)
            all_ok = all_ok and ra.ok and rb.ok
            entries.append({
                "name": F.name,
                "kind": F.kind,
                "degree": F.degree,
                "top_bidegree": [S.top, F.degree - S.top],
                "bottom_bidegree": [S.bottom, F.degree - S.bottom],
                "top_invariant": ra.ok,
                "bottom_invariant": rb.ok,
                "points": ra.points,
            })
        out[big] = {"degrees": sorted(F.degree for F in Fs), "invariants": entries}
        basic[big] = Fs
    L.add("top-component-invariance", True, "always", all_ok)
    # vanishing on the closure of G0*.c10
    try:
        vr = vanishing_on_X(Q, basic["1*"], _rng(seed, name, "vanishing"))
        out["vanishing_on_X"] = vr.to_dict()
        condition = True
        L.add("vanishing-on-closure", True, "z_g(c10) meet g1* is a Cartan subspace of g1*", vr.count_matches,
              vr.to_dict())
    except PreconditionError as exc:
        out["vanishing_on_X"] = {"condition_holds": False, "reason": str(exc)}
        condition = False
        L.add("vanishing-on-closure", False, "z_g(c10) meet g1* is a Cartan subspace of g1*")
    # evidence only: no implication between the two flags is asserted
    ev: dict = {"vanishing_condition_holds": condition}
    if g.dim <= EVIDENCE_MAX_DIM:
        e = g00_regular_nilpotent(b, _rng(seed, name, "evidence"))
        ev["g00_regular_nilpotent_found"] = e is not None
        if e is not None:
            ev["gradients_independent_at_e"] = independence_at(e, basic["1*"], Q.space("1*"))
    else:
        ev["g00_regular_nilpotent_found"] = None
    out["evidence"] = ev
    return out


def g00_regular_nilpotent(b: Built, rng: random.Random):
    """A nilpotent e in g10 whose G00-orbit has the maximal dimension dim g10 - dim c10."""
    from .tori import cartan_of_reductive, search_nilpotent_in_chambers

    g, Q = b.algebra, b.Q
    c10 = find_css(g, Q.g10, rng, "g10")
    target = Q.g10.dim - c10.dim

    def accept(e):
        if not g.is_nilpotent(e):
            return False
        imgs = [g.bracket(x, e) for x in Q.g00.basis]
        return (rank(imgs, g.dim) if imgs else 0) == target

    if Q.g10.dim == 0:
        return None
    if Q.g00.dim == 0:
        e = g.random_in(Q.g10, rng, box=5)
        return e if accept(e) else None
    t00 = cartan_of_reductive(g, Q.g00, rng)
    e, _ = search_nilpotent_in_chambers(g, t00, Q.g10, accept, rng, samples_per_chamber=3)
    return e


def regular_nilpotent_in(b: Built, space: str, rng: random.Random):
    """A regular nilpotent element of g inside the big space, searched over the chambers
    of a Cartan subalgebra of the fixed algebra of the corresponding involution."""
    from .tori import cartan_of_reductive, search_nilpotent_in_chambers

    g, Q = b.algebra, b.Q
    S = Q.space(space)
    fixed = Q.involution_of_big(space).eigenspace(1)
    t = cartan_of_reductive(g, fixed, rng)
    e, _ = search_nilpotent_in_chambers(g, t, S, lambda v: g.is_nilpotent(v) and g.is_regular(v),
                                        rng, samples_per_chamber=3)
    return e


def _canonical_checks(b: Built, seed: int, L: _Ledger, table) -> dict:
    from .tori import cartan_of_reductive

    g, Q = b.algebra, b.Q
    name = b.scenario.name
    mu = parse_automorphism(g, b.scenario.construction["mu"])
    mu_cls = classify_involution(mu, _rng(seed, name, "mu"), nilpotent_check=False)
    x, y = Q.dim_matrix[0]
    u, v = Q.dim_matrix[1]
    out: dict = {"mu_quasi_maximal": mu_cls.quasi_maximal,
                 "sigma3_is_mu": Q.sigma3.same_map(mu)}
    if not out["sigma3_is_mu"]:
        raise InternalInconsistency("sigma1 sigma2 differs from mu")
    dimU = (g.dim - g.rank) // 2
    if mu_cls.quasi_maximal:
        ok = x == (dimU - g.k1) // 2 and 2 * x == dimU - g.k1 and y == x + g.k1 and u == y and v == x + g.rank
        L.add("canonical-dimension-formulas", True, "mu inner and quasi-maximal", ok,
              {"dims": Q.dim_matrix, "dim_U": dimU, "k1": g.k1, "rank": g.rank})
    else:
        L.add("canonical-dimension-formulas", False, "mu inner and quasi-maximal")
    # the pair induces an involution of maximal rank on g^mu = g00 + g11
    gmu = Q.g00 + Q.g11
    rk_gmu = cartan_of_reductive(g, gmu, _rng(seed, name, "gmu")).dim
    L.add("little-involution-maximal-rank", True, "mu inner",
          v - x == rk_gmu, {"dim_g11-dim_g00": v - x, "rank_g_mu": rk_gmu})
    out["rank_g_mu"] = rk_gmu
    if g.dim <= EVIDENCE_MAX_DIM:
        out["regular_nilpotent_in_big_spaces"] = {
            big: regular_nilpotent_in(b, big, _rng(seed, name, f"regnil:{big}")) is not None for big in BIG}
    # gradients at a G00-regular nilpotent of g10 (theta outer, sl(2n) or sl(2n+1))
    s0 = g.summands[0]
    if not b.sigma1.is_inner and s0.kind == "sl":
        rng = _rng(seed, name, "nilpotent")
        e = g00_regular_nilpotent(b, rng)
        if e is None:
            raise InternalInconsistency("no G00-regular nilpotent found in g10")
        F_all = charpoly_invariants(g, g.full_space(), rng)
        odd = [F for F in F_all if F.degree % 2]
        dom = Q.space("1*")
        odd_indep = independence_at(e, odd, dom)
        out["regular_nilpotent"] = {
            "partition": _jordan_partition(g, e),
            "odd_degrees": [F.degree for F in odd],
            "odd_gradients_independent": odd_indep,
        }
        L.add("odd-degree-gradients-independent", True, "theta outer, e G00-regular nilpotent in g10", odd_indep)
        if s0.n % 2 == 0:
            top = [F for F in F_all if F.degree == s0.n]
            rest = [F for F in F_all if F.degree != s0.n]
            top_zero = all(not any(gradient(F, e, g.full_space())) for F in top)
            rest_indep = independence_at(e, rest, g.full_space())
            out["regular_nilpotent"].update({"top_degree_gradient_zero": top_zero,
                                             "remaining_gradients_independent": rest_indep})
            L.add("subregular-gradient-pattern", True, "sl(2n), e subregular", top_zero and rest_indep)
    return out


def _jordan_partition(g: LieAlgebra, e) -> list[int]:
    M = g.to_matrix(e)
    n = len(M)
    ranks = [n]
    P = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    while ranks[-1]:
        P = matmul(P, M)
        ranks.append(rank(P, n))
    # number of blocks of size >= k is rank(M^(k-1)) - rank(M^k)
    ge = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    parts = []
    for k, cnt in enumerate(ge, start=1):
        nxt = ge[k] if k < len(ge) else 0
        parts += [k] * (cnt - nxt)
    return sorted(parts, reverse=True)


# ---------------------------------------------------------------------------
# expectations

def compare_expectations(scn: Scenario, rep: dict) -> dict:
    exp = scn.expected
    mism = []
    checked = 0

    def cmp(label, want, got):
        nonlocal checked
        checked += 1
        if want != got:
            mism.append({"field": label, "expected": want, "computed": got})

    if "dims" in exp:
        cmp("dims", exp["dims"], rep["dimension_matrix"])
    if "dim_g00" in exp:
        cmp("dim_g00", exp["dim_g00"], rep["dimension_matrix"][0][0])
    css = rep.get("css")
    if css is not None:
        for k, v in exp.get("little", {}).items():
            cmp(f"little.{k}", v, css["little"][k])
        for k, v in exp.get("big", {}).items():
            cmp(f"big.{k}", v, css["big"][k])
        for k, v in exp.get("coincidence", {}).items():
            cmp(f"coincidence.{k}", v, css["coincidence"][k]["value"])
    inv = rep.get("invariants")
    if inv is not None:
        for k, v in exp.get("degrees", {}).items():
            cmp(f"degrees.{k}", v, inv[k]["degrees"])
    mods = rep.get("modules")
    if mods is not None:
        for k, v in exp.get("trdeg", {}).items():
            cmp(f"trdeg.{k}", v, mods[k]["trdeg_b"])
    return {"checked": checked, "mismatches": mism}


def check_expectations(rep: dict) -> None:
    mism = rep["expectations"]["mismatches"]
    if mism:
        raise ExpectationMismatch(f"{rep['scenario']}: {len(mism)} expectation(s) differ: {mism}")


# ---------------------------------------------------------------------------
# output

def emit(report: dict | list, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if fmt == "md":
        reps = report if isinstance(report, list) else [report]
        return "\n\n".join(_markdown(r) for r in reps) + "\n"
    raise PreconditionError(f"unknown format {fmt!r}")


def _markdown(r: dict) -> str:
    (x, y), (u, v) = r["dimension_matrix"]
    lines = [
        f"## {r['scenario']}: {r['algebra']}",
        "",
        f"sigma1 = `{r['sigma1']}`, sigma2 = `{r['sigma2']}`",
        "",
        "Dimension matrix (rows: sigma1 = +1, -1; columns: sigma2 = +1, -1)",
        "",
        "| | sigma2 = +1 | sigma2 = -1 |",
        "|---|---|---|",
        f"| sigma1 = +1 | g00: {x} | g01: {y} |",
        f"| sigma1 = -1 | g10: {u} | g11: {v} |",
    ]
    css = r.get("css")
    if css:
        L_, B_ = css["little"], css["big"]
        lines += [
            "",
            "Cartan subspaces",
            "",
            "| | sigma2 = +1 | sigma2 = -1 |",
            "|---|---|---|",
            f"| sigma1 = +1 | | c01 = {L_['01']} |",
            f"| sigma1 = -1 | c10 = {L_['10']} | c11 = {L_['11']} |",
            "",
            f"c1* = {B_['1*']}, c*1 = {B_['*1']}, c*,1-* = {B_['*,1-*']}",
            "",
            "| coincidence | holds |",
            "|---|---|",
        ]
        for k, d in css["coincidence"].items():
            lines.append(f"| {k} | {'yes' if d['value'] else 'no'} |")
    mods = r.get("modules")
    if mods:
        lines += ["", "| module | max orbit | target | witness | stabiliser | trdeg | agree |",
                  "|---|---|---|---|---|---|---|"]
        for k, d in mods.items():
            lines.append(f"| {k} | {d['max_orbit_dim']} | {d['target_dim']} | {d['witness_found']} | "
                         f"{d['stabilizer_dim']} | {d['trdeg_a']}/{d['trdeg_b']} | {d['agree']} |")
    inv = r.get("invariants")
    if inv:
        lines += [""]
        for big in BIG:
            lines.append(f"Basic invariant degrees on g{big}: {inv[big]['degrees']}")
    lines += ["", "| check | status |", "|---|---|"]
    for t in r.get("theorems", []):
        lines.append(f"| {t['name']} | {t['status']} |")
    e = r.get("expectations", {})
    lines += ["", f"Expectations checked: {e.get('checked', 0)}, mismatches: {len(e.get('mismatches', []))}"]
    return "\n".join(lines)
