"""End-to-end acceptance checks, one test per criterion.

The bundled scenarios are run twice through the CLI (criterion 11); the
first run's JSON feeds the remaining criteria.  A PASS/FAIL line per
criterion is printed in the terminal summary.
"""

import json
import subprocess
import sys
import time

import pytest
from conftest import record

from isolab.involutions import build_dyad, classify_involution, parse_automorphism
from isolab.lie import parse_algebra, parse_matrix
from isolab.cartan import COINCIDENCE_PAIRS
from isolab.scenarios import _rng, load_scenarios, run

SEED = 42
FLAGS = [f"{a}->{a}+{c}" for a, c in COINCIDENCE_PAIRS]


def _verify_all():
    t = time.monotonic()
    proc = subprocess.run([sys.executable, "-m", "isolab.cli", "verify", "all", "--seed", str(SEED)],
                          capture_output=True)
    return proc, time.monotonic() - t


@pytest.fixture(scope="module")
def runs():
    return [_verify_all(), _verify_all()]


@pytest.fixture(scope="module")
def reports(runs):
    proc, _ = runs[0]
    data = json.loads(proc.stdout)
    return {r["scenario"]: r for r in data["reports"]}


def _ledger(rep, name):
    return next(t for t in rep["theorems"] if t["name"] == name)


def _check(criterion, problems, ok_detail):
    record(criterion, not problems, ok_detail if not problems else "; ".join(problems))
    assert not problems, problems


def test_c01_so2N_table(reports):
    problems = []
    timings = []
    scenarios = load_scenarios()
    for n, m in [(3, 1), (3, 3), (2, 2), (2, 4)]:
        name = f"so2N_{n}_{m}"
        t = time.monotonic()
        css = run(scenarios[name], seed=SEED, suites=["css"])["css"]
        dt = time.monotonic() - t
        timings.append(f"{name} {dt:.0f}s")
        lo, N = min(n, m), n + m
        want_little = {"01": lo, "10": lo, "11": n // 2 + m // 2}
        want_big = {"1*": N // 2, "*1": N // 2, "*,1-*": 2 * lo}
        if css["little"] != want_little or css["big"] != want_big:
            problems.append(f"{name}: dims {css['little']} {css['big']}")
        if n % 2 and m % 2 and n != m and any(css["coincidence"][f]["value"] for f in FLAGS):
            problems.append(f"{name}: a coincidence flag is true")
        if dt >= 60:
            problems.append(f"{name}: css suite took {dt:.0f}s")
        if reports[name]["css"] != css:
            problems.append(f"{name}: CLI report differs from the in-process run")
    _check(1, problems, "css suite times: " + ", ".join(timings))


def test_c02_maximal_rank(reports):
    problems = []
    names = ["canonical_sl3", "canonical_sl4", "canonical_so8"]
    for name in names:
        rep = reports[name]
        if not rep["classification"]["sigma1"]["maximal_rank"]:
            problems.append(f"{name}: sigma1 not of maximal rank")
        for f in ("11->11+01", "10->10+01"):
            if not rep["css"]["coincidence"][f]["value"]:
                problems.append(f"{name}: {f} false")
        if _ledger(rep, "maximal-rank-coincidences[sigma1]")["status"] != "pass":
            problems.append(f"{name}: ledger entry not passing")
    _check(2, problems, ", ".join(names))


def test_c03_dyads(reports):
    problems = []
    names = ["dyad_sl2", "dyad_sl3", "dyad_sl4", "dyad_so8"]
    scenarios = load_scenarios()
    for name in names:
        scn = scenarios[name]
        g = parse_algebra(scn.algebra)
        d = build_dyad(parse_automorphism(g, scn.sigma1), parse_matrix(scn.construction["direction"]))
        phi2 = d.phi.compose(d.phi)
        if not phi2.compose(phi2).is_identity():
            problems.append(f"{name}: phi^4 != id")
        if not d.sigma1.compose(d.sigma2).same_map(phi2):
            problems.append(f"{name}: sigma1 sigma2 != phi^2")
        if not d.sigma2.same_map(parse_automorphism(g, scn.sigma2)):
            problems.append(f"{name}: stored sigma2 differs from the construction")
        co = reports[name]["css"]["coincidence"]
        for f in ("11->11+10", "11->11+01"):
            if not co[f]["value"]:
                problems.append(f"{name}: {f} false")
    _check(3, problems, ", ".join(names))


def test_c04_quasi_maximal():
    problems = []
    cases = [("sl(3)", "inner:diag(1,1,-1)"), ("sl(4)", "inner:diag(1,1,-1,-1)")]
    for spec, sigma in cases:
        g = parse_algebra(spec)
        c = classify_involution(parse_automorphism(g, sigma), _rng(SEED, spec, sigma))
        if c.quasi_maximal is not True:
            problems.append(f"{spec} {sigma}: not certified quasi-maximal")
            continue
        if c.dim_g0 - c.dim_g1 != g.k0 - g.k1:
            problems.append(f"{spec} {sigma}: {c.dim_g0 - c.dim_g1} != {g.k0 - g.k1}")
        if not (c.nilpotent_search_exhaustive and c.lemma_agrees):
            problems.append(f"{spec} {sigma}: regular semisimple / nilpotent cross-check failed")
    _check(4, problems, "; ".join(f"{s} {x}" for s, x in cases))


def test_c05_contractions(reports):
    problems = []
    for name, rep in reports.items():
        if "contractions" not in rep:
            problems.append(f"{name}: not run ({rep.get('skipped') or rep.get('message')})")
            continue
        for k, c in rep["contractions"].items():
            if not c["jacobi"]:
                problems.append(f"{name} {k}: Jacobi")
        if len(rep["modules"]) != 6 or not all(m["module_law"] for m in rep["modules"].values()):
            problems.append(f"{name}: module law")
    _check(5, problems, f"{len(reports)} scenarios, 3 contractions and 6 modules each")


def test_c06_witnesses(reports):
    problems = []
    count = 0
    for name, rep in reports.items():
        co = rep["css"]["coincidence"]
        for key, m in rep["modules"].items():
            a, _, c = key.split(",")
            if co[f"{a}->{a}+{c}"]["value"]:
                count += 1
                if not m["witness_found"] or m["max_orbit_dim"] != m["target_dim"]:
                    problems.append(f"{name} {key}: {m['max_orbit_dim']} vs {m['target_dim']}")
    for key, m in reports["so2N_3_1"]["modules"].items():
        if not m["max_orbit_dim"] < m["target_dim"]:
            problems.append(f"so2N_3_1 {key}: maximum reaches dim g_gamma")
    _check(6, problems, f"{count} coincidence witnesses; so2N_3_1 all six strictly below")


def test_c07_generic_stabilizer(reports):
    problems = []
    for name, rep in reports.items():
        for key, m in rep["modules"].items():
            if not m["agree"]:
                problems.append(f"{name} {key}: stabilizer or trdeg mismatch")
            if not m["stable_under_resampling"]:
                problems.append(f"{name} {key}: dimension changed under resampling")
        if _ledger(rep, "generic-stabilizer-formula")["status"] != "pass":
            problems.append(f"{name}: ledger entry")
    _check(7, problems, "closed form, both trdeg values and 10 resamples")


def test_c08_invariance(reports):
    problems = []
    count = 0
    for name, rep in reports.items():
        for space, block in rep["invariants"].items():
            if space in ("evidence", "vanishing_on_X"):
                continue
            for inv in block["invariants"]:
                count += 1
                if not (inv["top_invariant"] and inv["bottom_invariant"] and inv["points"] >= 20):
                    problems.append(f"{name} {space} {inv['name']}")
    _check(8, problems, f"{count} oracles, variants a and b, 20 points each")


def test_c09_gh_family(reports):
    problems = []
    g6 = reports["gh_6_2"]
    if g6["modules"]["10,01,11"]["trdeg_a"] != 3 or g6["invariants"]["1*"]["degrees"] != [2, 4, 6]:
        problems.append("gh_6_2: trdeg or degrees")
    if not reports["gh_3_2"]["css"]["coincidence"]["10->10+11"]["value"]:
        problems.append("gh_3_2: c10 coincidence false")
    if reports["gh_5_2"]["css"]["coincidence"]["11->11+10"]["value"]:
        problems.append("gh_5_2: c11 coincidence true")
    _check(9, problems, "gh_6_2 degrees [2,4,6], gh_3_2 c10 true, gh_5_2 c11 false")


def test_c10_canonical_sl4(reports):
    rep = reports["canonical_sl4"]
    problems = [n for n in ("canonical-dimension-formulas", "little-involution-maximal-rank",
                            "odd-degree-gradients-independent") if _ledger(rep, n)["status"] != "pass"]
    for k in ("sigma1", "sigma2"):
        if not rep["classification"][k]["maximal_rank"]:
            problems.append(f"{k} not of maximal rank")
    _check(10, problems, f"dims {rep['dimension_matrix']}")


def test_c11_determinism(runs):
    (p1, t1), (p2, t2) = runs
    problems = []
    if p1.returncode or p2.returncode:
        problems.append(f"exit codes {p1.returncode}, {p2.returncode}")
    if p1.stdout != p2.stdout:
        problems.append("outputs differ")
    if max(t1, t2) >= 15 * 60:
        problems.append(f"run took {max(t1, t2):.0f}s")
    _check(11, problems, f"byte-identical, {t1:.0f}s and {t2:.0f}s")
