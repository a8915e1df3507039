import json

import pytest

from isolab.cli import main
from isolab.errors import ResourceGuardError
from isolab.involutions import parse_automorphism
from isolab.lie import parse_algebra
from isolab.scenarios import (
    Scenario,
    _antidiag_conjugator,
    build,
    compare_expectations,
    emit,
    format_automorphism,
    get_scenario,
    load_scenarios,
    rep_dim_of,
    run,
    scenario_gh,
    scenario_so2N,
)


@pytest.fixture(scope="module")
def bundled():
    return load_scenarios()


def test_bundled_scenarios_roundtrip(bundled):
    for s in bundled.values():
        assert Scenario.from_dict(json.loads(json.dumps(s.to_dict()))) == s


def test_bundled_expectations_carry_sources(bundled):
    for s in bundled.values():
        keys = set(s.expected) - {"source"}
        assert keys <= set(s.expected.get("source", {})), s.name


@pytest.mark.parametrize("spec,sigma", [
    ("so(8)", "inner:diag(i,i,i,i,-i,-i,-i,-i)"),
    ("sl(3)", "negtranspose:mat([[1,0,0],[0,1,0],[0,0,-1]])"),
    ("sl(2)", "inner:mat([[0,-i],[i,0]])"),
])
def test_format_parse_roundtrip(spec, sigma):
    g = parse_algebra(spec)
    a = parse_automorphism(g, sigma)
    assert parse_automorphism(g, format_automorphism(a)).same_map(a)


def test_triad_conjugator_so8():
    g = parse_algebra("so(8)")
    theta = parse_automorphism(g, "inner:mat([[0,0,0,0,0,0,0,1],[0,0,0,0,0,0,1,0],[0,0,0,0,0,1,0,0],"
                                  "[0,0,0,0,1,0,0,0],[0,0,0,1,0,0,0,0],[0,0,1,0,0,0,0,0],"
                                  "[0,1,0,0,0,0,0,0],[1,0,0,0,0,0,0,0]])")
    s = [1, 1, -1, -1, -1, -1, 1, 1]
    mu = parse_automorphism(g, "inner:diag(1,1,-1,-1,-1,-1,1,1)")
    c = _antidiag_conjugator(s)
    from isolab.involutions import inner_automorphism
    from isolab.linalg import det
    C = inner_automorphism(g, c)
    assert det(c) == 1
    assert C.compose(theta).compose(C.inverse()).same_map(mu)


def test_rep_dim_guard():
    assert rep_dim_of("sl(4)+sl(4)") == 8
    with pytest.raises(ResourceGuardError):
        build(scenario_so2N(5, 5), max_dim=16)


def test_builders_validate_arguments():
    with pytest.raises(Exception):
        scenario_gh(3, 3)
    with pytest.raises(Exception):
        scenario_so2N(0, 2)


def test_get_scenario_by_pattern():
    assert get_scenario("gh_7_3").algebra == "so(8,standard)"
    with pytest.raises(KeyError):
        get_scenario("nope")


def test_markdown_has_dimension_table(bundled):
    rep = run(bundled["so2N_1_1"], seed=1)
    md = emit(rep, "md")
    assert "| sigma1 = +1 | g00: 2 | g01: 2 |" in md
    assert "| sigma1 = -1 | g10: 2 | g11: 0 |" in md


def test_report_is_deterministic(bundled):
    a = emit(run(bundled["dyad_sl2"], seed=5), "json")
    b = emit(run(bundled["dyad_sl2"], seed=5), "json")
    assert a == b


def test_theorem_ledger_statuses(bundled):
    rep = run(bundled["g11zero"], seed=2)
    names = {t["name"]: t["status"] for t in rep["theorems"]}
    assert names["g11-zero-structure"] == "pass"
    assert names["triad-all-coincidences"] == "not-applicable"
    assert all(t["status"] in ("pass", "not-applicable") for t in rep["theorems"])


def test_expectation_mismatch_is_reported(bundled):
    s = bundled["so2N_1_1"]
    bad = Scenario.from_dict(s.to_dict())
    bad.expected = dict(bad.expected, little=dict(bad.expected["little"], **{"11": 5}))
    rep = run(bad, seed=3, suites=["css"])
    mism = rep["expectations"]["mismatches"]
    assert mism == [{"field": "little.11", "expected": 5, "computed": 0}]
    assert compare_expectations(s, rep)["mismatches"] == []


def test_cli_exit_codes(tmp_path, capsys, bundled):
    s = bundled["so2N_1_1"].to_dict()
    s["expected"]["little"]["11"] = 9
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(s))
    assert main(["verify", str(p)]) == 2
    capsys.readouterr()
    assert main(["css", "so2N_5_5"]) != 0
    assert "max-dim" in capsys.readouterr().err
    assert main(["coincidence", "dyad_sl2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert all(v["value"] for v in out["coincidence"].values())


def test_cli_contract(capsys):
    assert main(["contract", "canonical_sl3", "--perm", "11,01,10", "--variant", "b"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["module_law"] and out["duality"]["nondegenerate"]


def test_cli_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("ISOLAB_SEED", "17")
    assert main(["decompose", "dyad_sl2"]) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 17
