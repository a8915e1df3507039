"""Regenerate src/isolab/data/scenarios.json from the builders."""

import json
from pathlib import Path

from isolab.scenarios import (
    scenario_canonical,
    scenario_dsum,
    scenario_dyad,
    scenario_gh,
    scenario_so2N,
)


def all_scenarios():
    out = [scenario_so2N(n, m) for n, m in [(3, 1), (1, 1), (2, 2), (3, 3), (2, 4)]]
    out.append(scenario_dsum("sl(4)", "negtranspose:sympl", "sl4_sp4",
                             {"r": 1, "rk_g0": 2, "rk_g": 3}, no_coincidence=True))
    out.append(scenario_dsum("sl(3)", "negtranspose", "dsum_sl3"))
    out.append(scenario_dsum("sl(2)", "inner:diag(1,-1)", "dsum_sl2"))
    out.append(scenario_canonical("sl(3)", "inner:diag(1,1,-1)"))
    out.append(scenario_canonical("sl(4)", "inner:diag(1,1,-1,-1)"))
    out.append(scenario_canonical("so(8,antidiag)", "inner:diag(1,1,-1,-1,-1,-1,1,1)"))
    out += [scenario_gh(n, p) for n, p in [(3, 2), (5, 2), (6, 2), (4, 2)]]
    out.append(scenario_dyad("sl(2)", "inner:diag(1,-1)", "[[0,1],[1,0]]", "dyad_sl2"))
    out.append(scenario_dyad("sl(3)", "inner:diag(1,1,-1)", "[[0,0,1],[0,0,0],[1,0,0]]", "dyad_sl3"))
    out.append(scenario_dyad("sl(4)", "inner:diag(1,1,-1,-1)",
                             "[[0,0,1,0],[0,0,0,1],[1,0,0,0],[0,1,0,0]]", "dyad_sl4"))
    t = [[0] * 8 for _ in range(8)]
    t[0][4] = t[4][0] = 1
    t[3][7] = t[7][3] = -1
    out.append(scenario_dyad("so(8,antidiag)", "inner:diag(i,i,i,i,-i,-i,-i,-i)",
                             json.dumps(t).replace(" ", ""), "dyad_so8"))
    out.append(scenarios_g11zero())
    return out


def scenarios_g11zero():
    from isolab.scenarios import Scenario

    return Scenario("g11zero", "sl(2)+sl(2)", "inner:diag(1,-1,1,1)", "inner:diag(1,1,1,-1)",
                    construction={"kind": "g11zero"},
                    description="sl(2) + sl(2) with involutions acting on different summands")


if __name__ == "__main__":
    data = {"scenarios": [s.to_dict() for s in all_scenarios()]}
    path = Path(__file__).resolve().parent.parent / "src" / "isolab" / "data" / "scenarios.json"
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(data['scenarios'])} scenarios to {path}")
