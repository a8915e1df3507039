"""Wall-clock time of each suite, per bundled scenario.

    python3 scripts/time_scenarios.py [name ...] [--seed N]

Suites are timed cumulatively in pipeline order (css includes
decomposition and classification, and so on), since later suites reuse
earlier results.
"""

import argparse
import time

from isolab.scenarios import DEFAULT_SEED, load_scenarios, rep_dim_of, run, DEFAULT_MAX_DIM

STAGES = [["decompose", "classify"], ["css"], ["css", "contract", "modules"],
          ["decompose", "classify", "css", "contract", "modules", "invariants"]]
LABELS = ["classify", "css", "+modules", "full"]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("names", nargs="*")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = ap.parse_args()
    scenarios = load_scenarios()
    names = args.names or sorted(scenarios)
    print(f"{'scenario':16s} " + " ".join(f"{l:>9s}" for l in LABELS))
    for name in names:
        scn = scenarios[name]
        if rep_dim_of(scn.algebra) > DEFAULT_MAX_DIM:
            print(f"{name:16s} skipped")
            continue
        cells = []
        for suites in STAGES:
            t = time.monotonic()
            run(scn, seed=args.seed, suites=suites)
            cells.append(f"{time.monotonic() - t:8.1f}s")
        print(f"{name:16s} " + " ".join(cells), flush=True)


if __name__ == "__main__":
    main()
