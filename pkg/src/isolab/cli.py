"""isolab command line."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .contraction import (
    degenerate_module,
    duality_check,
    generic_stabilizer,
    max_nilradical_orbit_dim,
)
from .errors import ExpectationMismatch, IsolabError, ResourceGuardError
from .scenarios import (
    DEFAULT_MAX_DIM,
    DEFAULT_SEED,
    Scenario,
    _rng,
    build,
    emit,
    get_scenario,
    load_scenarios,
    rep_dim_of,
    run,
)


def _default_seed() -> int:
    return int(os.environ.get("ISOLAB_SEED", DEFAULT_SEED))


def _resolve(name: str, scenario_file: str | None) -> Scenario:
    p = Path(name)
    if p.suffix == ".json" and p.exists():
        data = json.loads(p.read_text())
        items = data["scenarios"] if "scenarios" in data else [data]
        if len(items) != 1:
            raise SystemExit(f"{name} holds {len(items)} scenarios; pass it with --scenarios and name one")
        return Scenario.from_dict(items[0])
    return get_scenario(name, scenario_file)


def _generic_markdown(d, depth: int = 0) -> str:
    lines = []
    pad = "  " * depth
    for k, v in d.items():
        if isinstance(v, dict):
            lines.append(f"{pad}- **{k}**")
            lines.append(_generic_markdown(v, depth + 1))
        else:
            lines.append(f"{pad}- {k}: {v}")
    return "\n".join(lines)


def _out(obj, fmt: str, report: bool) -> str:
    if fmt == "md" and not report:
        return _generic_markdown(obj) + "\n"
    return emit(obj, fmt)


def _cmd_suites(args, suites, pick=None) -> int:
    scn = _resolve(args.scenario, args.scenarios)
    rep = run(scn, seed=args.seed, suites=suites, max_dim=args.max_dim)
    if pick is None:
        sys.stdout.write(_out(rep, args.format, report=True))
    else:
        sys.stdout.write(_out(pick(rep), args.format, report=False))
    return 0


def cmd_contract(args) -> int:
    scn = _resolve(args.scenario, args.scenarios)
    b = build(scn, args.max_dim)
    perm = tuple(args.perm.split(","))
    rng = _rng(args.seed, scn.name, f"contract:{args.perm}:{args.variant}")
    V = degenerate_module(b.Q, perm, args.variant)
    other = degenerate_module(b.Q, perm, "b" if args.variant == "a" else "a")
    orb = max_nilradical_orbit_dim(V, rng)
    st = generic_stabilizer(V, rng)
    st.max_orbit_dim, st.witness_found = orb.max_orbit_dim, orb.witness_found
    out = {
        "scenario": scn.name,
        "perm": list(perm),
        "variant": args.variant,
        "dim_k": V.k_dim,
        "dim_V": V.dim,
        "module_law": True,
        "nilradical_acts_trivially_twice": True,
        "orbit": orb.to_dict(),
        "stabilizer": st.to_dict(),
        "duality": duality_check(V, other) if args.variant == "a" else duality_check(other, V),
    }
    sys.stdout.write(_out(out, args.format, report=False))
    return 0


def cmd_verify(args) -> int:
    if args.scenario != "all":
        scn = _resolve(args.scenario, args.scenarios)
        rep = run(scn, seed=args.seed, max_dim=args.max_dim)
        sys.stdout.write(emit(rep, args.format))
        if rep["expectations"]["mismatches"]:
            sys.stderr.write(f"expectation mismatch in {scn.name}\n")
            return ExpectationMismatch.exit_code
        return 0
    reports = []
    code = 0
    for name, scn in sorted(load_scenarios(args.scenarios).items()):
        if rep_dim_of(scn.algebra) > args.max_dim:
            reports.append({"scenario": name, "skipped": f"matrix size exceeds --max-dim {args.max_dim}"})
            continue
        try:
            rep = run(scn, seed=args.seed, max_dim=args.max_dim)
        except IsolabError as exc:
            reports.append({"scenario": name, "error": type(exc).__name__, "message": str(exc)})
            code = max(code, exc.exit_code)
            continue
        if rep["expectations"]["mismatches"]:
            code = max(code, ExpectationMismatch.exit_code)
        reports.append(rep)
    if args.format == "md":
        sys.stdout.write(emit([r for r in reports if "dimension_matrix" in r], "md"))
        for r in reports:
            if "dimension_matrix" not in r:
                sys.stdout.write(f"\n{r['scenario']}: {r.get('skipped') or r.get('message')}\n")
    else:
        sys.stdout.write(emit({"seed": args.seed, "reports": reports}, "json"))
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=_default_seed(), help="global seed (env ISOLAB_SEED)")
    common.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM, help="largest matrix size to build")
    common.add_argument("--format", choices=("json", "md"), default="json")
    common.add_argument("--scenarios", default=None, help="scenario file to use instead of the bundled one")

    p = argparse.ArgumentParser(prog="isolab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("decompose", "quaternionic decomposition and classification of the three involutions"),
        ("css", "certified Cartan subspaces and the coincidence table"),
        ("coincidence", "the six coincidence flags with both certificates"),
        ("invariants", "basic invariants, bi-homogeneous components and their invariance"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("scenario")
    sp = sub.add_parser("contract", parents=[common], help="one degenerated module")
    sp.add_argument("scenario")
    sp.add_argument("--perm", default="10,01,11", help="alpha,beta,gamma")
    sp.add_argument("--variant", choices=("a", "b"), default="a")
    sp = sub.add_parser("verify", parents=[common], help="full pipeline with expectations")
    sp.add_argument("scenario", help="scenario name, scenario JSON file, or 'all'")
    sub.add_parser("list", parents=[common], help="bundled scenarios")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "decompose":
            return _cmd_suites(args, ["decompose", "classify"])
        if args.command == "css":
            return _cmd_suites(args, ["css"])
        if args.command == "coincidence":
            return _cmd_suites(args, ["css"], pick=lambda r: {"scenario": r["scenario"],
                                                             "coincidence": r["css"]["coincidence"]})
        if args.command == "invariants":
            return _cmd_suites(args, ["css", "invariants"])
        if args.command == "contract":
            return cmd_contract(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "list":
            for name, s in sorted(load_scenarios(args.scenarios).items()):
                print(f"{name:16s} {s.algebra:18s} {s.description}")
            return 0
    except ResourceGuardError as exc:
        sys.stderr.write(f"isolab: {exc}\n")
        return exc.exit_code
    except IsolabError as exc:
        sys.stderr.write(f"isolab: {type(exc).__name__}: {exc}\n")
        return exc.exit_code
    except KeyError as exc:
        sys.stderr.write(f"isolab: {exc.args[0]}\n")
        return 1
    return 1


if __name__ == "__main__":
    sys.exit(main())
