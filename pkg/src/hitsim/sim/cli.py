"""Command-line entry point.

Subcommands:
  run     execute a scenario file, print verdicts and balances
  check   run a scenario in both worlds and diff the outcomes
  fuzz    randomized check over a seed range
  bench   time the proof operations against the desk-scale bounds
  keygen  emit a requester key profile as JSON

Exit codes: 0 success, 1 comparison diff or benchmark over bound,
2 bad input, 3 timeout.
"""

import argparse
import json
import sys

from ..groups import GROUPS
from ..vpke import keygen
from .bench import format_report, run_benchmarks, within_bounds
from .compare import compare
from .randomized import random_scenario
from .run import run_ideal, run_real
from .scenario import Scenario, ScenarioError, load_scenario


def _cmd_run(args) -> int:
    try:
        scenario = load_scenario(args.scenario)
    except (ScenarioError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    outcome = run_real(scenario)
    for line in outcome.summary_lines():
        print(line)
    if args.audit:
        with open(args.audit, "w", encoding="utf-8") as fh:
            fh.write(outcome.audit_text() + "\n")
        print(f"audit log written to {args.audit}")
    else:
        print("--- audit ---")
        print(outcome.audit_text())
    if outcome.timed_out:
        print("error: run timed out before the contract closed", file=sys.stderr)
        return 3
    return 0


def _check_one(scenario: Scenario, label: str) -> bool:
    real = run_real(scenario)
    ideal = run_ideal(scenario)
    report = compare(real, ideal, scenario)
    status = "ok" if report.clean else "DIFF"
    print(f"{label}: {status}")
    if not report.clean or report.diffs:
        for line in report.lines():
            print(f"  {line}")
    return report.clean


def _cmd_check(args) -> int:
    try:
        scenario = load_scenario(args.scenario)
    except (ScenarioError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0 if _check_one(scenario, args.scenario) else 1


def _parse_seed_range(text: str) -> range:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return range(int(lo), int(hi))
    return range(0, int(text))


def _cmd_fuzz(args) -> int:
    seeds = _parse_seed_range(args.seeds)
    failures = 0
    for seed in seeds:
        scenario = random_scenario(seed, group_name=args.group)
        if not _check_one(scenario, f"seed {seed}"):
            failures += 1
    total = len(seeds)
    print(f"{total - failures}/{total} seeds clean")
    return 1 if failures else 0


def _cmd_bench(args) -> int:
    group = GROUPS[args.group]
    times = run_benchmarks(group, reps=args.reps)
    print(format_report(times))
    return 0 if within_bounds(times) else 1


def _cmd_keygen(args) -> int:
    import random as _random

    group = GROUPS[args.group]
    rng = _random.Random(args.seed) if args.seed is not None else _random.SystemRandom()
    keys = keygen(group, rng)
    profile = {"group": args.group, "secret": keys.secret, "public": keys.public}
    print(json.dumps(profile, indent=2))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hitsim",
        description="Private decentralized task protocol simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a scenario file")
    p_run.add_argument("scenario")
    p_run.add_argument("--audit", help="write the audit log to a file")
    p_run.set_defaults(func=_cmd_run)

    p_check = sub.add_parser("check", help="diff real vs ideal execution")
    p_check.add_argument("scenario")
    p_check.set_defaults(func=_cmd_check)

    p_fuzz = sub.add_parser("fuzz", help="randomized real-vs-ideal checks")
    p_fuzz.add_argument("--seeds", default="0:50", help="N or LO:HI (default 0:50)")
    p_fuzz.add_argument("--group", default="default", choices=sorted(GROUPS))
    p_fuzz.set_defaults(func=_cmd_fuzz)

    p_bench = sub.add_parser("bench", help="time the proof operations")
    p_bench.add_argument("--group", default="default", choices=sorted(GROUPS))
    p_bench.add_argument("--reps", type=int, default=11)
    p_bench.set_defaults(func=_cmd_bench)

    p_keygen = sub.add_parser("keygen", help="emit a requester key profile")
    p_keygen.add_argument("--group", default="default", choices=sorted(GROUPS))
    p_keygen.add_argument("--seed", type=int, default=None)
    p_keygen.set_defaults(func=_cmd_keygen)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
