"""Command line entry point.

Exit codes: 0 success, 1 solver error or failed verification, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .core import (
    CapacityError,
    InfeasibleInstanceError,
    InputError,
    SchedulingError,
    evaluate,
    format_duration,
    validate_schedule,
)
from .exact import DEFAULT_ENUM_BUDGET, DEFAULT_STATE_BUDGET
from .mixedcrit import mc_feasible, mc_lower_bound, mc_makespan, mc_solve
from .toolkit.bench import ALGORITHMS, bench_run, load_suite, records_to_csv, solver
from .toolkit.formats import (
    mc_schedule_to_dict,
    parse_instance,
    parse_mc_instance,
    parse_mc_schedule,
    parse_schedule,
    schedule_to_dict,
    serialize_instance,
)
from .toolkit.generators import FAMILIES, gen_instance


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise _Fail(2, f"cannot read {path}: {exc.strerror}") from None


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.instance))
    if args.algo == "oracle":
        from .exact import brute_force_solve

        sched = brute_force_solve(inst, args.enum_budget)
    else:
        sched = solver(args.algo, args.epsilon, args.state_budget)(inst)
    ev = evaluate(inst, sched)
    doc = schedule_to_dict(sched)
    doc["total"] = format_duration(ev.total)
    _emit(doc)
    return 0


def cmd_verify(args) -> int:
    inst = parse_instance(_read(args.instance))
    sched = parse_schedule(_read(args.schedule))
    violations = validate_schedule(inst, sched)
    if violations:
        _emit({"valid": False, "violations": [str(v) for v in violations]})
        return 1
    ev = evaluate(inst, sched)
    _emit(
        {
            "valid": True,
            "total": format_duration(ev.total),
            "per_machine": {str(i): format_duration(t) for i, t in ev.per_machine.items()},
        }
    )
    return 0


def _param(text: str):
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    key = key.replace("-", "_")
    try:
        return key, int(value)
    except ValueError:
        return key, value


def cmd_gen(args) -> int:
    params = dict(args.param or [])
    if args.n is not None:
        params["n"] = args.n
    if args.m is not None:
        params["m"] = args.m
    if args.epsilon is not None:
        params["epsilon"] = args.epsilon
    try:
        inst = gen_instance(args.family, args.seed, **params)
    except TypeError as exc:
        raise _Fail(2, f"bad parameters for {args.family}: {exc}") from None
    sys.stdout.write(serialize_instance(inst))
    return 0


def cmd_bench(args) -> int:
    suite = load_suite(_read(args.suite), os.path.dirname(os.path.abspath(args.suite)))
    records = bench_run(suite.instances, suite.algorithms, suite.epsilons, suite.oracle_limit)
    text = records_to_csv(records, timing=not args.no_timing)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


def cmd_mc_solve(args) -> int:
    mc = parse_mc_instance(_read(args.instance))
    sched = mc_solve(mc, args.epsilon, args.state_budget)
    doc = mc_schedule_to_dict(sched)
    doc["makespan"] = format_duration(mc_makespan(mc, sched))
    _emit(doc)
    return 0


def cmd_mc_verify(args) -> int:
    mc = parse_mc_instance(_read(args.instance))
    sched = parse_mc_schedule(_read(args.schedule))
    violations = mc_feasible(mc, sched)
    doc = {
        "feasible": not violations,
        "violations": [{"level": lv, "jobs": [a, b]} for lv, a, b in violations],
        "makespan": format_duration(mc_makespan(mc, sched)),
        "lower_bound": format_duration(mc_lower_bound(mc)),
    }
    _emit(doc)
    return 0 if not violations else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bafsched", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a scheduling instance")
    p.add_argument("--algo", choices=ALGORITHMS, default="ptas")
    p.add_argument("--epsilon", default="1/4", help="fraction, e.g. 1/4")
    p.add_argument("--state-budget", type=int, default=DEFAULT_STATE_BUDGET)
    p.add_argument("--enum-budget", type=int, default=DEFAULT_ENUM_BUDGET)
    p.add_argument("instance")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a schedule and report its cost")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a generated instance to stdout")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--epsilon")
    p.add_argument("--param", type=_param, action="append", metavar="KEY=VALUE")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run a benchmark suite and write CSV")
    p.add_argument("--suite", required=True)
    p.add_argument("--out")
    p.add_argument("--no-timing", action="store_true", help="leave wall_ms empty")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("mc-solve", help="schedule F-shaped mixed-criticality jobs")
    p.add_argument("--epsilon", default="1/4")
    p.add_argument("--state-budget", type=int, default=DEFAULT_STATE_BUDGET)
    p.add_argument("instance")
    p.set_defaults(func=cmd_mc_solve)

    p = sub.add_parser("mc-verify", help="check a mixed-criticality schedule")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.set_defaults(func=cmd_mc_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (InputError, InfeasibleInstanceError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (CapacityError, SchedulingError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
