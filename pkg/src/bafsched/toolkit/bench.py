"""Benchmark harness: run solvers over instances and compare against the oracle."""

from __future__ import annotations

import csv
import io
import json
import os
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from ..core import InputError, Instance, SchedulingError, evaluate, format_duration, to_duration
from ..exact import DEFAULT_STATE_BUDGET, brute_force_solve, dp_solve
from ..greedy import ffd_solve
from ..schemes import almost_qptas, ptas_solve
from .formats import parse_instance
from .generators import gen_instance

CSV_HEADER = ("instance_id", "algorithm", "epsilon", "total", "oracle_total", "ratio", "wall_ms")

ALGORITHMS = ("ffd", "dp", "aqptas", "ptas", "oracle")
USES_EPSILON = {"aqptas", "ptas"}


def solver(algo: str, epsilon: Fraction | None = None, state_budget: int = DEFAULT_STATE_BUDGET) -> Callable:
    if algo == "ffd":
        return ffd_solve
    if algo == "dp":
        return lambda inst: dp_solve(inst, state_budget)
    if algo == "aqptas":
        return lambda inst: almost_qptas(inst, epsilon, state_budget)
    if algo == "ptas":
        return lambda inst: ptas_solve(inst, epsilon, state_budget)
    if algo == "oracle":
        return brute_force_solve
    raise ValueError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")


@dataclass(frozen=True)
class BenchRecord:
    instance_id: str
    algorithm: str
    epsilon: Fraction | None
    total: Fraction | None
    oracle_total: Fraction | None
    ratio: Fraction | None
    wall_time: float  # milliseconds
    error: str | None = None

    def sort_key(self):
        return (self.instance_id, self.algorithm, self.epsilon if self.epsilon is not None else Fraction(-1))


def _oracle_total(inst: Instance, oracle_limit: int) -> Fraction | None:
    if inst.n and inst.m**inst.n > oracle_limit:
        return None
    try:
        return evaluate(inst, brute_force_solve(inst, oracle_limit)).total
    except SchedulingError:
        return None


def bench_run(
    instances: Iterable[tuple[str, Instance]],
    algorithms: Sequence[str],
    epsilons: Sequence = (),
    oracle_limit: int = 100_000,
    state_budget: int = DEFAULT_STATE_BUDGET,
) -> list[BenchRecord]:
    """One record per (instance, algorithm[, epsilon]) cell.

    Solver failures become records with ``error`` set; the run continues.
    The oracle is consulted when ``m**n <= oracle_limit``.
    """
    eps_values = [to_duration(e) for e in epsilons]
    records = []
    for inst_id, inst in instances:
        oracle = _oracle_total(inst, oracle_limit)
        for algo in algorithms:
            for eps in (eps_values if algo in USES_EPSILON else [None]):
                run = solver(algo, eps, state_budget)
                t0 = time.perf_counter()
                try:
                    total = evaluate(inst, run(inst)).total
                    error = None
                except SchedulingError as exc:
                    total, error = None, f"{type(exc).__name__}: {exc}"
                wall = (time.perf_counter() - t0) * 1000
                ratio = total / oracle if total is not None and oracle else None
                records.append(BenchRecord(str(inst_id), algo, eps, total, oracle, ratio, wall, error))
    return sorted(records, key=BenchRecord.sort_key)


def _fmt(x: Fraction | None) -> str:
    return "" if x is None else format_duration(x)


def records_to_csv(records: Iterable[BenchRecord], timing: bool = True) -> str:
    """CSV text with the fixed header.  Failed cells carry ``error:<message>``
    in the total column.  ``timing=False`` leaves wall_ms blank so that the
    output is reproducible byte for byte."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        total = f"error:{r.error}" if r.error else _fmt(r.total)
        wall = f"{r.wall_time:.3f}" if timing else ""
        writer.writerow(
            [r.instance_id, r.algorithm, _fmt(r.epsilon), total, _fmt(r.oracle_total), _fmt(r.ratio), wall]
        )
    return buf.getvalue()


@dataclass(frozen=True)
class Suite:
    instances: list[tuple[str, Instance]]
    algorithms: list[str]
    epsilons: list[Fraction]
    oracle_limit: int


def load_suite(text: str, base_dir: str = ".") -> Suite:
    """Parse a suite document.

    ``{"algorithms": [...], "epsilons": ["1/2"], "oracle_limit": 100000,
    "instances": [{"id": "a", "file": "a.json"},
                  {"id": "b", "generate": {"family": "uniform", "seed": 1, "n": 5}},
                  {"id": "c", "instance": {"jobs": [...], "machines": [...]}}]}``
    Relative ``file`` paths resolve against ``base_dir``.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("malformed", f"suite is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("instances"), list):
        raise InputError("malformed", "suite needs an 'instances' list")
    algorithms = doc.get("algorithms", ["ffd", "dp", "ptas"])
    for algo in algorithms:
        if algo not in ALGORITHMS:
            raise InputError("malformed", f"unknown algorithm {algo!r}")
    instances = []
    for k, entry in enumerate(doc["instances"]):
        inst_id = str(entry.get("id", k))
        if "file" in entry:
            with open(os.path.join(base_dir, entry["file"])) as fh:
                inst = parse_instance(fh.read())
        elif "generate" in entry:
            params = dict(entry["generate"])
            family = params.pop("family")
            seed = params.pop("seed", 0)
            inst = gen_instance(family, seed, **params)
        elif "instance" in entry:
            inst = parse_instance(json.dumps(entry["instance"]))
        else:
            raise InputError("malformed", f"suite entry {inst_id} has no file, generate or instance")
        instances.append((inst_id, inst))
    return Suite(
        instances,
        list(algorithms),
        [to_duration(e) for e in doc.get("epsilons", ["1/2"])],
        int(doc.get("oracle_limit", 100_000)),
    )
