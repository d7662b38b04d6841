"""First Fit Decreasing for base-and-additional-fee scheduling (3/2-approximation)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import InfeasibleInstanceError, Instance, Schedule


@dataclass(frozen=True)
class TraceStep:
    machine: int
    job: int
    load_after: Fraction
    phase: str  # "main" while filling capacities, "leftover" afterwards


def ffd_trace(inst: Instance) -> tuple[Schedule, list[TraceStep]]:
    """Run FFD and return the schedule with every assignment decision.

    Machines are visited in non-increasing capacity (ties: lower id first).
    Each machine takes the largest remaining job while its load is below its
    capacity; a load equal to the capacity counts as full.  Jobs still
    unassigned after all machines go, largest first, to the machine whose
    working time grows least (ties: lower id).
    """
    if inst.n and not inst.m:
        raise InfeasibleInstanceError(f"{inst.n} jobs but no machines")
    jobs = sorted(range(inst.n), key=lambda j: (-inst.p[j], j))
    machines = sorted(range(inst.m), key=lambda i: (-inst.c[i], i))
    load = [Fraction(0)] * inst.m
    assignment: dict[int, int] = {}
    log: list[TraceStep] = []
    nxt = 0

    for i in machines:
        while load[i] < inst.c[i] and nxt < len(jobs):
            j = jobs[nxt]
            nxt += 1
            assignment[j] = i
            load[i] += inst.p[j]
            log.append(TraceStep(i, j, load[i], "main"))

    for j in jobs[nxt:]:
        def increase(i: int) -> Fraction:
            return max(load[i] + inst.p[j], inst.c[i]) - max(load[i], inst.c[i])

        i = min(range(inst.m), key=lambda i: (increase(i), i))
        assignment[j] = i
        load[i] += inst.p[j]
        log.append(TraceStep(i, j, load[i], "leftover"))

    return Schedule(assignment), log


def ffd_solve(inst: Instance) -> Schedule:
    return ffd_trace(inst)[0]
