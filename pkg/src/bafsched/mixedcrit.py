"""Non-preemptive mixed-criticality match-up scheduling of F-shaped jobs.

Consecutive height classes (2i-1, 2i) are paired: the taller jobs act as
machines whose capacity is the width gained on their top level, the shorter
ones as jobs.  Each pair is solved with the PTAS and the resulting nesting is
laid out back to back on a single time line.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .core import (
    CapacityError,
    DomainError,
    IdentifierError,
    InfeasibleInstanceError,
    InputError,
    Instance,
    to_duration,
)
from .exact import DEFAULT_ENUM_BUDGET, DEFAULT_STATE_BUDGET
from .schemes import ptas_solve

STANDALONE = "standalone"


@dataclass(frozen=True)
class FJob:
    id: int
    widths: tuple[Fraction, ...]

    def __post_init__(self):
        widths = tuple(to_duration(w) for w in self.widths)
        object.__setattr__(self, "widths", widths)
        if not widths:
            raise InputError("empty-widths", f"job {self.id} has no levels")
        if any(w <= 0 for w in widths):
            raise InputError("non-positive-duration", f"job {self.id} has a non-positive width")
        if any(a > b for a, b in zip(widths, widths[1:])):
            raise InputError("decreasing-widths", f"job {self.id} widths must be non-decreasing")

    @property
    def height(self) -> int:
        return len(self.widths)

    def width(self, level: int) -> Fraction:
        """Width on ``level``, counted from 1."""
        return self.widths[level - 1]

    @property
    def top(self) -> Fraction:
        return self.widths[-1]


@dataclass(frozen=True)
class MCInstance:
    jobs: tuple[FJob, ...]

    def __post_init__(self):
        object.__setattr__(self, "jobs", tuple(self.jobs))
        seen = set()
        for b in self.jobs:
            if b.id in seen:
                raise InputError("duplicate-id", f"job id {b.id} appears twice")
            seen.add(b.id)

    @property
    def L(self) -> int:
        return max((b.height for b in self.jobs), default=1)

    def job(self, ident: int) -> FJob:
        for b in self.jobs:
            if b.id == ident:
                return b
        raise IdentifierError(f"unknown job {ident!r}")

    def of_height(self, h: int) -> list[FJob]:
        return sorted((b for b in self.jobs if b.height == h), key=lambda b: b.id)


@dataclass(frozen=True)
class MCSchedule:
    start: dict[int, Fraction]
    nesting: dict[int, int | str] = field(default_factory=dict)


def pair_members(mc: MCInstance, i: int) -> tuple[list[FJob], list[FJob]]:
    """(jobs, machines) of pair ``i``, each sorted by id; list position is the
    id inside the reduced instance."""
    if not 1 <= i <= mc.L // 2:
        raise DomainError(f"pair index {i} outside 1..{mc.L // 2}")
    return mc.of_height(2 * i - 1), mc.of_height(2 * i)


def pair_reduce(mc: MCInstance, i: int) -> Instance:
    """Base-and-additional-fee instance of pair ``i``.

    Raises InfeasibleInstanceError when pair ``i`` has jobs but no machines.
    """
    jobs, machines = pair_members(mc, i)
    if jobs and not machines:
        raise InfeasibleInstanceError(f"pair {i}: {len(jobs)} jobs of height {2 * i - 1} but none of height {2 * i}")
    return Instance(
        tuple(b.width(2 * i - 1) for b in jobs),
        tuple(b.width(2 * i) - b.width(2 * i - 1) for b in machines),
        allow_zero_capacity=True,
    )


def root_span(root: FJob, children: Sequence[FJob]) -> Fraction:
    """Length of the window a root occupies with its nested children."""
    if not children:
        return root.top
    return max(root.top, root.width(root.height - 1) + sum(b.top for b in children))


def mc_solve(mc: MCInstance, epsilon, state_budget: int = DEFAULT_STATE_BUDGET) -> MCSchedule:
    roots: list[FJob] = []
    children: dict[int, list[FJob]] = {}
    fallback: list[FJob] = []
    L = mc.L
    for i in range(1, L // 2 + 1):
        jobs, machines = pair_members(mc, i)
        if jobs and not machines:
            fallback.extend(jobs)
            continue
        sched = ptas_solve(pair_reduce(mc, i), epsilon, state_budget)
        for b in machines:
            roots.append(b)
            children[b.id] = []
        for j, q in sorted(sched.assignment.items()):
            children[machines[q].id].append(jobs[j])
    if L % 2 == 1:
        roots.extend(mc.of_height(L))
    roots.extend(fallback)

    start: dict[int, Fraction] = {}
    nesting: dict[int, int | str] = {}
    clock = Fraction(0)
    for root in roots:
        kids = sorted(children.get(root.id, []), key=lambda b: b.id)
        start[root.id] = clock
        nesting[root.id] = STANDALONE
        if kids:
            at = clock + root.width(root.height - 1)
            for kid in kids:
                start[kid.id] = at
                nesting[kid.id] = root.id
                at += kid.top
        clock += root_span(root, kids)
    return MCSchedule(start, nesting)


def mc_feasible(mc: MCInstance, sched: MCSchedule) -> list[tuple[int, int, int]]:
    """Every (level, B, B') whose level intervals overlap; B.id < B'.id."""
    for b in mc.jobs:
        if b.id not in sched.start:
            raise IdentifierError(f"job {b.id} has no start time")
    out = []
    jobs = sorted(mc.jobs, key=lambda b: b.id)
    for level in range(1, mc.L + 1):
        active = [b for b in jobs if b.height >= level]
        for b, b2 in itertools.combinations(active, 2):
            s, s2 = sched.start[b.id], sched.start[b2.id]
            if not (s2 + b2.width(level) <= s or s + b.width(level) <= s2):
                out.append((level, b.id, b2.id))
    return out


def mc_makespan(mc: MCInstance, sched: MCSchedule) -> Fraction:
    return max((sched.start[b.id] + b.top for b in mc.jobs), default=Fraction(0))


def mc_lower_bound(mc: MCInstance) -> Fraction:
    """Heaviest level load, or the widest single job, whichever is larger."""
    if not mc.jobs:
        return Fraction(0)
    level_loads = (
        sum((b.width(level) for b in mc.jobs if b.height >= level), Fraction(0))
        for level in range(1, mc.L + 1)
    )
    return max(max(level_loads), max(b.top for b in mc.jobs))


def mc_brute_force_l2(mc: MCInstance, enum_budget: int = DEFAULT_ENUM_BUDGET) -> Fraction:
    """Optimal makespan for at most two levels by trying every nesting."""
    if mc.L > 2:
        raise DomainError(f"exhaustive search supports L <= 2, got L = {mc.L}")
    low, high = mc.of_height(1), mc.of_height(2)
    count = (len(high) + 1) ** len(low)
    if count > enum_budget:
        raise CapacityError(f"{count} nestings exceed budget {enum_budget}", count, enum_budget)
    best = None
    # choice len(high) means standalone
    for choice in itertools.product(range(len(high) + 1), repeat=len(low)):
        nested: list[list[FJob]] = [[] for _ in high]
        total = Fraction(0)
        for b, q in zip(low, choice):
            if q == len(high):
                total += b.top
            else:
                nested[q].append(b)
        total += sum((root_span(r, kids) for r, kids in zip(high, nested)), Fraction(0))
        if best is None or total < best:
            best = total
    return best if best is not None else Fraction(0)


def mc_instance(widths: Mapping[int, Sequence] | Sequence[Sequence]) -> MCInstance:
    """Shorthand: ``{id: widths}`` or a list of width lists (ids by position)."""
    items = widths.items() if isinstance(widths, Mapping) else enumerate(widths)
    return MCInstance(tuple(FJob(i, tuple(w)) for i, w in items))
