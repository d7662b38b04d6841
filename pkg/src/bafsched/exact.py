"""Optimal solvers: configuration dynamic program and exhaustive oracle."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import CapacityError, InfeasibleInstanceError, Instance, Schedule

DEFAULT_STATE_BUDGET = 5_000_000
DEFAULT_ENUM_BUDGET = 20_000_000

_CHUNK_ROWS = 1 << 16


@dataclass(frozen=True)
class ConfigSpace:
    values: tuple[Fraction, ...]
    counts: tuple[int, ...]
    groups: tuple[tuple[int, ...], ...]  # job ids per value, ascending

    @property
    def size(self) -> int:
        return math.prod(n + 1 for n in self.counts)


@dataclass(frozen=True)
class DPTable:
    space: ConfigSpace
    # (machine_index, q) -> (W(machine_index, q), q' chosen for that machine);
    # None stands for an infinite cost on the i = 0 boundary
    states: dict[tuple[int, tuple[int, ...]], tuple[Fraction | None, tuple[int, ...] | None]]


def _space(p: Sequence[Fraction]) -> ConfigSpace:
    groups: dict[Fraction, list[int]] = {}
    for j, pj in enumerate(p):
        groups.setdefault(pj, []).append(j)
    values = tuple(sorted(groups))
    return ConfigSpace(
        values, tuple(len(groups[v]) for v in values), tuple(tuple(groups[v]) for v in values)
    )


def distinct_times(inst: Instance) -> ConfigSpace:
    return _space(inst.p)


def integer_scale(values: Sequence[Fraction]) -> int:
    """Smallest positive integer that makes every value integral."""
    return math.lcm(1, *(v.denominator for v in values))


class _Table:
    """Mixed-radix encoded DP table.  Tuple (q_1..q_k) has index
    sum(q_l * stride_l) with q_1 most significant, so index order is
    lexicographic order and q - q' is a plain subtraction when q' <= q."""

    def __init__(self, space: ConfigSpace, c: Sequence[Fraction], budget: int):
        self.space = space
        k = len(space.counts)
        size = space.size
        if size > budget:
            raise CapacityError(
                f"DP needs {size} states per machine, budget is {budget}", size, budget
            )
        self.strides = [1] * k
        for ell in range(k - 2, -1, -1):
            self.strides[ell] = self.strides[ell + 1] * (space.counts[ell + 1] + 1)
        self.size = size
        self.scale = integer_scale(list(space.values) + list(c))
        a = [int(v * self.scale) for v in space.values]
        cap = [int(ci * self.scale) for ci in c]

        load = [0]
        for ell in range(k):
            load = [base + x * a[ell] for base in load for x in range(space.counts[ell] + 1)]

        m = len(cap)
        self.cost: list[list[int]] = []
        self.back: list[list[int]] = []
        if m == 0:
            return
        self.cost.append([max(x, cap[0]) for x in load])
        self.back.append(list(range(size)))
        for i in range(1, m):
            prev = self.cost[-1]
            here = [max(x, cap[i]) for x in load]
            w = [0] * size
            b = [0] * size
            for q in range(size):
                subs = [0]
                for ell in range(k):
                    d = (q // self.strides[ell]) % (space.counts[ell] + 1)
                    st = self.strides[ell]
                    subs = [s + x * st for s in subs for x in range(d + 1)]
                best_s = 0
                best = prev[q] + here[0]
                for s in subs:
                    v = prev[q - s] + here[s]
                    if v < best:
                        best, best_s = v, s
                w[q], b[q] = best, best_s
            self.cost.append(w)
            self.back.append(b)

    def digits(self, q: int) -> tuple[int, ...]:
        return tuple(
            (q // st) % (n + 1) for st, n in zip(self.strides, self.space.counts)
        )

    def configurations(self) -> list[tuple[int, ...]]:
        """Per-machine sub-tuples of an optimal solution, machine 0 first."""
        q = self.size - 1
        out = []
        for i in range(len(self.back) - 1, -1, -1):
            s = self.back[i][q]
            out.append(self.digits(s))
            q -= s
        return out[::-1]


def dp_assign(
    p: Sequence[Fraction], c: Sequence[Fraction], state_budget: int = DEFAULT_STATE_BUDGET
) -> list[int]:
    """Optimal assignment vector for plain processing times and capacities.

    Capacities may be zero.  Jobs of equal processing time are handed out in
    ascending job id, lowest machine first.
    """
    if not p:
        return []
    if not c:
        raise InfeasibleInstanceError(f"{len(p)} jobs but no machines")
    space = _space(p)
    table = _Table(space, c, state_budget)
    assignment = [0] * len(p)
    cursor = [0] * len(space.counts)
    for i, counts in enumerate(table.configurations()):
        for ell, qty in enumerate(counts):
            for j in space.groups[ell][cursor[ell]:cursor[ell] + qty]:
                assignment[j] = i
            cursor[ell] += qty
    return assignment


def dp_solve(inst: Instance, state_budget: int = DEFAULT_STATE_BUDGET) -> Schedule:
    return Schedule.from_list(dp_assign(inst.p, inst.c, state_budget))


def dp_table(inst: Instance, state_budget: int = DEFAULT_STATE_BUDGET) -> DPTable:
    """Full W(i, q) table including the boundary row i = 0; meant for inspection."""
    space = _space(inst.p)
    table = _Table(space, inst.c, state_budget)
    zero = (0,) * len(space.counts)
    states: dict = {}
    for q in range(table.size):
        tup = table.digits(q)
        states[(0, tup)] = (Fraction(0) if tup == zero else None, None)
    for i, (row, back) in enumerate(zip(table.cost, table.back), start=1):
        for q in range(table.size):
            states[(i, table.digits(q))] = (Fraction(row[q], table.scale), table.digits(back[q]))
    return DPTable(space, states)


def brute_force_assign(
    p: Sequence[Fraction], c: Sequence[Fraction], enum_budget: int = DEFAULT_ENUM_BUDGET
) -> list[int]:
    """Try all m**n assignments; return the lexicographically smallest minimizer."""
    n, m = len(p), len(c)
    if n == 0:
        return []
    if m == 0:
        raise InfeasibleInstanceError(f"{n} jobs but no machines")
    count = m**n
    if count > enum_budget:
        raise CapacityError(f"{count} assignments exceed budget {enum_budget}", count, enum_budget)

    scale = integer_scale(list(p) + list(c))
    P = [int(x * scale) for x in p]
    C = [int(x * scale) for x in c]
    dtype = np.int64 if sum(P) + max(C) < 2**62 else object

    tail = 0
    while tail < n and m ** (tail + 1) <= _CHUNK_ROWS:
        tail += 1
    lead = n - tail
    rows = np.indices((m,) * tail).reshape(tail, -1).T if tail else np.zeros((1, 0), dtype=int)
    p_tail = np.array(P[lead:], dtype=dtype)
    tail_loads = [((rows == i) * p_tail).sum(axis=1) for i in range(m)]

    best_cost = None
    best = None
    for prefix in itertools.product(range(m), repeat=lead):
        head = [0] * m
        for j, i in enumerate(prefix):
            head[i] += P[j]
        cost = sum(np.maximum(tail_loads[i] + head[i], C[i]) for i in range(m))
        r = int(np.argmin(cost))
        if best_cost is None or cost[r] < best_cost:
            best_cost = cost[r]
            best = list(prefix) + [int(x) for x in rows[r]]
    return best


def brute_force_solve(inst: Instance, enum_budget: int = DEFAULT_ENUM_BUDGET) -> Schedule:
    return Schedule.from_list(brute_force_assign(inst.p, inst.c, enum_budget))
