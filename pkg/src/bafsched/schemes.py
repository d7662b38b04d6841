"""Approximation schemes: DP on rounded times, and the layered PTAS built on it."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .core import (
    DomainError,
    IdentifierError,
    InfeasibleInstanceError,
    Instance,
    Schedule,
    to_duration,
)
from .exact import DEFAULT_STATE_BUDGET, dp_assign
from .rounding import RoundedTimes, round_down


def _epsilon(epsilon, upper: Fraction | None = None) -> Fraction:
    eps = to_duration(epsilon)
    if eps <= 0 or (upper is not None and eps > upper):
        bound = f" and at most {upper}" if upper is not None else ""
        raise DomainError(f"epsilon must be positive{bound}, got {eps}")
    return eps


def aqptas_assign(
    jobs: Sequence[int],
    p: Sequence[Fraction],
    c: Sequence[Fraction],
    epsilon: Fraction,
    state_budget: int = DEFAULT_STATE_BUDGET,
) -> tuple[dict[int, int], RoundedTimes]:
    """Round the listed jobs down and solve the rounded instance exactly.

    ``p`` is indexed by job id; only ids in ``jobs`` take part.  Returns the
    job -> machine map and the rounding used.
    """
    rounded = round_down([(j, p[j]) for j in jobs], epsilon)
    machines = dp_assign([rounded.p_hat(j) for j in jobs], c, state_budget)
    return dict(zip(jobs, machines)), rounded


def almost_qptas(inst: Instance, epsilon, state_budget: int = DEFAULT_STATE_BUDGET) -> Schedule:
    eps = _epsilon(epsilon)
    if inst.n == 0:
        return Schedule({})
    assignment, _ = aqptas_assign(range(inst.n), inst.p, inst.c, eps, state_budget)
    return Schedule(assignment)


def layer_index(p, epsilon) -> int:
    """The i >= 0 with eps**(i+1) < p <= eps**i."""
    p = to_duration(p)
    eps = _epsilon(epsilon, Fraction(1, 2))
    if p <= 0 or p > 1:
        raise DomainError(f"layer index needs 0 < p <= 1, got {p}")
    i = 0
    lower = eps
    while p <= lower:
        lower *= eps
        i += 1
    return i


@dataclass(frozen=True)
class BlockPartition:
    epsilon: Fraction
    K: int
    layers: dict[int, frozenset[int]]  # nonempty layers only
    class_sums: tuple[Fraction, ...]
    t: int
    blocks: tuple[tuple[int, frozenset[int]], ...]  # nonempty, ascending index
    discarded: frozenset[int]

    def block_of_layer(self, layer: int) -> int | None:
        return block_of_layer(layer, self.t, self.K)


def block_of_layer(layer: int, t: int, K: int) -> int | None:
    """Block index holding ``layer``, or None when the layer is a gap."""
    if layer % K == t % K:
        return None
    if layer < t:
        return 0
    return (layer - t) // K + 1


def partition_layers(inst: Instance, epsilon) -> BlockPartition:
    """Split jobs into layers, pick the lightest residue class as the gap and
    group the surviving layers into blocks.

    Layers are taken after scaling the largest job to 1; ``class_sums`` are
    reported in the instance's own units.
    """
    eps = _epsilon(epsilon, Fraction(1, 2))
    K = math.ceil(1 / eps)
    if inst.n == 0:
        return BlockPartition(eps, K, {}, (Fraction(0),) * K, 0, (), frozenset())
    lam = max(inst.p)
    layers: dict[int, set[int]] = {}
    for j, pj in enumerate(inst.p):
        layers.setdefault(layer_index(pj / lam, eps), set()).add(j)

    class_sums = [Fraction(0)] * K
    for ell, members in layers.items():
        class_sums[ell % K] += sum(inst.p[j] for j in members)
    t = min(range(K), key=lambda r: (class_sums[r], r))

    blocks: dict[int, set[int]] = {}
    discarded: set[int] = set()
    for ell, members in layers.items():
        b = block_of_layer(ell, t, K)
        if b is None:
            discarded |= members
        else:
            blocks.setdefault(b, set()).update(members)
    return BlockPartition(
        eps,
        K,
        {ell: frozenset(layers[ell]) for ell in sorted(layers)},
        tuple(class_sums),
        t,
        tuple((b, frozenset(blocks[b])) for b in sorted(blocks)),
        frozenset(discarded),
    )


@dataclass(frozen=True)
class ResidualCapacities:
    per_machine: dict[int, Fraction]

    def as_list(self) -> list[Fraction]:
        return [self.per_machine[i] for i in range(len(self.per_machine))]


def residual_capacities(
    inst: Instance,
    placed: Mapping[int, int],
    rounded: RoundedTimes | Mapping[int, Fraction],
) -> ResidualCapacities:
    """max(c_q - rounded load already on q, 0) for every machine q."""
    if isinstance(rounded, RoundedTimes):
        rounded = {j: ph for j, (_, ph) in rounded.per_job.items()}
    used = [Fraction(0)] * inst.m
    for j, q in placed.items():
        if j not in rounded:
            raise IdentifierError(f"job {j} is placed but has no rounded processing time")
        if not 0 <= q < inst.m:
            raise IdentifierError(f"unknown machine {q}")
        used[q] += rounded[j]
    return ResidualCapacities({q: max(inst.c[q] - used[q], Fraction(0)) for q in range(inst.m)})


def ptas_solve(inst: Instance, epsilon, state_budget: int = DEFAULT_STATE_BUDGET) -> Schedule:
    """Layered PTAS; the result costs at most (1 + 5*eps) times the optimum."""
    eps = _epsilon(epsilon, Fraction(1, 2))
    if inst.n == 0:
        return Schedule({})
    if inst.m == 0:
        raise InfeasibleInstanceError(f"{inst.n} jobs but no machines")

    unit = inst.scaled(1 / max(inst.p))
    part = partition_layers(unit, eps)

    assignment: dict[int, int] = {}
    p_hat: dict[int, Fraction] = {}
    for _, block in part.blocks:
        members = sorted(block)
        residual = residual_capacities(unit, assignment, p_hat).as_list()
        sub, rounded = aqptas_assign(members, unit.p, residual, eps, state_budget)
        assignment.update(sub)
        p_hat.update((j, rounded.p_hat(j)) for j in members)

    # gap jobs go last, largest first, where the true working time grows least
    load = [Fraction(0)] * unit.m
    for j, q in assignment.items():
        load[q] += unit.p[j]
    for j in sorted(part.discarded, key=lambda j: (-unit.p[j], j)):
        def increase(q: int) -> Fraction:
            return max(load[q] + unit.p[j], unit.c[q]) - max(load[q], unit.c[q])

        q = min(range(unit.m), key=lambda q: (increase(q), q))
        assignment[j] = q
        load[q] += unit.p[j]
    return Schedule(assignment)
