"""Geometric round-down of processing times onto the grid p_min * (1+eps)**k."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .core import DomainError, to_duration


@dataclass(frozen=True)
class RoundedTimes:
    epsilon: Fraction
    p_min: Fraction
    per_job: Mapping[int, tuple[int, Fraction]]  # job id -> (k_j, p_hat_j)

    def p_hat(self, job: int) -> Fraction:
        return self.per_job[job][1]

    def exponent(self, job: int) -> int:
        return self.per_job[job][0]

    def distinct_values(self) -> set[Fraction]:
        return {ph for _, ph in self.per_job.values()}


def floor_log(ratio: Fraction, base: Fraction) -> int:
    """Largest integer k >= 0 with base**k <= ratio, for ratio >= 1 and base > 1.

    Computed by repeated exact multiplication, never through a float log.
    """
    k = 0
    acc = base
    while acc <= ratio:
        acc *= base
        k += 1
    return k


def _check(jobs: list[tuple[int, Fraction]], epsilon: Fraction) -> None:
    if not jobs:
        raise DomainError("round-down needs at least one job")
    if epsilon <= 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    for j, p in jobs:
        if p <= 0:
            raise DomainError(f"job {j} has non-positive processing time {p}")


def round_down(jobs: Iterable[tuple[int, Fraction]], epsilon) -> RoundedTimes:
    jobs = [(j, to_duration(p)) for j, p in jobs]
    epsilon = to_duration(epsilon)
    _check(jobs, epsilon)
    base = 1 + epsilon
    p_min = min(p for _, p in jobs)
    per_job = {}
    for j, p in jobs:
        k = floor_log(p / p_min, base)
        per_job[j] = (k, p_min * base**k)
    return RoundedTimes(epsilon, p_min, per_job)


def distinct_count_bound(jobs: Iterable[tuple[int, Fraction]], epsilon) -> int:
    """floor(log_{1+eps}(p_max / p_min)) + 1."""
    jobs = [(j, to_duration(p)) for j, p in jobs]
    epsilon = to_duration(epsilon)
    _check(jobs, epsilon)
    ps = [p for _, p in jobs]
    return floor_log(max(ps) / min(ps), 1 + epsilon) + 1
