"""Seeded instance generators."""

from __future__ import annotations

import random
from fractions import Fraction

from ..core import DomainError, Instance, to_duration
from ..mixedcrit import FJob, MCInstance

FAMILIES = ("uniform", "ffd-tight", "subset-sum-like", "layered")


def _rational(rng: random.Random, hi: int, den: int) -> Fraction:
    """Uniform on the grid {1/den, 2/den, ..., hi}."""
    return Fraction(rng.randint(1, hi * den), den)


def uniform(seed: int, n: int = 6, m: int = 3, hi: int = 10, den: int = 10) -> Instance:
    rng = random.Random(seed)
    p = [_rational(rng, hi, den) for _ in range(n)]
    c = [_rational(rng, hi, den) for _ in range(m)]
    return Instance(tuple(p), tuple(c))


def ffd_tight(epsilon="1/10") -> Instance:
    eps = to_duration(epsilon)
    if not 0 < eps < 1:
        raise DomainError(f"ffd-tight needs 0 < epsilon < 1, got {eps}")
    return Instance((1 - eps, 1 - eps), (Fraction(1), Fraction(1)))


def subset_sum_like(seed: int, n: int = 6, m: int = 2, hi: int = 20) -> Instance:
    """Integer jobs; each capacity is the sum of a random subset of them."""
    rng = random.Random(seed)
    p = [rng.randint(1, hi) for _ in range(n)]
    c = []
    for _ in range(m):
        subset = [x for x in p if rng.random() < 0.5] or [rng.choice(p) if p else 1]
        c.append(sum(subset))
    return Instance(tuple(Fraction(x) for x in p), tuple(Fraction(x) for x in c))


def layered(
    seed: int = 0, n: int = 6, m: int = 2, epsilon="1/2", layers: int = 4, den: int = 8
) -> Instance:
    """Jobs spread over ``layers`` consecutive layers (0-based, relative to the
    largest job being 1); the first three jobs land on layers 0, 1 and 2 when
    ``n`` and ``layers`` allow it.  Capacities are drawn from (0, 2].
    """
    eps = to_duration(epsilon)
    if not 0 < eps <= Fraction(1, 2):
        raise DomainError(f"layered needs 0 < epsilon <= 1/2, got {eps}")
    rng = random.Random(seed)
    p = []
    for j in range(n):
        layer = j if j < min(3, layers) else rng.randrange(layers)
        if j == 0:
            frac = Fraction(1)
        else:
            # strictly inside (eps, 1]
            frac = eps + (1 - eps) * Fraction(rng.randint(1, den), den)
        p.append(frac * eps**layer)
    c = [Fraction(rng.randint(1, 2 * den), den) for _ in range(m)]
    return Instance(tuple(p), tuple(c))


def gen_instance(family: str, seed: int = 0, **params) -> Instance:
    if family == "uniform":
        return uniform(seed, **params)
    if family == "ffd-tight":
        return ffd_tight(**params)
    if family == "subset-sum-like":
        return subset_sum_like(seed, **params)
    if family == "layered":
        return layered(seed, **params)
    raise DomainError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def gen_mc_instance(seed: int, n: int = 6, L: int = 2, hi: int = 10, den: int = 4) -> MCInstance:
    """Random F-shaped jobs with heights in 1..L (at least one job of height L)."""
    rng = random.Random(seed)
    jobs = []
    for b in range(n):
        h = L if b == 0 else rng.randint(1, L)
        widths = sorted(Fraction(rng.randint(1, hi * den), den) for _ in range(h))
        jobs.append(FJob(b, tuple(widths)))
    return MCInstance(tuple(jobs))
