"""Problem data model for base-and-additional-fee scheduling.

Every duration is a :class:`fractions.Fraction`.  Binary floats are refused at
the boundary so that objective values, ratios and DP comparisons stay exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

DurationLike = Union[str, int, Fraction, tuple]

_DECIMAL = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)$")
_RATIO = re.compile(r"^[+-]?\d+\s*/\s*\d+$")


class SchedulingError(Exception):
    """Base class for every error raised by this package."""


class InputError(SchedulingError, ValueError):
    """Malformed or invalid input data.  ``code`` names the diagnostic."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


class IdentifierError(SchedulingError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown identifier"


class InfeasibleInstanceError(SchedulingError):
    """Jobs exist but there is no machine to put them on."""


class CapacityError(SchedulingError):
    """A search space exceeds its configured budget."""

    def __init__(self, message: str, size: int, budget: int):
        super().__init__(message)
        self.size = size
        self.budget = budget


class DomainError(SchedulingError, ValueError):
    pass


class ValidationError(SchedulingError):
    def __init__(self, violations: list[Violation]):
        super().__init__("; ".join(str(v) for v in violations))
        self.violations = violations


def to_duration(value: DurationLike) -> Fraction:
    """Convert ``value`` to an exact Fraction.

    Accepts ints, Fractions, ``(numerator, denominator)`` pairs and decimal or
    ``"a/b"`` strings.  Floats are rejected.
    """
    if isinstance(value, bool):
        raise InputError("bad-duration", f"boolean is not a duration: {value!r}")
    if isinstance(value, float):
        raise InputError("float-duration", f"binary float {value!r} is not accepted; pass a string")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, tuple):
        if len(value) != 2 or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
            raise InputError("bad-duration", f"expected (numerator, denominator), got {value!r}")
        if value[1] == 0:
            raise InputError("bad-duration", "zero denominator")
        return Fraction(value[0], value[1])
    if isinstance(value, str):
        text = value.strip()
        if _DECIMAL.match(text) or _RATIO.match(text):
            try:
                return Fraction(text.replace(" ", ""))
            except ZeroDivisionError:
                raise InputError("bad-duration", f"zero denominator in {value!r}") from None
        raise InputError("bad-duration", f"cannot parse duration {value!r}")
    raise InputError("bad-duration", f"unsupported duration type {type(value).__name__}")


def format_duration(x: Fraction) -> str:
    """``"num/den"``, or just ``"num"`` for integers."""
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Instance:
    """Jobs ``0..n-1`` with processing times ``p`` and machines ``0..m-1``
    with capacities ``c``.

    ``allow_zero_capacity`` admits ``c_i == 0``; it is only set on instances
    derived internally (residual capacities, mixed-criticality pair reduction).
    """

    p: tuple[Fraction, ...]
    c: tuple[Fraction, ...]
    allow_zero_capacity: bool = False

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(to_duration(x) for x in self.p))
        object.__setattr__(self, "c", tuple(to_duration(x) for x in self.c))
        for j, pj in enumerate(self.p):
            if pj <= 0:
                raise InputError("non-positive-duration", f"job {j} has p={format_duration(pj)}")
        for i, ci in enumerate(self.c):
            if ci < 0 or (ci == 0 and not self.allow_zero_capacity):
                raise InputError("non-positive-duration", f"machine {i} has c={format_duration(ci)}")
        if self.p and not self.c:
            raise InfeasibleInstanceError(f"{len(self.p)} jobs but no machines")

    @classmethod
    def from_pairs(
        cls,
        jobs: Iterable[tuple[int, DurationLike]],
        machines: Iterable[tuple[int, DurationLike]],
        allow_zero_capacity: bool = False,
    ) -> Instance:
        """Build from ``(id, value)`` pairs given in any order."""
        return cls(
            _by_id(jobs, "job"), _by_id(machines, "machine"), allow_zero_capacity=allow_zero_capacity
        )

    @property
    def n(self) -> int:
        return len(self.p)

    @property
    def m(self) -> int:
        return len(self.c)

    def scaled(self, factor: Fraction) -> Instance:
        return Instance(
            tuple(x * factor for x in self.p),
            tuple(x * factor for x in self.c),
            allow_zero_capacity=self.allow_zero_capacity,
        )


def _by_id(pairs: Iterable[tuple[int, DurationLike]], kind: str) -> tuple[Fraction, ...]:
    values: dict[int, Fraction] = {}
    for ident, value in pairs:
        if not isinstance(ident, int) or isinstance(ident, bool):
            raise InputError("bad-id", f"{kind} id {ident!r} is not an integer")
        if ident in values:
            raise InputError("duplicate-id", f"{kind} id {ident} appears twice")
        values[ident] = to_duration(value)
    if sorted(values) != list(range(len(values))):
        raise InputError("non-contiguous-id", f"{kind} ids must be 0..{len(values) - 1}")
    return tuple(values[i] for i in range(len(values)))


@dataclass(frozen=True)
class Schedule:
    assignment: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "assignment", dict(self.assignment))

    @classmethod
    def from_list(cls, machines: Sequence[int]) -> Schedule:
        return cls(dict(enumerate(machines)))

    def as_list(self, n: int) -> list[int]:
        return [self.assignment[j] for j in range(n)]

    def jobs_on(self, machine_id: int) -> list[int]:
        return sorted(j for j, i in self.assignment.items() if i == machine_id)


@dataclass(frozen=True)
class Violation:
    kind: str  # "missing-job", "unknown-machine" or "unknown-job"
    job: int
    machine: int | None = None

    def __str__(self) -> str:
        if self.kind == "unknown-machine":
            return f"unknown-machine({self.job}->{self.machine})"
        return f"{self.kind}({self.job})"


@dataclass(frozen=True)
class Evaluation:
    per_machine: dict[int, Fraction] = field(default_factory=dict)
    total: Fraction = Fraction(0)


def validate_schedule(inst: Instance, sched: Schedule) -> list[Violation]:
    out = []
    for j in range(inst.n):
        if j not in sched.assignment:
            out.append(Violation("missing-job", j))
    for j, i in sorted(sched.assignment.items()):
        if not (isinstance(j, int) and 0 <= j < inst.n):
            out.append(Violation("unknown-job", j, i))
        elif not (isinstance(i, int) and 0 <= i < inst.m):
            out.append(Violation("unknown-machine", j, i))
    return out


def loads(inst: Instance, sched: Schedule) -> list[Fraction]:
    result = [Fraction(0)] * inst.m
    for j, i in sched.assignment.items():
        result[i] += inst.p[j]
    return result


def working_time(inst: Instance, sched: Schedule, machine_id: int) -> Fraction:
    if not (isinstance(machine_id, int) and 0 <= machine_id < inst.m):
        raise IdentifierError(f"unknown machine {machine_id!r}")
    load = sum((inst.p[j] for j, i in sched.assignment.items() if i == machine_id), Fraction(0))
    return max(load, inst.c[machine_id])


def evaluate(inst: Instance, sched: Schedule) -> Evaluation:
    violations = validate_schedule(inst, sched)
    if violations:
        raise ValidationError(violations)
    per_machine = {i: max(load, c) for i, (load, c) in enumerate(zip(loads(inst, sched), inst.c))}
    return Evaluation(per_machine, sum(per_machine.values(), Fraction(0)))


def total_cost(p: Sequence[Fraction], c: Sequence[Fraction], assignment: Sequence[int]) -> Fraction:
    """Objective for a plain assignment vector; no validation."""
    acc = [Fraction(0)] * len(c)
    for j, i in enumerate(assignment):
        acc[i] += p[j]
    return sum((max(a, ci) for a, ci in zip(acc, c)), Fraction(0))
