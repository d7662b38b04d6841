import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from bafsched.core import Instance, Schedule, evaluate

_acceptance_lines: list[str] = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line per acceptance criterion."""

    def _report(name: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" -- {detail}" if detail else "")
        _acceptance_lines.append(line)
        print(line)

    return _report


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


def rational(rng: random.Random, hi: int = 10, max_den: int = 12) -> Fraction:
    """Random rational in (0, hi]."""
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(1, hi * den), den)


def random_instance(rng: random.Random, max_n: int, max_m: int, min_n: int = 0) -> Instance:
    n = rng.randint(min_n, max_n)
    m = rng.randint(1, max_m)
    return Instance(tuple(rational(rng) for _ in range(n)), tuple(rational(rng) for _ in range(m)))


durations = st.builds(
    Fraction, st.integers(min_value=1, max_value=60), st.integers(min_value=1, max_value=6)
)


@st.composite
def instances(draw, max_n=6, max_m=3, min_n=0):
    p = draw(st.lists(durations, min_size=min_n, max_size=max_n))
    c = draw(st.lists(durations, min_size=1, max_size=max_m))
    return Instance(tuple(p), tuple(c))


def reference_optimum(inst: Instance) -> Fraction:
    """Plain itertools enumeration of every assignment; kept deliberately naive."""
    if inst.n == 0:
        return sum(inst.c, Fraction(0))
    return min(
        evaluate(inst, Schedule.from_list(a)).total
        for a in itertools.product(range(inst.m), repeat=inst.n)
    )
