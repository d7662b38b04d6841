from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bafsched.core import (
    IdentifierError,
    InfeasibleInstanceError,
    InputError,
    Instance,
    Schedule,
    ValidationError,
    Violation,
    evaluate,
    to_duration,
    validate_schedule,
    working_time,
)
from tests.conftest import durations, instances


def test_working_time_empty_machine_floors_at_capacity():
    assert working_time(Instance((), (1,)), Schedule({}), 0) == 1


def test_working_time_tight_example_machine():
    inst = Instance(("9/10", "9/10"), (1,))
    assert working_time(inst, Schedule({0: 0, 1: 0}), 0) == Fraction(9, 5)


def test_working_time_overloaded():
    inst = Instance((3, 2), (4,))
    assert working_time(inst, Schedule({0: 0, 1: 0}), 0) == 5


def test_working_time_unknown_machine():
    with pytest.raises(IdentifierError):
        working_time(Instance((), (1,)), Schedule({}), 3)


def test_evaluate_tight_example():
    inst = Instance(("9/10", "9/10"), (1, 1))
    assert evaluate(inst, Schedule({0: 0, 1: 1})).total == 2
    both = evaluate(inst, Schedule({0: 0, 1: 0}))
    assert both.total == Fraction(14, 5)
    assert both.per_machine == {0: Fraction(9, 5), 1: 1}


def test_evaluate_without_jobs_sums_capacities():
    assert evaluate(Instance((), (2, 3)), Schedule({})).total == 5


def test_empty_instance_costs_nothing():
    assert evaluate(Instance((), ()), Schedule({})).total == 0


def test_evaluate_rejects_invalid_schedule():
    inst = Instance((1, 1, 1), (1,))
    with pytest.raises(ValidationError) as err:
        evaluate(inst, Schedule({0: 0, 1: 0}))
    assert "missing-job(2)" in str(err.value)


def test_validate_schedule():
    inst = Instance((1, 1, 1), (1, 1))
    assert validate_schedule(inst, Schedule({0: 0, 1: 1, 2: 0})) == []
    assert validate_schedule(inst, Schedule({0: 0, 1: 1})) == [Violation("missing-job", 2)]
    assert validate_schedule(inst, Schedule({0: 9, 1: 1, 2: 0})) == [
        Violation("unknown-machine", 0, 9)
    ]
    assert str(Violation("unknown-machine", 0, 9)) == "unknown-machine(0->9)"


@pytest.mark.parametrize(
    "raw, expected",
    [("0.9", Fraction(9, 10)), ("9/10", Fraction(9, 10)), (3, Fraction(3)), ((7, 4), Fraction(7, 4)), (" 1.25 ", Fraction(5, 4))],
)
def test_to_duration(raw, expected):
    assert to_duration(raw) == expected


@pytest.mark.parametrize("raw", [0.9, "abc", (1, 0), "1/0", True, None])
def test_to_duration_rejects(raw):
    with pytest.raises(InputError):
        to_duration(raw)


def test_instance_invariants():
    with pytest.raises(InputError, match="non-positive"):
        Instance((0,), (1,))
    with pytest.raises(InputError, match="non-positive"):
        Instance((1,), (0,))
    assert Instance((1,), (0,), allow_zero_capacity=True).c == (0,)
    with pytest.raises(InfeasibleInstanceError):
        Instance((1,), ())
    with pytest.raises(InputError, match="duplicate-id"):
        Instance.from_pairs([(0, 1), (0, 2)], [(0, 1)])
    with pytest.raises(InputError, match="non-contiguous-id"):
        Instance.from_pairs([(0, 1), (2, 2)], [(0, 1)])


def test_from_pairs_accepts_any_order():
    inst = Instance.from_pairs([(1, "2"), (0, "1")], [(0, 5)])
    assert inst.p == (1, 2)


@given(instances(), st.randoms(use_true_random=False))
def test_total_bounded_below_by_loads_and_capacities(inst, rnd):
    sched = Schedule({j: rnd.randrange(inst.m) for j in range(inst.n)})
    ev = evaluate(inst, sched)
    assert ev.total >= max(sum(inst.p, Fraction(0)), sum(inst.c, Fraction(0)))
    assert ev.total == sum(ev.per_machine.values())
    for i, t in ev.per_machine.items():
        assert t >= inst.c[i]
        assert t >= sum((inst.p[j] for j in sched.jobs_on(i)), Fraction(0))


@given(instances(), st.randoms(use_true_random=False))
def test_total_invariant_under_relabeling(inst, rnd):
    sched = [rnd.randrange(inst.m) for _ in range(inst.n)]
    jperm = list(range(inst.n))
    mperm = list(range(inst.m))
    rnd.shuffle(jperm)
    rnd.shuffle(mperm)
    # job j becomes jperm[j], machine i becomes mperm[i]
    p = [None] * inst.n
    c = [None] * inst.m
    for j in range(inst.n):
        p[jperm[j]] = inst.p[j]
    for i in range(inst.m):
        c[mperm[i]] = inst.c[i]
    relabeled = Instance(tuple(p), tuple(c))
    moved = Schedule({jperm[j]: mperm[i] for j, i in enumerate(sched)})
    assert evaluate(relabeled, moved).total == evaluate(inst, Schedule.from_list(sched)).total


@given(instances(), durations, st.randoms(use_true_random=False))
def test_objective_is_positively_homogeneous(inst, lam, rnd):
    sched = Schedule({j: rnd.randrange(inst.m) for j in range(inst.n)})
    assert evaluate(inst.scaled(lam), sched).total == lam * evaluate(inst, sched).total
