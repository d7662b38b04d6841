"""Solvers for scheduling with base and additional fees, and for F-shaped
mixed-criticality jobs."""

from .core import (
    Evaluation,
    Instance,
    Schedule,
    evaluate,
    validate_schedule,
    working_time,
)
from .exact import brute_force_solve, distinct_times, dp_solve
from .greedy import ffd_solve, ffd_trace
from .mixedcrit import FJob, MCInstance, MCSchedule, mc_feasible, mc_makespan, mc_solve
from .rounding import distinct_count_bound, round_down
from .schemes import almost_qptas, layer_index, partition_layers, ptas_solve

__version__ = "0.1.0"
