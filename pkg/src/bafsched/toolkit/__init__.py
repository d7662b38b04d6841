from .bench import BenchRecord, bench_run, load_suite, records_to_csv
from .formats import (
    parse_instance,
    parse_mc_instance,
    parse_mc_schedule,
    parse_schedule,
    serialize_instance,
    serialize_mc_instance,
    serialize_mc_schedule,
    serialize_schedule,
)
from .generators import gen_instance, gen_mc_instance
