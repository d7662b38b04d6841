"""JSON documents for instances and schedules.

Durations travel as strings ("9/10", "0.9", "3"); JSON numbers are accepted
only when they are integers.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from ..core import InputError, Instance, Schedule, format_duration, to_duration
from ..mixedcrit import STANDALONE, FJob, MCInstance, MCSchedule


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("malformed", f"not valid JSON: {exc}") from None


def _duration(value: Any, where: str) -> Fraction:
    if isinstance(value, float):
        raise InputError("float-duration", f"{where}: write {value!r} as a string")
    try:
        return to_duration(value)
    except InputError as exc:
        raise InputError(exc.code, f"{where}: {exc}") from None


def _records(doc: Any, key: str) -> list[dict]:
    if not isinstance(doc, dict) or key not in doc:
        raise InputError("malformed", f"missing top-level {key!r}")
    items = doc[key]
    if not isinstance(items, list) or not all(isinstance(x, dict) for x in items):
        raise InputError("malformed", f"{key!r} must be a list of objects")
    return items


def _ident(rec: dict, kind: str) -> int:
    ident = rec.get("id")
    if not isinstance(ident, int) or isinstance(ident, bool):
        raise InputError("malformed", f"{kind} record without integer id: {rec!r}")
    return ident


def parse_instance(text: str, allow_zero_capacity: bool = False) -> Instance:
    doc = _load(text)
    jobs, machines = [], []
    for rec in _records(doc, "jobs"):
        ident = _ident(rec, "job")
        if "p" not in rec:
            raise InputError("malformed", f"job {ident} lacks 'p'")
        jobs.append((ident, _duration(rec["p"], f"job {ident}")))
    for rec in _records(doc, "machines"):
        ident = _ident(rec, "machine")
        if "c" not in rec:
            raise InputError("malformed", f"machine {ident} lacks 'c'")
        machines.append((ident, _duration(rec["c"], f"machine {ident}")))
    return Instance.from_pairs(jobs, machines, allow_zero_capacity=allow_zero_capacity)


def instance_to_dict(inst: Instance) -> dict:
    return {
        "jobs": [{"id": j, "p": format_duration(p)} for j, p in enumerate(inst.p)],
        "machines": [{"id": i, "c": format_duration(c)} for i, c in enumerate(inst.c)],
    }


def serialize_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2) + "\n"


def parse_schedule(text: str) -> Schedule:
    doc = _load(text)
    if not isinstance(doc, dict) or not isinstance(doc.get("assignment"), dict):
        raise InputError("malformed", "expected {'assignment': {job: machine}}")
    out = {}
    for key, value in doc["assignment"].items():
        try:
            job = int(key)
        except ValueError:
            raise InputError("malformed", f"job key {key!r} is not an integer") from None
        if not isinstance(value, int) or isinstance(value, bool):
            raise InputError("malformed", f"job {job} maps to non-integer {value!r}")
        out[job] = value
    return Schedule(out)


def schedule_to_dict(sched: Schedule) -> dict:
    return {"assignment": {str(j): i for j, i in sorted(sched.assignment.items())}}


def serialize_schedule(sched: Schedule) -> str:
    return json.dumps(schedule_to_dict(sched), indent=2) + "\n"


def parse_mc_instance(text: str) -> MCInstance:
    doc = _load(text)
    jobs = []
    for rec in _records(doc, "jobs"):
        ident = _ident(rec, "job")
        widths = rec.get("widths")
        if not isinstance(widths, list):
            raise InputError("malformed", f"job {ident} lacks a 'widths' list")
        jobs.append(FJob(ident, tuple(_duration(w, f"job {ident}") for w in widths)))
    return MCInstance(tuple(jobs))


def mc_instance_to_dict(mc: MCInstance) -> dict:
    return {
        "jobs": [
            {"id": b.id, "widths": [format_duration(w) for w in b.widths]}
            for b in sorted(mc.jobs, key=lambda b: b.id)
        ]
    }


def serialize_mc_instance(mc: MCInstance) -> str:
    return json.dumps(mc_instance_to_dict(mc), indent=2) + "\n"


def parse_mc_schedule(text: str) -> MCSchedule:
    doc = _load(text)
    if not isinstance(doc, dict) or not isinstance(doc.get("start"), dict):
        raise InputError("malformed", "expected {'start': {job: time}}")
    start, nesting = {}, {}
    try:
        for key, value in doc["start"].items():
            start[int(key)] = _duration(value, f"start of job {key}")
        for key, value in (doc.get("nesting") or {}).items():
            nesting[int(key)] = STANDALONE if value == STANDALONE else int(value)
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError("malformed", str(exc)) from None
    for job, s in start.items():
        if s < 0:
            raise InputError("negative-start", f"job {job} starts at {format_duration(s)}")
    return MCSchedule(start, nesting)


def mc_schedule_to_dict(sched: MCSchedule) -> dict:
    return {
        "start": {str(j): format_duration(s) for j, s in sorted(sched.start.items())},
        "nesting": {str(j): v for j, v in sorted(sched.nesting.items())},
    }


def serialize_mc_schedule(sched: MCSchedule) -> str:
    return json.dumps(mc_schedule_to_dict(sched), indent=2) + "\n"
