# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause
"""
JSON documents for instances, schedules and bounds.
"""

import json
import re
from fractions import Fraction
from typing import IO, Any, Dict, List, Tuple, Union

from .core import (
    Instance,
    Job,
    Rational,
    Schedule,
    is_integer,
    peak,
    validate,
)
from .errors import InfeasibleSchedule, InvalidInput

RATIONAL = re.compile(r"^\s*[-+]?(\d+(\.\d*)?|\.\d+)(\s*/\s*\d+)?\s*$")


def rational(value: Rational) -> Union[int, str]:
    """
    Integral values stay integers; others become "num/den".
    """
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return "{}/{}".format(value.numerator, value.denominator)


def parse_rational(text: Union[str, int]) -> Fraction:
    if is_integer(text):
        return Fraction(text)
    if not isinstance(text, str) or not RATIONAL.match(text):
        raise InvalidInput("not a rational number: {!r}".format(text))
    try:
        return Fraction(text.replace(" ", ""))
    except (ValueError, ZeroDivisionError):
        raise InvalidInput("not a rational number: {!r}".format(text))


def _load(fh: IO[str]) -> Any:
    try:
        return json.load(fh)
    except ValueError as e:
        raise InvalidInput("invalid JSON: {}".format(e))


def _dump(document: Any, fh: IO[str]) -> None:
    json.dump(document, fh, indent=2)
    fh.write("\n")


def _field(obj: Any, key: str, where: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise InvalidInput("{}: missing key {!r}".format(where, key))
    return obj[key]


def _jobs(document: Any) -> List[Job]:
    entries = _field(document, "jobs", "instance")
    if not isinstance(entries, list):
        raise InvalidInput("instance: 'jobs' must be a list")
    jobs = []
    for n, entry in enumerate(entries):
        where = "job #{}".format(n)
        jobs.append(
            Job(
                _field(entry, "id", where),
                _field(entry, "p", where),
                _field(entry, "e", where),
            )
        )
    return jobs


def instance_from_document(document: Any) -> Instance:
    return Instance(_field(document, "deadline", "instance"), _jobs(document))


def instance_document(instance: Instance) -> Dict[str, Any]:
    return {
        "deadline": instance.deadline,
        "jobs": [{"id": j.id, "p": j.p, "e": j.e} for j in instance],
    }


def read_instance(fh: IO[str]) -> Instance:
    return instance_from_document(_load(fh))


def write_instance(instance: Instance, fh: IO[str]) -> None:
    _dump(instance_document(instance), fh)


def read_subset(fh: IO[str], instance: Instance) -> List[Job]:
    """
    Read a job list (an instance document whose deadline is optional)
    and check that every job belongs to `instance` unchanged.
    """
    jobs = _jobs(_load(fh))
    for job in jobs:
        if instance.job(job.id) != job:
            raise InvalidInput(
                "job {!r} differs from the instance".format(job.id)
            )
    return jobs


def schedule_from_document(document: Any) -> Schedule:
    entries = _field(document, "assignments", "schedule")
    if not isinstance(entries, list):
        raise InvalidInput("schedule: 'assignments' must be a list")
    pairs = []  # type: List[Tuple[str, int]]
    for n, entry in enumerate(entries):
        where = "assignment #{}".format(n)
        start = _field(entry, "start", where)
        if not is_integer(start):
            raise InvalidInput("{}: start must be an integer".format(where))
        pairs.append((_field(entry, "id", where), start))
    return Schedule(pairs)


def schedule_document(
        instance: Instance,
        schedule: Schedule,
        algorithm: str,
) -> Dict[str, Any]:
    """
    Build the document of a complete schedule.  The schedule must pass
    validation; nothing infeasible is ever written.
    """
    violations = validate(instance, schedule)
    if violations:
        raise InfeasibleSchedule(violations)
    return {
        "algorithm": algorithm,
        "peak": peak(instance, schedule),
        "assignments": [
            {"id": j.id, "start": schedule[j.id]} for j in instance
        ],
    }


def read_schedule(fh: IO[str]) -> Schedule:
    return schedule_from_document(_load(fh))


def write_schedule(
        instance: Instance,
        schedule: Schedule,
        algorithm: str,
        fh: IO[str],
) -> None:
    _dump(schedule_document(instance, schedule, algorithm), fh)


def write_document(document: Any, fh: IO[str]) -> None:
    _dump(document, fh)
