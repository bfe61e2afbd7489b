# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause
"""
Problem model: jobs, instances, schedules and energy profiles.

Times and energies are integers.  Quantities derived from them, such as
a(I)/D or (2/3)T, are kept as `Fraction` so that every threshold test is
exact.
"""

import bisect
from fractions import Fraction
from typing import (
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    NamedTuple,
    Sequence,
    Tuple,
    Union,
)

from .errors import InfeasibleSchedule, InvalidInput, UnknownJob

Rational = Union[int, Fraction]


class Job(NamedTuple):
    id: str
    p: int
    e: int


class Violation(NamedTuple):
    kind: str
    job: str
    detail: str

    def __str__(self) -> str:
        return "{} {} ({})".format(self.kind, self.job, self.detail)


def is_integer(value: object) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def area(jobs: Iterable[Job]) -> int:
    return sum(j.p * j.e for j in jobs)


def width(jobs: Iterable[Job]) -> int:
    return sum(j.p for j in jobs)


def height(jobs: Iterable[Job]) -> int:
    return sum(j.e for j in jobs)


def positive(value: Rational) -> Rational:
    return value if value > 0 else 0


class Instance:
    """
    A deadline and a nonempty list of jobs.

    The constructor rejects anything that is not a valid instance, so
    code holding an `Instance` never re-checks job data.
    """

    def __init__(self, deadline: int, jobs: Iterable[Job]) -> None:
        if not is_integer(deadline) or deadline < 1:
            raise InvalidInput("deadline must be a positive integer")

        self._deadline = deadline
        self._jobs = tuple(jobs)
        self._index = {}  # type: Dict[str, Job]

        if not self._jobs:
            raise InvalidInput("instance has no jobs")

        for job in self._jobs:
            if not isinstance(job.id, str) or not job.id:
                raise InvalidInput("job id must be a nonempty string")
            if job.id in self._index:
                raise InvalidInput("duplicate job id {!r}".format(job.id))
            for name, value in (("p", job.p), ("e", job.e)):
                if not is_integer(value) or value < 1:
                    raise InvalidInput(
                        "job {!r}: {} must be a positive integer".format(
                            job.id, name
                        )
                    )
            if job.p > deadline:
                raise InvalidInput(
                    "job {!r}: processing time {} exceeds deadline {}".format(
                        job.id, job.p, deadline
                    )
                )
            self._index[job.id] = job

    def __repr__(self) -> str:
        return "Instance(deadline={}, jobs={})".format(
            self._deadline, list(self._jobs)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (self._deadline, self._jobs) == (other.deadline, other.jobs)

    def __hash__(self) -> int:
        return hash((self._deadline, self._jobs))

    def __len__(self) -> int:
        return len(self._jobs)

    def __iter__(self) -> Iterator[Job]:
        return iter(self._jobs)

    def __contains__(self, job_id: object) -> bool:
        return job_id in self._index

    @property
    def deadline(self) -> int:
        return self._deadline

    @property
    def jobs(self) -> Tuple[Job, ...]:
        return self._jobs

    @property
    def ids(self) -> List[str]:
        return [j.id for j in self._jobs]

    @property
    def e_max(self) -> int:
        return max(j.e for j in self._jobs)

    @property
    def w_max(self) -> int:
        return max(j.p for j in self._jobs)

    @property
    def area(self) -> int:
        return area(self._jobs)

    def job(self, job_id: str) -> Job:
        try:
            return self._index[job_id]
        except KeyError:
            raise UnknownJob(job_id)

    def subset(self, ids: Iterable[str]) -> List[Job]:
        """
        Jobs with the given ids, in instance order.
        """
        wanted = set(ids)
        for job_id in wanted:
            self.job(job_id)
        return [j for j in self._jobs if j.id in wanted]

    def restrict(self, ids: Iterable[str]) -> "Instance":
        return Instance(self._deadline, self.subset(ids))


class Schedule(Mapping[str, int]):
    """
    Start times by job id.

    The assignments are kept in the order they were given, including
    repeated ids, so that `validate` can report duplicates found in an
    input file.  Lookups return the last start given for an id.
    """

    def __init__(
            self,
            assignments: Union[Mapping[str, int],
                               Iterable[Tuple[str, int]]] = (),
    ) -> None:
        if isinstance(assignments, Mapping):
            pairs = list(assignments.items())
        else:
            pairs = list(assignments)
        self._pairs = tuple((job_id, start) for job_id, start in pairs)
        self._starts = dict(self._pairs)

    def __getitem__(self, job_id: str) -> int:
        return self._starts[job_id]

    def __iter__(self) -> Iterator[str]:
        return iter(self._starts)

    def __len__(self) -> int:
        return len(self._starts)

    def __repr__(self) -> str:
        return "Schedule({})".format(dict(self._starts))

    @property
    def pairs(self) -> Tuple[Tuple[str, int], ...]:
        return self._pairs

    @property
    def duplicates(self) -> List[str]:
        seen = set()  # type: set
        dups = []  # type: List[str]
        for job_id, _ in self._pairs:
            if job_id in seen and job_id not in dups:
                dups.append(job_id)
            seen.add(job_id)
        return dups

    def merge(self, other: Mapping[str, int]) -> "Schedule":
        """
        Combine two partial schedules.  Shared ids are kept twice so a
        later `validate` flags them.
        """
        if isinstance(other, Schedule):
            extra = list(other.pairs)
        else:
            extra = list(other.items())
        return Schedule(list(self._pairs) + extra)

    def update(self, changes: Mapping[str, int]) -> "Schedule":
        starts = dict(self._starts)
        starts.update(changes)
        return Schedule(starts)

    def without(self, ids: Iterable[str]) -> "Schedule":
        drop = set(ids)
        return Schedule(
            (i, s) for i, s in self._starts.items() if i not in drop
        )

    def restrict(self, ids: Iterable[str]) -> "Schedule":
        keep = set(ids)
        return Schedule((i, s) for i, s in self._starts.items() if i in keep)

    def shifted(self, offset: int) -> "Schedule":
        return Schedule((i, s + offset) for i, s in self._starts.items())


class Profile:
    """
    Piecewise-constant energy level on [0, D), stored at breakpoints.
    """

    def __init__(self, deadline: int, breakpoints: Sequence[Tuple[int, int]]):
        self._deadline = deadline
        self._breakpoints = tuple(breakpoints)
        self._times = [t for t, _ in self._breakpoints]

    def __repr__(self) -> str:
        return "Profile({}, {})".format(
            self._deadline, list(self._breakpoints)
        )

    @property
    def deadline(self) -> int:
        return self._deadline

    @property
    def breakpoints(self) -> Tuple[Tuple[int, int], ...]:
        return self._breakpoints

    @property
    def peak(self) -> int:
        return max(level for _, level in self._breakpoints)

    def level(self, time: Rational) -> int:
        if time < 0 or time >= self._deadline:
            return 0
        i = bisect.bisect_right(self._times, time) - 1
        return self._breakpoints[i][1]

    def segments(self) -> Iterator[Tuple[int, int, int]]:
        """
        Yield `(start, end, level)` for each constant piece.
        """
        ends = self._times[1:] + [self._deadline]
        for (start, level), end in zip(self._breakpoints, ends):
            yield start, end, level

    def levels_on(self, start: Rational, end: Rational) -> List[int]:
        return [
            level for s, e, level in self.segments() if s < end and start < e
        ]

    def max_on(self, start: Rational, end: Rational) -> int:
        return max(self.levels_on(start, end), default=0)

    def min_on(self, start: Rational, end: Rational) -> int:
        return min(self.levels_on(start, end), default=0)

    def units(self) -> List[int]:
        """
        Level of every integer time unit.
        """
        levels = []  # type: List[int]
        for start, end, level in self.segments():
            levels.extend([level] * (end - start))
        return levels


def validate(instance: Instance, schedule: Schedule) -> List[Violation]:
    """
    Check a schedule against an instance.

    One violation is returned per unknown id, duplicate assignment,
    missing job, non-integral or negative start and deadline overrun;
    an empty list means the schedule is feasible.
    """
    violations = []  # type: List[Violation]

    for job_id in schedule:
        if job_id not in instance:
            violations.append(Violation("unknown", job_id, "not in instance"))

    for job_id in schedule.duplicates:
        violations.append(
            Violation("duplicate", job_id, "assigned more than once")
        )

    for job in instance:
        if job.id not in schedule:
            violations.append(Violation("missing", job.id, "no start time"))
            continue
        violations.extend(
            _check_start(instance.deadline, job, schedule[job.id])
        )

    return violations


def _check_start(deadline: int, job: Job, start: int) -> List[Violation]:
    if not is_integer(start):
        return [Violation("non-integer", job.id, "start {!r}".format(start))]
    if start < 0:
        return [Violation("negative-start", job.id, "start {}".format(start))]
    if start + job.p > deadline:
        return [
            Violation(
                "deadline",
                job.id,
                "ends at {} after deadline {}".format(start + job.p, deadline),
            )
        ]
    return []


def profile(
        instance: Instance,
        subset: Iterable[str],
        schedule: Mapping[str, int],
) -> Profile:
    """
    Energy profile of `subset` under `schedule`.
    """
    jobs = instance.subset(subset)
    violations = []  # type: List[Violation]
    deltas = {0: 0}  # type: Dict[int, int]

    for job in jobs:
        if job.id not in schedule:
            violations.append(Violation("missing", job.id, "no start time"))
            continue
        start = schedule[job.id]
        problems = _check_start(instance.deadline, job, start)
        if problems:
            violations.extend(problems)
            continue
        deltas[start] = deltas.get(start, 0) + job.e
        end = start + job.p
        deltas[end] = deltas.get(end, 0) - job.e

    if violations:
        raise InfeasibleSchedule(violations)

    breakpoints = []  # type: List[Tuple[int, int]]
    level = 0
    for time in sorted(deltas):
        if time >= instance.deadline:
            break
        level += deltas[time]
        if breakpoints and breakpoints[-1][1] == level:
            continue
        breakpoints.append((time, level))

    return Profile(instance.deadline, breakpoints)


def peak(instance: Instance, schedule: Schedule) -> int:
    violations = validate(instance, schedule)
    if violations:
        raise InfeasibleSchedule(violations)
    return profile(instance, instance.ids, schedule).peak


def mirror(instance: Instance, schedule: Mapping[str, int]) -> Schedule:
    """
    Reflect a (possibly partial) schedule in time: s -> D - p - s.
    """
    deadline = instance.deadline
    return Schedule(
        (job_id, deadline - instance.job(job_id).p - start)
        for job_id, start in schedule.items()
    )
