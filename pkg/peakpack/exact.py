# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause
"""
Exact oracle: branch and bound over integer start times.

Meant for small instances (about ten jobs on a horizon of about fifteen
units) where it gives the ground truth other solvers are measured
against.
"""

import logging
import math
import time
from typing import Dict, List, Mapping, NamedTuple, Optional, Tuple

from . import const
from .bounds import lower_bound
from .core import Instance, Job, Rational, Schedule, profile
from .errors import InvalidInput, ResourceExceeded
from .packing import shelf_schedule

LOG = logging.getLogger(__name__)

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"

REFERENCES = ("auto", "exact", "ffdh")


class Limits(NamedTuple):
    max_nodes: int = const.MAX_NODES
    time_budget: float = const.TIMEOUT


def search_order(jobs: List[Job]) -> List[Job]:
    """
    Largest area first, then taller, then narrower, then by id.
    Identical jobs end up next to each other.
    """
    return sorted(jobs, key=lambda j: (-j.e * j.p, -j.e, j.p, j.id))


def _candidate_starts(deadline: int, placed: Mapping[str, int],
                      instance: Instance, job: Job) -> List[int]:
    # The window maximum only changes where a window border crosses a
    # breakpoint, so those starts cover every distinct value.
    starts = {0, deadline - job.p}
    for job_id, start in placed.items():
        for t in (start, start + instance.job(job_id).p):
            for s in (t, t - job.p):
                if 0 <= s <= deadline - job.p:
                    starts.add(s)
    return sorted(starts)


def greedy_schedule(
        instance: Instance,
        fixed: Optional[Mapping[str, int]] = None,
) -> Schedule:
    """
    List scheduling: every job not in `fixed` is placed, in search
    order, at the earliest start that minimizes the highest level it
    lands on.
    """
    placed = dict(fixed or {})  # type: Dict[str, int]
    deadline = instance.deadline

    for job in search_order([j for j in instance if j.id not in placed]):
        current = profile(instance, placed, placed)
        best = None  # type: Optional[Tuple[int, int]]
        for s in _candidate_starts(deadline, placed, instance, job):
            key = (current.max_on(s, s + job.p), s)
            if best is None or key < best:
                best = key
        assert best is not None
        placed[job.id] = best[1]

    return Schedule(placed)


class _Search:
    def __init__(
            self,
            instance: Instance,
            limits: Limits,
            bound: int,
            target: int,
    ) -> None:
        self.instance = instance
        self.limits = limits
        self.deadline = instance.deadline
        self.jobs = search_order(list(instance))
        self.levels = [0] * self.deadline
        self.starts = {}  # type: Dict[str, int]
        self.best = None  # type: Optional[Dict[str, int]]
        self.bound = bound
        self.target = target
        self.nodes = 0
        self.started = time.monotonic()
        self.area_left = [0] * (len(self.jobs) + 1)
        for n in range(len(self.jobs) - 1, -1, -1):
            j = self.jobs[n]
            self.area_left[n] = self.area_left[n + 1] + j.p * j.e

    def exceeded(self) -> Optional[str]:
        if self.nodes > self.limits.max_nodes:
            return "node limit of {} reached".format(self.limits.max_nodes)
        if time.monotonic() - self.started > self.limits.time_budget:
            return "time budget of {}s reached".format(self.limits.time_budget)
        return None

    def window(self, job: Job, start: int) -> int:
        return max(self.levels[start:start + job.p])

    def first_start(self, n: int) -> int:
        job = self.jobs[n]
        if n == 0:
            return 0
        previous = self.jobs[n - 1]
        if (previous.p, previous.e) == (job.p, job.e):
            return self.starts[previous.id]
        return 0

    def last_start(self, n: int) -> int:
        job = self.jobs[n]
        if n == 0:
            return (self.deadline - job.p) // 2
        return self.deadline - job.p

    def lower(self, n: int, peak: int) -> int:
        used = sum(self.levels)
        value = max(
            peak, math.ceil((used + self.area_left[n]) / self.deadline)
        )
        for job in self.jobs[n:]:
            least = min(
                self.window(job, s) for s in range(self.deadline - job.p + 1)
            )
            value = max(value, least + job.e)
        return value

    def run(self, n: int, peak: int) -> bool:
        """
        Returns True once the target is reached.
        """
        self.nodes += 1
        reason = self.exceeded()
        if reason:
            raise ResourceExceeded(reason)

        if n == len(self.jobs):
            self.best = dict(self.starts)
            self.bound = peak
            LOG.debug("incumbent %d after %d nodes", peak, self.nodes)
            return peak <= self.target

        if self.lower(n, peak) >= self.bound:
            return False

        job = self.jobs[n]
        candidates = []
        for s in range(self.first_start(n), self.last_start(n) + 1):
            value = self.window(job, s) + job.e
            if value < self.bound:
                candidates.append((value, s))

        for value, s in sorted(candidates):
            if value >= self.bound:
                break
            for t in range(s, s + job.p):
                self.levels[t] += job.e
            self.starts[job.id] = s
            done = self.run(n + 1, max(peak, value))
            del self.starts[job.id]
            for t in range(s, s + job.p):
                self.levels[t] -= job.e
            if done:
                return True
        return False


def exact_opt(
        instance: Instance,
        limits: Limits = Limits(),
) -> Tuple[int, Schedule]:
    """
    Minimum peak and a schedule attaining it.

    The greedy schedule is the first incumbent.  The search stops early
    once the incumbent meets the rounded-up lower bound.  When a limit
    is hit, `ResourceExceeded` carries the incumbent.
    """
    incumbent = greedy_schedule(instance)
    incumbent_peak = profile(instance, instance.ids, incumbent).peak
    target = math.ceil(lower_bound(instance).t)

    if incumbent_peak <= target:
        return incumbent_peak, incumbent

    search = _Search(instance, limits, incumbent_peak, target)
    try:
        search.run(0, 0)
    except ResourceExceeded as e:
        best, peak = _best_of(search, incumbent, incumbent_peak)
        raise ResourceExceeded(str(e), best, peak)

    best, peak = _best_of(search, incumbent, incumbent_peak)
    LOG.info("optimum %d after %d nodes", peak, search.nodes)
    return peak, best


def _best_of(
        search: _Search,
        incumbent: Schedule,
        incumbent_peak: int,
) -> Tuple[Schedule, int]:
    if search.best is None:
        return incumbent, incumbent_peak
    found = Schedule(search.best)
    return found, search.bound


def exact_decision(
        instance: Instance,
        value: Rational,
        limits: Limits = Limits(),
) -> str:
    """
    Whether some schedule has a peak of at most `value`.
    """
    ceiling = math.floor(value)
    if ceiling >= sum(j.e for j in instance):
        return FEASIBLE
    if ceiling < math.ceil(lower_bound(instance).t):
        return INFEASIBLE

    greedy = greedy_schedule(instance)
    if profile(instance, instance.ids, greedy).peak <= ceiling:
        return FEASIBLE

    search = _Search(instance, limits, ceiling + 1, ceiling)
    search.run(0, 0)
    return FEASIBLE if search.best is not None else INFEASIBLE


def reference_schedule(
        instance: Instance,
        kind: str = "auto",
        limits: Limits = Limits(),
) -> Tuple[Schedule, int, str]:
    """
    A complete schedule to measure against, its peak and where it came
    from: "exact", "incumbent" (the oracle ran out of budget) or "ffdh".

    With `kind="auto"` the oracle is used up to `const.EXACT_JOBS` jobs
    and a deadline of `const.EXACT_DEADLINE`.
    """
    if kind not in REFERENCES:
        raise InvalidInput("unknown reference {!r}".format(kind))

    small = (len(instance) <= const.EXACT_JOBS
             and instance.deadline <= const.EXACT_DEADLINE)
    if kind == "exact" or (kind == "auto" and small):
        try:
            opt, schedule = exact_opt(instance, limits)
            return schedule, opt, "exact"
        except ResourceExceeded as e:
            LOG.warning("exact reference stopped early: %s", e)
            assert e.incumbent is not None and e.peak is not None
            return e.incumbent, e.peak, "incumbent"

    schedule = shelf_schedule(instance, "ffdh")
    return schedule, profile(instance, instance.ids, schedule).peak, "ffdh"
