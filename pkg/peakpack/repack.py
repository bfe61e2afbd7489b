# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause
"""
Restructuring a near-optimal base schedule so that an overflow
container of width at most gamma*D and height at most T fits in,
keeping the peak within (5/3)T.

Jobs with e > (2/3)T are called huge here.  The schedule is cut into
ten segments, five on each half; a segment qualifies when at least
gamma*D of it is free of huge jobs.  Inside the chosen segment the
level is brought down to (2/3)T by moving jobs out, after which the
huge jobs of the segment and the overflow container share it.
"""

import logging
import math
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from .bounds import exceeds, lower_bound
from .core import (
    Instance,
    Job,
    Rational,
    Schedule,
    height,
    mirror,
    profile,
    width,
)
from .errors import InfeasibleSchedule, InternalInvariant, PreconditionFailed
from .packing import Box, compact_left, rects_of, steinberg_pack
from .params import EpsilonParams

LOG = logging.getLogger(__name__)

LEFT = "left"
RIGHT = "right"


class Container(NamedTuple):
    """
    A block of jobs placed as a unit.  `contents` holds start times
    relative to the start of the container.
    """
    width: Rational
    height: Rational
    contents: Schedule


class Segment(NamedTuple):
    index: int
    start: Rational
    end: Rational
    side: str

    @property
    def width(self) -> Rational:
        return self.end - self.start


class FitCheck(NamedTuple):
    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def extent(instance: Instance, container: Container) -> int:
    return max(
        (s + instance.job(i).p for i, s in container.contents.items()),
        default=0,
    )


def container_peak(instance: Instance, container: Container) -> int:
    if not container.contents:
        return 0
    return profile(instance, container.contents, container.contents).peak


def check_container(instance: Instance, container: Container) -> None:
    ext = extent(instance, container)
    if ext > container.width:
        raise PreconditionFailed(
            "container contents end at {}, width is {}".format(
                ext, container.width
            )
        )
    level = container_peak(instance, container)
    if level > container.height:
        raise PreconditionFailed(
            "container contents reach {}, height is {}".format(
                level, container.height
            )
        )


def place(container: Container, start: int) -> Schedule:
    return container.contents.shifted(start)


def _end(instance: Instance, schedule: Schedule, job_id: str) -> int:
    return schedule[job_id] + instance.job(job_id).p


def crosses(start: int, end: int, time: Rational) -> bool:
    return start < time < end


def covers(start: int, end: int, time: Rational) -> bool:
    return start <= time < end


def huge_jobs(
        instance: Instance,
        schedule: Schedule,
        bound: Rational,
) -> List[Job]:
    return [
        j for j in instance.subset(schedule)
        if exceeds(j.e, Fraction(2, 3) * bound)
    ]


def split_segments(deadline: int, gamma: Rational) -> List[Segment]:
    """
    Cut [0, D] at tau_1..tau_5 and their mirror images.  Segments come
    in time order; both halves number theirs 1..5 from the outside in.
    """
    d = Fraction(deadline)
    gamma = Fraction(gamma)
    taus = [
        Fraction(0),
        d / 8,
        (15 - 24 * gamma) * d / 64,
        (9 + 11 * gamma) * d / 32,
        (3 + 2 * gamma) * d / 8,
        d / 2,
    ]
    left = [Segment(k, taus[k - 1], taus[k], LEFT) for k in range(1, 6)]
    right = [
        Segment(k, d - taus[k], d - taus[k - 1], RIGHT)
        for k in range(5, 0, -1)
    ]
    return left + right


def uncovered(
        instance: Instance,
        schedule: Schedule,
        segment: Segment,
        bound: Rational,
) -> Fraction:
    """
    Length of the part of `segment` not covered by any huge job.
    """
    intervals = sorted(
        (max(Fraction(schedule[j.id]), Fraction(segment.start)),
         min(Fraction(schedule[j.id] + j.p), Fraction(segment.end)))
        for j in huge_jobs(instance, schedule, bound)
    )
    covered = Fraction(0)
    reach = Fraction(segment.start)
    for lo, hi in intervals:
        lo = max(lo, reach)
        if hi > lo:
            covered += hi - lo
            reach = hi
    return Fraction(segment.width) - covered


def adjust_borders(
        instance: Instance,
        schedule: Schedule,
        segment: Segment,
        bound: Rational,
) -> Segment:
    """
    Move the segment start to the end of a huge job (or to 0) and clip
    its end at the start of a huge job crossing it.
    """
    huge = [(schedule[j.id], schedule[j.id] + j.p)
            for j in huge_jobs(instance, schedule, bound)]
    start, end = segment.start, segment.end

    crossing = [c for s, c in huge if crosses(s, c, start)]
    if crossing:
        start = max(crossing)
    elif segment.index != 1:
        before = [c for _, c in huge if c <= start]
        snapped = max(before, default=0)
        end -= start - snapped
        start = snapped

    clipped = [s for s, c in huge if crosses(s, c, end)]
    if clipped:
        end = min(clipped)

    return Segment(segment.index, start, end, segment.side)


def find_medium_job(
        instance: Instance,
        base: Schedule,
        bound: Rational,
        gamma: Rational,
) -> Optional[Job]:
    deadline = instance.deadline
    for job in sorted(instance.subset(base), key=lambda j: j.id):
        if (gamma * deadline <= job.p <= (1 - 2 * gamma) * deadline
                and Fraction(bound, 3) <= job.e <= Fraction(2, 3) * bound):
            return job
    return None


def choose_segment(
        instance: Instance,
        base: Schedule,
        bound: Rational,
        gamma: Rational,
) -> Tuple[bool, Segment]:
    """
    Returns whether to work on the mirrored schedule, and the adjusted
    segment in that frame.
    """
    need = gamma * instance.deadline
    segments = [
        s for s in split_segments(instance.deadline, gamma) if s.side == LEFT
    ]

    candidates = []  # type: List[Tuple[bool, Segment]]
    for mirrored in (False, True):
        frame = mirror(instance, base) if mirrored else base
        for segment in segments:
            if uncovered(instance, frame, segment, bound) >= need:
                adjusted = adjust_borders(instance, frame, segment, bound)
                LOG.debug("segment %s (mirrored=%s) adjusted to %s", segment,
                          mirrored, adjusted)
                candidates.append((mirrored, adjusted))
                break

    if not candidates:
        raise InternalInvariant("no segment has {} free time".format(need))
    if (len(candidates) == 2
            and candidates[1][1].start < candidates[0][1].start):
        return candidates[1]
    return candidates[0]


def build_c_cont(
        jobs: Iterable[Job],
        seg_width: Rational,
        bound: Rational,
) -> Container:
    rects = rects_of(jobs)
    box = Box(3 * Fraction(seg_width), Fraction(2, 3) * bound)
    placements = compact_left(steinberg_pack(rects, box), rects)
    return Container(
        box.width,
        box.height,
        Schedule((p.id, int(p.x)) for p in placements),
    )


def build_c_tall(
        jobs: Iterable[Job],
        overflow: Container,
        seg_width: Rational,
        bound: Rational,
) -> Container:
    """
    Huge jobs side by side in id order, followed by the overflow
    container.
    """
    starts = []  # type: List[Tuple[str, int]]
    offset = 0
    for job in sorted(jobs, key=lambda j: j.id):
        starts.append((job.id, offset))
        offset += job.p
    contents = Schedule(starts).merge(overflow.contents.shifted(offset))
    return Container(Fraction(seg_width), Fraction(bound), contents)


def shift_right_set(
        instance: Instance,
        base: Schedule,
        tau: Rational,
        move_ids: Iterable[str],
) -> Schedule:
    """
    Delay the jobs in `move_ids`, all of which run at `tau`, so that
    they end at the deadline.
    """
    moves = {}  # type: Dict[str, int]
    for job in instance.subset(move_ids):
        start = base[job.id]
        if not covers(start, start + job.p, tau):
            raise PreconditionFailed(
                "job {!r} does not run at time {}".format(job.id, tau)
            )
        moves[job.id] = instance.deadline - job.p
    return base.update(moves)


def shift_peaks(
        instance: Instance,
        schedule: Schedule,
        tau_star: Rational,
) -> Tuple[int, int]:
    """
    Highest level before and from D/2 + tau*/2 on.
    """
    split = Fraction(instance.deadline, 2) + Fraction(tau_star) / 2
    levels = profile(instance, schedule, schedule).units()
    before = [v for t, v in enumerate(levels) if t < split]
    after = [v for t, v in enumerate(levels) if t >= split]
    return max(before, default=0), max(after, default=0)


class _Unit(NamedTuple):
    name: str
    contents: Schedule
    extent: int


def _crossing_ids(
        instance: Instance,
        schedule: Schedule,
        ids: Iterable[str],
        time: Rational,
) -> List[Job]:
    return [
        j for j in instance.subset(ids)
        if crosses(schedule[j.id], schedule[j.id] + j.p, time)
    ]


def case_k1(
        instance: Instance,
        base: Schedule,
        bound: Rational,
        segment: Segment,
        c_tall: Container,
        c_cont: Container,
) -> Tuple[Schedule, List[_Unit], List[str]]:
    """
    The segment starts at 0: free it by moving the jobs crossing its end
    to the deadline, put the tall container at 0 and the contained jobs
    right after the segment.

    Returns the schedule of the jobs that stay or move, the containers
    with their positions, and the fit checks that failed.
    """
    deadline = instance.deadline
    end = segment.end
    eligible = [
        j for j in _crossing_ids(instance, base, base, end)
        if not exceeds(4 * j.p, 3 * deadline)
    ]

    movers = []  # type: List[Job]
    for job in sorted(eligible, key=lambda j: (-j.e, j.id)):
        level = height(movers)
        if movers and Fraction(bound, 3) <= level <= Fraction(2, 3) * bound:
            break
        movers.append(job)
    LOG.debug("k=1: moving %s", [j.id for j in movers])

    shifted = shift_right_set(instance, base, end, [j.id for j in movers])
    cont_start = math.ceil(end)
    cont_ext = extent(instance, c_cont)

    failed = []  # type: List[str]
    if cont_start + cont_ext > Fraction(deadline, 2):
        failed.append("contained jobs end after D/2")

    units = [
        _Unit("tall", place(c_tall, 0), extent(instance, c_tall)),
        _Unit("cont", place(c_cont, cont_start), cont_ext),
    ]
    return shifted, units, failed


def case_k_ge2(
        instance: Instance,
        base: Schedule,
        bound: Rational,
        segment: Segment,
        k: int,
        c_tall: Container,
        c_cont: Container,
        gamma: Rational,
) -> Tuple[Schedule, List[_Unit], List[str]]:
    """
    Huge jobs flank the segment on both sides.  Jobs crossing its end
    are moved to the deadline in order of their start until at least
    T/3 of them is gone; an overshooting last pick is placed on its own.
    """
    deadline = instance.deadline
    start, end = segment.start, segment.end

    flank = [
        base[j.id] for j in huge_jobs(instance, base, bound)
        if end <= base[j.id] <= deadline - start
    ]
    if not flank:
        raise InternalInvariant(
            "no huge job starts between {} and {}".format(
                end, deadline - start
            )
        )
    right = min(flank)

    middle = [
        j for j in _crossing_ids(instance, base, base, end)
        if not crosses(base[j.id], base[j.id] + j.p, start)
        and not covers(base[j.id], base[j.id] + j.p, right)
    ]

    picked = []  # type: List[Job]
    for job in sorted(middle, key=lambda j: (base[j.id], j.id)):
        if height(picked) >= Fraction(bound, 3):
            break
        picked.append(job)

    single = None  # type: Optional[Job]
    if height(picked) > Fraction(2, 3) * bound:
        single = picked.pop()
    LOG.debug("k=%d: moving %s, single %s", k, [j.id for j in picked],
              single and single.id)

    rest = base.without([single.id]) if single else base
    shifted = shift_right_set(instance, rest, end, [j.id for j in picked])

    cont_ext = extent(instance, c_cont)
    failed = []  # type: List[str]
    units = [
        _Unit("tall", place(c_tall, int(start)), extent(instance, c_tall))
    ]

    if k in (2, 3):
        cont_start = math.ceil(end)
        if cont_start + cont_ext > Fraction(deadline, 2) + Fraction(start) / 2:
            failed.append("contained jobs end after D/2 + start/2")
        units.append(_Unit("cont", place(c_cont, cont_start), cont_ext))
        single_start = 0
    else:
        if cont_ext > start:
            failed.append("contained jobs wider than the segment start")
        units.append(_Unit("cont", place(c_cont, 0), cont_ext))
        single_start = math.ceil(end)

    if single is not None:
        if single.p > gamma * deadline:
            failed.append(
                "single job {!r} wider than gamma*D".format(single.id)
            )
        if single_start + single.p > deadline:
            single_start = deadline - single.p
            failed.append("single job {!r} runs past D".format(single.id))
        units.append(_Unit("single", Schedule({single.id: single_start}),
                           single.p))

    return shifted, units, failed


def _assemble(fixed: Schedule, units: Iterable[_Unit]) -> Schedule:
    schedule = fixed
    for unit in units:
        schedule = schedule.merge(unit.contents)
    return schedule


def _finish(
        instance: Instance,
        fixed: Schedule,
        units: List[_Unit],
        failed: List[str],
        bound: Rational,
) -> Schedule:
    if failed:
        raise InternalInvariant(
            "repacking fit checks failed: {}".format("; ".join(failed))
        )
    limit = Fraction(5, 3) * bound
    schedule = _assemble(fixed, units)
    try:
        level = profile(instance, schedule, schedule).peak
    except InfeasibleSchedule as e:
        raise InternalInvariant(
            "repacked schedule is infeasible: {}".format(e)
        )
    if level > limit:
        raise InternalInvariant(
            "repacked peak {} exceeds {}".format(level, limit)
        )
    return schedule


def _check_preconditions(
        instance: Instance,
        base: Schedule,
        bound: Rational,
        overflow: Container,
        params: EpsilonParams,
) -> None:
    deadline = instance.deadline
    base_ids = set(base)
    extra_ids = set(overflow.contents)
    if base_ids & extra_ids:
        raise PreconditionFailed("jobs both in the base and the container")
    if base_ids | extra_ids != set(instance.ids):
        raise PreconditionFailed("base and container do not cover the jobs")

    if base_ids:
        level = profile(instance, base, base).peak
        if level > bound:
            raise PreconditionFailed(
                "base peak {} exceeds T={}".format(level, bound)
            )
    check_container(instance, overflow)
    if overflow.width > params.gamma * deadline:
        raise PreconditionFailed("container wider than gamma*D")
    if overflow.height > bound:
        raise PreconditionFailed("container taller than T")

    t_prime = lower_bound(instance).t
    wide = [j for j in instance if exceeds(4 * j.p, 3 * deadline)]
    if height(wide) > Fraction(2, 3) * t_prime:
        raise PreconditionFailed("wide jobs taller than (2/3)T'")
    tall = [j for j in instance if exceeds(j.e, Fraction(2, 3) * t_prime)]
    if width(tall) > (1 - Fraction(3, 4) * params.eps) * deadline:
        raise PreconditionFailed("tall jobs wider than (1 - 3eps/4)D")


def repack(
        instance: Instance,
        base: Schedule,
        bound: Rational,
        overflow: Container,
        params: EpsilonParams,
) -> Schedule:
    """
    Merge `overflow` into `base`.  The result covers every job and has
    a peak of at most (5/3) * `bound`.
    """
    _check_preconditions(instance, base, bound, overflow, params)
    if not overflow.contents:
        return base

    deadline = instance.deadline
    gamma = params.gamma

    medium = find_medium_job(instance, base, bound, gamma)
    if medium is not None:
        mirrored = base[medium.id] > deadline - _end(instance, base, medium.id)
        frame = mirror(instance, base) if mirrored else base
        old = frame[medium.id]
        LOG.debug("medium job %s at %d (mirrored=%s)", medium.id, old,
                  mirrored)
        fixed = frame.update({medium.id: deadline - medium.p})
        units = [_Unit("overflow", place(overflow, old),
                       extent(instance, overflow))]
        result = _finish(instance, fixed, units, [], bound)
        return mirror(instance, result) if mirrored else result

    mirrored, segment = choose_segment(instance, base, bound, gamma)
    frame = mirror(instance, base) if mirrored else base
    start, end = segment.start, segment.end
    LOG.info("repacking inside [%s, %s) of segment %d (mirrored=%s)", start,
             end, segment.index, mirrored)

    contained = [
        j for j in instance.subset(frame)
        if start <= frame[j.id] and frame[j.id] + j.p <= end
    ]
    tall_jobs = [
        j for j in contained if exceeds(j.e, Fraction(2, 3) * bound)
    ]
    cont_jobs = [
        j for j in contained if not exceeds(j.e, Fraction(2, 3) * bound)
    ]
    c_tall = build_c_tall(tall_jobs, overflow, segment.width, bound)
    c_cont = build_c_cont(cont_jobs, segment.width, bound)
    remaining = frame.without(j.id for j in contained)

    # With at most (2/3)T left inside the segment nothing has to move:
    # the tall container fits on top and the contained jobs go to D/2,
    # where the base stays within T.
    inside = profile(instance, remaining, remaining).max_on(start, end)
    if inside <= Fraction(2, 3) * bound:
        cont_start = math.ceil(Fraction(deadline, 2))
        cont_ext = extent(instance, c_cont)
        failed = []  # type: List[str]
        if cont_start + cont_ext > deadline:
            failed.append("contained jobs run past D")
        units = [
            _Unit("tall", place(c_tall, int(start)), extent(instance, c_tall)),
            _Unit("cont", place(c_cont, cont_start), cont_ext),
        ]
        fixed = remaining
    elif start == 0:
        fixed, units, failed = case_k1(instance, remaining, bound, segment,
                                       c_tall, c_cont)
    else:
        fixed, units, failed = case_k_ge2(instance, remaining, bound,
                                          segment, segment.index, c_tall,
                                          c_cont, gamma)

    result = _finish(instance, fixed, units, failed, bound)
    return mirror(instance, result) if mirrored else result


def fit_report(gamma: Rational) -> Dict[str, List[FitCheck]]:
    """
    Worst-case container fit arithmetic, in units of D, for both
    readings of tau_3: (9 + 11 gamma)/32 and (9 + 14 gamma)/32.
    """
    gamma = Fraction(gamma)
    tau1 = Fraction(1, 8)
    tau2 = (15 - 24 * gamma) / 64
    tau4 = (3 + 2 * gamma) / 8
    tau5 = Fraction(1, 2)

    report = {}  # type: Dict[str, List[FitCheck]]
    for name, tau3 in (("11", (9 + 11 * gamma) / 32),
                       ("14", (9 + 14 * gamma) / 32)):
        report[name] = [
            FitCheck("segment 2", tau2 + 3 * (tau2 - tau1),
                     tau5 + (tau1 - gamma) / 2),
            FitCheck("segment 3", tau3 + 3 * (tau3 - tau2),
                     tau5 + (tau2 - gamma) / 2),
            FitCheck("segment 4", 3 * (tau4 - tau3), tau3 - gamma),
            FitCheck("segment 5", 3 * (tau5 - tau4), tau4 - gamma),
            FitCheck("single job", gamma, tau1 - gamma),
        ]
    return report

