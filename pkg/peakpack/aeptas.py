# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause
"""
Building blocks of the asymptotic scheme, at desk scale.

Jobs are split into large, horizontal, vertical, small and medium ones.
Vertical jobs are spread over time segments by a configuration LP,
small jobs go into the room left above the configurations, horizontal
jobs are restricted to few starting points and placed by a second LP.
Jobs that cannot be placed whole end up in an overflow container.

Where the scheme enumerates profiles, starting points and large-job
positions, this module reads them off a reference schedule; every bound
that depends on it is measured afterwards instead of assumed.
"""

import logging
import math
from fractions import Fraction
from typing import (
    Dict,
    Iterable,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from . import const
from .bounds import exceeds, lower_bound
from .core import Instance, Job, Rational, Schedule, area, positive, profile
from .errors import (
    ConditionViolated,
    Infeasible,
    InternalInvariant,
    InvalidInput,
    ResourceExceeded,
)
from .exact import Limits, greedy_schedule, reference_schedule
from .lp import solve as solve_lp
from .packing import Box, compact_left, nfdh, rects_of, steinberg_pack
from .params import EpsilonParams, epsilon_params
from .repack import Container, extent, place

LOG = logging.getLogger(__name__)

C1 = "c1"
C2 = "c2"
VARIANTS = (C1, C2)

LARGE = "large"
HORIZONTAL = "horizontal"
VERTICAL = "vertical"
SMALL = "small"
MEDIUM = "medium"

Reference = Tuple[Schedule, int, str]


class Classification(NamedTuple):
    large: List[str]
    horizontal: List[str]
    vertical: List[str]
    small: List[str]
    medium: List[str]
    delta: Fraction
    mu: Fraction


class SegmentDemand(NamedTuple):
    """
    Room reserved for vertical and small jobs in one time segment.  The
    top segment lives in the overflow container; its `start` is relative
    to that region.
    """
    index: int
    start: Fraction
    width: Fraction
    budget: Fraction
    volatile: bool = False
    top: bool = False


class Configuration(NamedTuple):
    counts: Tuple[Tuple[Fraction, int], ...]

    @property
    def height(self) -> Fraction:
        return sum((h * a for h, a in self.counts), Fraction(0))

    def count(self, height: Fraction) -> int:
        return dict(self.counts).get(height, 0)


class ConfigurationLP(NamedTuple):
    # Width given to each (budget, configuration) pair; nonzero only.
    x: Dict[Tuple[Fraction, Configuration], Fraction]
    classes: Dict[Fraction, Fraction]
    demand: Dict[Fraction, Fraction]


class FreeBox(NamedTuple):
    start: int
    end: int
    height: Fraction


class VerticalPlacement(NamedTuple):
    schedule: Schedule
    top: Schedule
    fractional: List[str]
    free: List[FreeBox]


class LiteResult(NamedTuple):
    base: Schedule
    overflow: Container
    bound: Fraction
    classification: Classification
    reference: Schedule
    reference_peak: int
    reference_kind: str
    slack: Fraction
    steps: int


def _kind(
        job: Job,
        deadline: int,
        bound: Rational,
        delta: Rational,
        mu: Rational,
) -> str:
    tall = job.e >= delta * bound
    low = exceeds(mu * bound, job.e)
    wide = exceeds(job.p, delta * deadline)
    narrow = exceeds(mu * deadline, job.p)
    if tall and wide:
        return LARGE
    if low and wide:
        return HORIZONTAL
    if tall and narrow:
        return VERTICAL
    if low and narrow:
        return SMALL
    return MEDIUM


def classify(
        instance: Instance,
        bound: Rational,
        delta: Rational,
        mu: Rational,
) -> Classification:
    """
    Partition the jobs by e against delta*T and mu*T and by p against
    delta*D and mu*D.
    """
    if not 0 < mu < delta:
        raise InvalidInput("need 0 < mu < delta, got {} and {}".format(
            mu, delta))

    groups = {}  # type: Dict[str, List[str]]
    for kind in (LARGE, HORIZONTAL, VERTICAL, SMALL, MEDIUM):
        groups[kind] = []
    for job in instance:
        kind = _kind(job, instance.deadline, bound, delta, mu)
        groups[kind].append(job.id)

    return Classification(
        groups[LARGE],
        groups[HORIZONTAL],
        groups[VERTICAL],
        groups[SMALL],
        groups[MEDIUM],
        Fraction(delta),
        Fraction(mu),
    )


def select_gap(
        instance: Instance,
        eps: Rational,
        bound: Rational,
        factor: Rational = const.GAP_FACTOR,
) -> Tuple[Fraction, Fraction]:
    """
    First pair (delta, mu) of consecutive values of
    rho_0 = eps^5 / 4, rho_{i+1} = factor * rho_i * eps^3 whose medium
    jobs have an area of at most (eps^2 / 4) D T.
    """
    eps = Fraction(eps)
    limit = eps**2 / 4 * instance.deadline * Fraction(bound)
    rho = eps**5 / 4
    best = None  # type: Optional[Tuple[int, Fraction, Fraction]]

    for i in range(math.ceil(8 / eps**2) + 1):
        following = factor * rho * eps**3
        medium = classify(instance, bound, rho, following).medium
        load = area(instance.subset(medium))
        if load <= limit:
            LOG.debug("gap %d: delta=%s, medium area %d", i, rho, load)
            return rho, following
        if best is None or load < best[0]:
            best = (load, rho, following)
        rho = following

    assert best is not None
    LOG.warning("no gap keeps the medium area within %s; smallest is %d",
                limit, best[0])
    return best[1], best[2]


def round_vertical(
        classification: Classification,
        instance: Instance,
        eps: Rational,
        delta: Rational,
        bound: Rational,
) -> Dict[str, Fraction]:
    """
    Round the energy demand of vertical and large jobs up.

    A demand in [2^l delta T, 2^(l+1) delta T) is rounded to a multiple
    of 2^m eps delta T, with 2^m the largest power of two not above
    max(1, eps 2^l).  Every result is a multiple of eps delta T and at
    most (1 + eps) times the original.
    """
    eps = Fraction(eps)
    floor = Fraction(delta) * Fraction(bound)
    unit = eps * floor
    rounded = {}  # type: Dict[str, Fraction]

    for job_id in classification.vertical + classification.large:
        e = instance.job(job_id).e
        level = 0
        while floor * 2**(level + 1) <= e:
            level += 1
        scale = max(Fraction(1), eps * 2**level)
        power = 1
        while power * 2 <= scale:
            power *= 2
        step = power * unit
        rounded[job_id] = math.ceil(e / step) * step

    return rounded


def _round_up(value: Rational, step: Fraction) -> Fraction:
    return math.ceil(Fraction(value) / step) * step


def profile_segments(
        base: Schedule,
        instance: Instance,
        classification: Classification,
        gamma: Rational,
        eps: Rational,
        bound: Rational,
        container: Optional[Container] = None,
) -> Tuple[List[SegmentDemand], List[int]]:
    """
    Cut [0, D) into segments of width gamma*D and reserve room for the
    vertical and small jobs in each: T minus the highest level of the
    large and horizontal jobs, rounded up to a multiple of eps*T.

    Segments where that level varies by eps*T or more are volatile and
    get no room.  With a container, a top segment a quarter as wide as
    the container is appended.
    """
    deadline = instance.deadline
    step = Fraction(eps) * Fraction(bound)
    size = Fraction(gamma) * deadline
    levels = profile(instance,
                     classification.large + classification.horizontal, base)

    demands = []  # type: List[SegmentDemand]
    volatile = []  # type: List[int]
    for index in range(math.ceil(1 / Fraction(gamma))):
        start = index * size
        if start >= deadline:
            break
        end = min(start + size, Fraction(deadline))
        high = levels.max_on(start, end)
        if high - levels.min_on(start, end) >= step:
            volatile.append(index)
            demands.append(SegmentDemand(index, start, end - start,
                                         Fraction(0), True))
            continue
        budget = _round_up(positive(bound - high), step)
        demands.append(SegmentDemand(index, start, end - start, budget))

    if container is not None:
        demands.append(
            SegmentDemand(len(demands), Fraction(0),
                          Fraction(math.floor(container.width / 4)),
                          _round_up(container.height, step), top=True))

    LOG.debug("%d segments, %d volatile", len(demands), len(volatile))
    return demands, volatile


def configurations(
        heights: Sequence[Fraction],
        limit: Fraction,
) -> List[Configuration]:
    """
    Every multiset of `heights` of total at most `limit`, the empty one
    included.
    """
    heights = sorted(set(heights), reverse=True)
    found = []  # type: List[Configuration]

    def extend(n: int, room: Fraction,
               counts: List[Tuple[Fraction, int]]) -> None:
        if len(found) > const.MAX_CONFIGURATIONS:
            raise ResourceExceeded(
                "more than {} configurations".format(const.MAX_CONFIGURATIONS)
            )
        if n == len(heights):
            found.append(Configuration(tuple(c for c in counts if c[1])))
            return
        h = heights[n]
        for a in range(int(room // h), -1, -1):
            extend(n + 1, room - a * h, counts + [(h, a)])

    extend(0, Fraction(limit), [])
    return found


def vertical_config_lp(
        rounded: Mapping[str, Fraction],
        instance: Instance,
        demands: Iterable[SegmentDemand],
) -> ConfigurationLP:
    """
    Widths x(b, C) such that the configurations of each budget class b
    fill exactly the width of the segments with budget b, and every
    height h is covered by exactly the total width of its jobs.
    """
    demand = {}  # type: Dict[Fraction, Fraction]
    for job_id, h in rounded.items():
        demand[h] = demand.get(h, Fraction(0)) + instance.job(job_id).p

    classes = {}  # type: Dict[Fraction, Fraction]
    for segment in demands:
        if segment.budget > 0 and segment.width > 0:
            classes[segment.budget] = (classes.get(segment.budget, Fraction(0))
                                       + segment.width)

    if not demand:
        return ConfigurationLP({}, classes, demand)

    heights = sorted(demand, reverse=True)
    columns = [(b, c) for b in sorted(classes)
               for c in configurations(heights, b)]
    if not columns:
        raise Infeasible("no segment has room for vertical jobs")

    a_eq = []  # type: List[List[Rational]]
    b_eq = []  # type: List[Rational]
    for b in sorted(classes):
        a_eq.append([1 if col[0] == b else 0 for col in columns])
        b_eq.append(classes[b])
    for h in heights:
        a_eq.append([col[1].count(h) for col in columns])
        b_eq.append(demand[h])

    result = solve_lp([0] * len(columns), a_eq, b_eq)
    x = {columns[j]: v for j, v in enumerate(result.x) if v}
    LOG.debug("configuration LP: %d columns, %d nonzero", len(columns), len(x))
    if len(x) > len(classes) + len(heights):
        raise InternalInvariant(
            "basic solution with {} nonzero columns".format(len(x))
        )
    return ConfigurationLP(x, classes, demand)


class _Piece(NamedTuple):
    virtual: Fraction
    segment: SegmentDemand


def _pieces(
        demands: Iterable[SegmentDemand],
        budget: Fraction,
) -> List[_Piece]:
    pieces = []  # type: List[_Piece]
    offset = Fraction(0)
    ordered = sorted((s for s in demands if s.budget == budget),
                     key=lambda s: (s.top, s.start))
    for segment in ordered:
        pieces.append(_Piece(offset, segment))
        offset += segment.width
    return pieces


def _locate(pieces: List[_Piece], v: Fraction) -> _Piece:
    for piece in pieces:
        if piece.virtual <= v < piece.virtual + piece.segment.width:
            return piece
    return pieces[-1]


def place_configurations(
        lp: ConfigurationLP,
        rounded: Mapping[str, Fraction],
        instance: Instance,
        demands: Sequence[SegmentDemand],
) -> VerticalPlacement:
    """
    Lay the configurations of each budget class out along its segments
    and fill their slots with vertical jobs, widest first.

    A job that would run past the end of its slot or segment is not
    split: it is reported as fractional and the width it would have
    taken is consumed anyway.
    """
    starts = {}  # type: Dict[str, int]
    top = {}  # type: Dict[str, int]
    fractional = []  # type: List[str]
    free = []  # type: List[FreeBox]

    by_height = {}  # type: Dict[Fraction, List[Job]]
    for job_id, h in rounded.items():
        by_height.setdefault(h, []).append(instance.job(job_id))

    # Slots by height: (budget class, virtual start, virtual end).
    slots = {}  # type: Dict[Fraction, List[Tuple[Fraction, ...]]]
    for budget in sorted(lp.classes):
        pieces = _pieces(demands, budget)
        chosen = sorted(
            ((c, w) for (b, c), w in lp.x.items() if b == budget),
            key=lambda cw: (-cw[0].height, cw[0].counts),
        )
        u = Fraction(0)
        for config, w in chosen:
            for piece in pieces:
                lo = max(u, piece.virtual)
                hi = min(u + w, piece.virtual + piece.segment.width)
                if hi <= lo or piece.segment.top:
                    continue
                origin = piece.segment.start - piece.virtual
                box = FreeBox(math.ceil(origin + lo), math.floor(origin + hi),
                              budget - config.height)
                if box.end > box.start and box.height > 0:
                    free.append(box)
            for h, a in config.counts:
                slots.setdefault(h, []).extend(
                    [(budget, u, u + w)] * a
                )
            u += w

    for h, jobs in sorted(by_height.items()):
        queue = slots.get(h, [])
        n, cursor = 0, queue[0][1] if queue else Fraction(0)
        for job in sorted(jobs, key=lambda j: (-j.p, j.id)):
            if n >= len(queue):
                fractional.append(job.id)
                continue
            budget, _, slot_end = queue[n]
            piece = _locate(_pieces(demands, budget), cursor)
            origin = piece.segment.start - piece.virtual
            start = math.ceil(origin + cursor)
            end = start - origin + job.p
            if (end <= slot_end
                    and end <= piece.virtual + piece.segment.width):
                if piece.segment.top:
                    top[job.id] = start
                else:
                    starts[job.id] = start
                cursor = end
            else:
                fractional.append(job.id)
                rest = Fraction(job.p)
                while rest > 0 and n < len(queue):
                    take = min(rest, queue[n][2] - cursor)
                    cursor += take
                    rest -= take
                    if cursor >= queue[n][2]:
                        n += 1
                        cursor = queue[n][1] if n < len(queue) else cursor
                continue
            if cursor >= slot_end:
                n += 1
                cursor = queue[n][1] if n < len(queue) else cursor

    LOG.debug("%d vertical jobs placed, %d in the top segment, %d fractional",
              len(starts), len(top), len(fractional))
    return VerticalPlacement(Schedule(starts), Schedule(top), fractional, free)


def place_small_nfdh(
        jobs: Sequence[Job],
        boxes: Iterable[FreeBox],
) -> Tuple[Schedule, List[str]]:
    """
    Fill the boxes one after the other with NFDH shelves until no
    further shelf fits.  Returns the placed jobs and the ids left over.
    """
    remaining = list(jobs)
    starts = {}  # type: Dict[str, int]

    for box in boxes:
        if not remaining:
            break
        room = box.end - box.start
        fits = [j for j in remaining if j.p <= room and j.e <= box.height]
        if not fits:
            continue
        energy = {j.id: j.e for j in fits}
        placements, _ = nfdh(rects_of(fits), room)
        for p in placements:
            if p.y + energy[p.id] <= box.height:
                starts[p.id] = box.start + int(p.x)
        remaining = [j for j in remaining if j.id not in starts]

    return Schedule(starts), [j.id for j in remaining]


def _width_class(job: Job, deadline: int) -> int:
    level = 1
    while not exceeds(job.p * 2**level, deadline):
        level += 1
    return level


def reduce_horizontal_starts(
        jobs: Sequence[Job],
        base: Schedule,
        instance: Instance,
        eps: Rational,
) -> Tuple[Dict[str, int], List[str]]:
    """
    Cut the number of distinct starts of horizontal jobs.

    Jobs of width class l, p in (D/2^l, D/2^(l-1)], are grouped by the
    segment of width D/2^l their end falls in.  Each group is stacked by
    start and cut into layers of an eps fraction of the stack height.
    Jobs wholly inside the bottom layer are removed; a job whose bottom
    lies in layer m >= 1 moves to the latest start among the jobs
    reaching into layer m - 1.
    """
    eps = Fraction(eps)
    deadline = instance.deadline
    groups = {}  # type: Dict[Tuple[int, int], List[Job]]
    for job in jobs:
        level = _width_class(job, deadline)
        end = base[job.id] + job.p
        segment = math.ceil(Fraction(end * 2**level, deadline)) - 1
        groups.setdefault((level, segment), []).append(job)

    starts = {}  # type: Dict[str, int]
    removed = []  # type: List[str]
    for key in sorted(groups):
        stack = sorted(groups[key], key=lambda j: (base[j.id], j.id))
        layer = eps * sum(j.e for j in stack)
        bottoms = []  # type: List[Tuple[Job, int]]
        total = 0
        for job in stack:
            bottoms.append((job, total))
            total += job.e

        for job, bottom in bottoms:
            if bottom + job.e <= layer:
                removed.append(job.id)
                continue
            index = math.floor(bottom / layer)
            if index == 0:
                starts[job.id] = base[job.id]
                continue
            below = [
                base[other.id] for other, b in bottoms
                if b < index * layer and b + other.e > (index - 1) * layer
            ]
            starts[job.id] = max(below)

    LOG.debug("%d horizontal jobs kept on %d starts, %d removed",
              len(starts), len(set(starts.values())), len(removed))
    return starts, removed


def horizontal_lp(
        instance: Instance,
        jobs: Sequence[Job],
        starts: Iterable[int],
        budgets: Mapping[int, Rational],
) -> Dict[str, int]:
    """
    Spread each job over the allowed starts so that the load at every
    start stays within its budget, then put each job at the start that
    got most of it.
    """
    if not jobs:
        return {}
    points = sorted(set(starts))
    deadline = instance.deadline
    columns = [(job, s) for job in jobs for s in points
               if s + job.p <= deadline]
    for job in jobs:
        if not any(col[0].id == job.id for col in columns):
            raise Infeasible("no allowed start for job {!r}".format(job.id))

    a_eq = [[1 if col[0].id == job.id else 0 for col in columns]
            for job in jobs]
    b_eq = [1] * len(jobs)  # type: List[Rational]
    a_ub = [[
        col[0].e if col[1] <= s < col[1] + col[0].p else 0 for col in columns
    ] for s in points]
    b_ub = [budgets[s] for s in points]

    result = solve_lp([0] * len(columns), a_eq, b_eq, a_ub, b_ub)
    chosen = {}  # type: Dict[str, Tuple[Fraction, int]]
    for (job, s), value in zip(columns, result.x):
        if job.id not in chosen or value > chosen[job.id][0]:
            chosen[job.id] = (value, s)
    return {job_id: s for job_id, (_, s) in chosen.items()}


def _horizontal_budgets(
        instance: Instance,
        placed: Schedule,
        points: List[int],
        bound: Fraction,
) -> Dict[int, Fraction]:
    levels = profile(instance, placed, placed)
    ends = points[1:] + [instance.deadline]
    return {
        s: bound - levels.max_on(s, end) for s, end in zip(points, ends)
    }


def _strip(jobs: Sequence[Job], deadline: int) -> Dict[str, int]:
    """
    Steinberg packing of `jobs` on the whole horizon, in a box just tall
    enough for the condition to hold.  NFDH if the packer gives up.
    """
    if not jobs:
        return {}
    rects = rects_of(jobs)
    tall = max(j.e for j in jobs)
    box = Box(Fraction(deadline),
              max(Fraction(2 * tall), Fraction(2 * area(jobs), deadline)))
    try:
        placements = compact_left(steinberg_pack(rects, box), rects)
    except InternalInvariant as e:
        LOG.warning("%s; stacking %d jobs with NFDH", e, len(jobs))
        placements, _ = nfdh(rects, deadline)
    return {p.id: math.floor(p.x) for p in placements}


def _pack_region(
        jobs: Sequence[Job],
        width: Rational,
        height: Rational,
        offset: int,
) -> Optional[Dict[str, int]]:
    if not jobs:
        return {}
    rects = rects_of(jobs)
    try:
        placements = steinberg_pack(rects, Box(width, height))
    except (ConditionViolated, InternalInvariant) as e:
        LOG.debug("region at %d: %s", offset, e)
        return None
    placements = compact_left(placements, rects)
    return {p.id: offset + math.floor(p.x) for p in placements}


def _build_overflow(
        instance: Instance,
        width: Fraction,
        height: Fraction,
        narrow: List[Job],
        top: Schedule,
        fractional: List[str],
) -> Tuple[Container, List[str]]:
    """
    The first half of the container takes the narrow medium jobs, the
    third quarter the top segment, the last quarter the fractional
    vertical jobs.  Whatever does not fit is returned.
    """
    quarter = math.floor(width / 4)
    contents = {}  # type: Dict[str, int]
    diverted = []  # type: List[str]

    regions = (
        (narrow, Fraction(2 * quarter), 0),
        (instance.subset(fractional), width - 3 * quarter, 3 * quarter),
    )
    for jobs, room, offset in regions:
        packed = _pack_region(jobs, room, height, offset)
        if packed is None:
            diverted.extend(j.id for j in jobs)
        else:
            contents.update(packed)

    if top:
        shifted = top.shifted(2 * quarter)
        if profile(instance, shifted, shifted).peak <= height:
            contents.update(shifted)
        else:
            diverted.extend(shifted)

    return Container(width, height, Schedule(contents)), diverted


def _attempt(
        instance: Instance,
        params: EpsilonParams,
        variant: str,
        bound: Fraction,
        reference: Schedule,
        gap: Optional[Tuple[Rational, Rational]],
) -> Tuple[Schedule, Container, Classification]:
    eps = params.eps
    deadline = instance.deadline
    delta, mu = gap if gap is not None else select_gap(instance, eps, bound)
    classes = classify(instance, bound, delta, mu)

    if variant == C1:
        shape = Container(params.gamma * deadline, bound, Schedule())
    else:
        shape = Container(Fraction(deadline), Fraction(instance.e_max),
                          Schedule())

    rounded = round_vertical(classes, instance, eps, delta, bound)
    verticals = {i: rounded[i] for i in classes.vertical}
    demands, _ = profile_segments(reference, instance, classes,
                                  params.gamma, eps, bound, shape)
    lp = vertical_config_lp(verticals, instance, demands)
    placed = place_configurations(lp, verticals, instance, demands)
    small, leftovers = place_small_nfdh(instance.subset(classes.small),
                                        placed.free)

    fixed = reference.restrict(classes.large).update(placed.schedule)
    fixed = fixed.update(small)

    horizontal = instance.subset(classes.horizontal)
    reduced, removed = reduce_horizontal_starts(horizontal, reference,
                                                instance, eps)
    points = sorted(set(reduced.values()))
    budgets = _horizontal_budgets(instance, fixed, points, bound)
    kept = [j for j in horizontal if j.id in reduced]
    base = fixed.update(horizontal_lp(instance, kept, points, budgets))

    base = base.update(_strip(instance.subset(leftovers + removed), deadline))
    medium = instance.subset(classes.medium)
    narrow = [j for j in medium if not exceeds(j.p, shape.width / 4)]
    base = base.update(
        _strip([j for j in medium if exceeds(j.p, shape.width / 4)], deadline)
    )

    overflow, diverted = _build_overflow(instance, shape.width, shape.height,
                                         narrow, placed.top,
                                         placed.fractional)
    if diverted:
        LOG.warning("%d jobs did not fit the overflow container",
                    len(diverted))
        ids = set(base) | set(diverted)
        base = greedy_schedule(instance.restrict(ids), base)
    return base, overflow, classes


def schedule_lite(
        instance: Instance,
        eps: Rational = const.EPSILON,
        variant: str = C1,
        limits: Limits = Limits(),
        gap: Optional[Tuple[Rational, Rational]] = None,
        reference: Optional[Reference] = None,
        reference_kind: str = "auto",
) -> LiteResult:
    """
    Place almost all jobs in a base schedule and the rest in an overflow
    container: gamma*D wide and T tall for variant c1, D wide and e_max
    tall for c2.

    T starts at the combined lower bound T' and climbs in steps of
    eps*T' while a step reports the LPs infeasible, up to the largest
    of 2a/D, 2e_max and the reference peak.
    """
    if variant not in VARIANTS:
        raise InvalidInput("unknown variant {!r}".format(variant))
    params = epsilon_params(eps)
    t_prime = lower_bound(instance).t
    if reference is None:
        reference = reference_schedule(instance, reference_kind, limits)
    schedule, reference_peak, kind = reference

    ceiling = max(Fraction(2 * instance.area, instance.deadline),
                  Fraction(2 * instance.e_max), Fraction(reference_peak))
    bound = t_prime
    steps = 0
    while True:
        try:
            base, overflow, classes = _attempt(instance, params, variant,
                                               bound, schedule, gap)
            break
        except Infeasible as e:
            if bound >= ceiling:
                raise Infeasible(
                    "no T up to {} gives a schedule: {}".format(ceiling, e)
                )
            steps += 1
            bound = min(t_prime + steps * params.eps * t_prime, ceiling)
            LOG.debug("%s; raising T to %s", e, bound)

    level = profile(instance, base, base).peak if base else 0
    slack = (Fraction(level, reference_peak) - 1) / params.eps
    LOG.info("base peak %d against %s reference %d (K=%s), %d jobs in the "
             "container", level, kind, reference_peak, slack,
             len(overflow.contents))
    return LiteResult(base, overflow, bound, classes, schedule,
                      reference_peak, kind, slack, steps)


def aeptas_schedule(
        instance: Instance,
        eps: Rational = const.EPSILON,
        variant: str = C2,
        limits: Limits = Limits(),
        reference_kind: str = "auto",
) -> Schedule:
    """
    Complete schedule: the overflow container starts at 0 for c2 and in
    the least loaded window of the base schedule for c1.
    """
    lite = schedule_lite(instance, eps, variant, limits,
                         reference_kind=reference_kind)
    return complete_schedule(instance, lite, variant)


def complete_schedule(
        instance: Instance,
        lite: LiteResult,
        variant: str = C2,
) -> Schedule:
    if not lite.overflow.contents:
        return lite.base

    span = extent(instance, lite.overflow)
    start = 0
    if variant == C1:
        levels = profile(instance, lite.base, lite.base)
        start = min(range(instance.deadline - span + 1),
                    key=lambda s: (levels.max_on(s, s + span), s))
    return lite.base.merge(place(lite.overflow, start))
