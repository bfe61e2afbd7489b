# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause
"""
SVG pictures of schedules.

Jobs are drawn sliced: in every unit time column the active jobs are
stacked bottom-up by start time and then id.  Only start times carry
meaning, so the stacking order is a convention.
"""

import logging
import math
from fractions import Fraction
from typing import IO, List, Optional, Tuple

import svgwrite

from .bounds import lower_bound
from .core import Instance, Rational, Schedule, Violation, profile
from .errors import InfeasibleSchedule

LOG = logging.getLogger(__name__)

SCALE = 20
MARGIN = 10
PALETTE = [
    "#4e79a7",
    "#f28e2b",
    "#e15759",
    "#76b7b2",
    "#59a14f",
    "#edc948",
    "#b07aa1",
    "#ff9da7",
    "#9c755f",
    "#bab0ac",
]


def slices(instance: Instance,
           schedule: Schedule) -> List[Tuple[int, int, int, str]]:
    """
    (time, bottom, height, job id) for every unit slice of every job.
    """
    order = sorted(schedule, key=lambda job_id: (schedule[job_id], job_id))
    result = []  # type: List[Tuple[int, int, int, str]]
    for time in range(instance.deadline):
        level = 0
        for job_id in order:
            job = instance.job(job_id)
            if schedule[job_id] <= time < schedule[job_id] + job.p:
                result.append((time, level, job.e, job_id))
                level += job.e
    return result


def drawing(
        instance: Instance,
        schedule: Schedule,
        t_prime: Optional[Rational] = None,
        scale: int = SCALE,
) -> svgwrite.Drawing:
    """
    Draw a (possibly partial) schedule with dashed guides at T' and
    (5/3)T'.  T' defaults to the combined lower bound.
    """
    if schedule.duplicates:
        raise InfeasibleSchedule([
            Violation("duplicate", job_id, "assigned more than once")
            for job_id in schedule.duplicates
        ])
    level = profile(instance, schedule, schedule).peak if schedule else 0
    if t_prime is None:
        t_prime = lower_bound(instance).t
    guides = [Fraction(t_prime), Fraction(5, 3) * Fraction(t_prime)]
    top = max(level, math.ceil(guides[-1])) + 1
    deadline = instance.deadline

    def x(time: Rational) -> float:
        return float(MARGIN + time * scale)

    def y(energy: Rational) -> float:
        return float(MARGIN + (top - energy) * scale)

    dwg = svgwrite.Drawing(
        size=(x(deadline) + MARGIN, y(0) + MARGIN),
        profile="full",
    )
    axes = dwg.g(id="axes", stroke="black")
    axes.add(dwg.line(start=(x(0), y(0)), end=(x(deadline), y(0))))
    axes.add(dwg.line(start=(x(0), y(0)), end=(x(0), y(top))))
    dwg.add(axes)

    colors = {job.id: PALETTE[n % len(PALETTE)]
              for n, job in enumerate(instance)}
    jobs = dwg.g(id="jobs", stroke="white", stroke_width=1)
    for time, bottom, energy, job_id in slices(instance, schedule):
        rect = dwg.rect(
            insert=(x(time), y(bottom + energy)),
            size=(scale, energy * scale),
            fill=colors[job_id],
        )
        rect.set_desc(title=job_id)
        jobs.add(rect)
    dwg.add(jobs)

    lines = dwg.g(id="guides", stroke="gray", stroke_dasharray="4,2")
    for guide in guides:
        lines.add(dwg.line(start=(x(0), y(guide)), end=(x(deadline),
                                                         y(guide))))
    dwg.add(lines)

    LOG.debug("drew %d jobs with peak %d", len(schedule), level)
    return dwg


def render(
        instance: Instance,
        schedule: Schedule,
        fh: IO[str],
        t_prime: Optional[Rational] = None,
) -> None:
    drawing(instance, schedule, t_prime).write(fh, pretty=True)
