# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause
"""
L-shaped schedules: tall jobs side by side from time 0, tallest first,
and wide jobs ending exactly at the deadline.
"""

import logging
from fractions import Fraction
from typing import Iterable, List, Tuple

from .bounds import by_energy, lower_bound, taller, wider
from .core import Instance, Job, Schedule, height, profile, width
from .errors import InternalInvariant, PreconditionFailed
from .exact import greedy_schedule

LOG = logging.getLogger(__name__)


def lshape_schedule(
        instance: Instance,
        seq_ids: Iterable[str],
        wide_ids: Iterable[str],
) -> Schedule:
    """
    Partial schedule of `seq_ids` and `wide_ids` only.
    """
    seq = instance.subset(seq_ids)
    wide = instance.subset(wide_ids)

    shared = {j.id for j in seq} & {j.id for j in wide}
    if shared:
        raise PreconditionFailed(
            "jobs both tall and wide: {}".format(", ".join(sorted(shared)))
        )
    if width(seq) > instance.deadline:
        raise PreconditionFailed(
            "tall jobs need {} time units, deadline is {}".format(
                width(seq), instance.deadline
            )
        )

    starts = []  # type: List[Tuple[str, int]]
    offset = 0
    for job in by_energy(seq):
        starts.append((job.id, offset))
        offset += job.p
    for job in wide:
        starts.append((job.id, instance.deadline - job.p))
    return Schedule(starts)


def lshape_sets(
        instance: Instance,
        bound: Fraction,
) -> Tuple[List[Job], List[Job]]:
    seq = taller(instance, bound / 2)
    tall = {j.id for j in seq}
    wide = [
        j for j in wider(instance, Fraction(instance.deadline, 2))
        if j.id not in tall
    ]
    return seq, wide


def lshape_bound_check(instance: Instance) -> Tuple[Schedule, int]:
    """
    Build the L-shape of the jobs taller than T/2 and the jobs wider
    than D/2, with T the combined lower bound, and check that its peak
    stays within T plus half the height of the wide jobs.
    """
    bound = lower_bound(instance).t
    seq, wide = lshape_sets(instance, bound)
    schedule = lshape_schedule(instance, [j.id for j in seq],
                               [j.id for j in wide])

    peak = profile(instance, schedule, schedule).peak
    limit = bound + Fraction(height(wide), 2)
    LOG.debug("L-shape: %d tall, %d wide, peak %d, limit %s", len(seq),
              len(wide), peak, limit)
    if peak > limit:
        raise InternalInvariant(
            "L-shape peak {} exceeds {}".format(peak, limit)
        )
    return schedule, peak


def lshape_solve(instance: Instance) -> Schedule:
    """
    Complete the L-shape with a greedy placement of the remaining jobs.
    """
    schedule, _ = lshape_bound_check(instance)
    return greedy_schedule(instance, schedule)
