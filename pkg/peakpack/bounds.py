# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause
"""
Lower bounds on the optimal peak.

Every set used by the bounds and by the case conditions of the solvers
("jobs with e > T/3", "jobs with p > D/2", ...) is selected with
`exceeds`, so the strictness convention lives in a single place.
"""

import logging
from fractions import Fraction
from typing import Iterable, Iterator, List, NamedTuple, Tuple

from .core import Instance, Job, Rational, height, width

LOG = logging.getLogger(__name__)


class LowerBounds(NamedTuple):
    t1: Fraction
    t2: Fraction
    t3: Fraction
    t4: Fraction
    t: Fraction


def exceeds(value: Rational, threshold: Rational) -> bool:
    """
    Membership test of every threshold set: strictly above.
    """
    return value > threshold


def taller(jobs: Iterable[Job], threshold: Rational) -> List[Job]:
    return [j for j in jobs if exceeds(j.e, threshold)]


def wider(jobs: Iterable[Job], threshold: Rational) -> List[Job]:
    return [j for j in jobs if exceeds(j.p, threshold)]


def by_energy(jobs: Iterable[Job]) -> List[Job]:
    """
    Decreasing energy demand, ties by id.
    """
    return sorted(jobs, key=lambda j: (-j.e, j.id))


def _prefixes(ordered: List[Job], deadline: int) -> Iterator[List[Job]]:
    total = 0
    for k, job in enumerate(ordered):
        total += job.p
        if total > deadline:
            return
        yield ordered[:k + 1]


def t1(instance: Instance) -> Fraction:
    deadline = instance.deadline
    return max(
        Fraction(instance.e_max),
        Fraction(instance.area, deadline),
        Fraction(height(wider(instance, Fraction(deadline, 2)))),
    )


def t2_descent(instance: Instance) -> Tuple[Fraction, int]:
    """
    Smallest T with w(e > T/3) + w(e > 2T/3) <= 2D and w(e > T/2) <= D,
    together with the number of updates it took.

    Starting from T = 0, each update moves T to the first value at which
    a job leaves one of the three sets, so every update drops at least
    one membership and at most 3n updates happen.
    """
    deadline = instance.deadline
    jobs = instance.jobs
    value = Fraction(0)
    steps = 0

    while True:
        third = taller(jobs, value / 3)
        two_thirds = taller(jobs, value * 2 / 3)
        half = taller(jobs, value / 2)
        if (width(third) + width(two_thirds) <= 2 * deadline
                and width(half) <= deadline):
            return value, steps

        candidates = [
            factor * min(j.e for j in group)
            for group, factor in (
                (third, Fraction(3)),
                (two_thirds, Fraction(3, 2)),
                (half, Fraction(2)),
            ) if group
        ]
        value = min(candidates)
        steps += 1
        LOG.debug("t2 descent step %d: T=%s", steps, value)


def t2(instance: Instance) -> Fraction:
    return t2_descent(instance)[0]


def t3_variants(instance: Instance) -> Tuple[Fraction, Fraction]:
    deadline = instance.deadline
    jobs = instance.jobs

    variant_a = Fraction(0)
    for prefix in _prefixes(by_energy(jobs), deadline):
        last = prefix[-1]
        members = {j.id for j in prefix}
        wide = [
            j for j in jobs
            if exceeds(2 * j.p, 2 * deadline - width(prefix))
            and j.id not in members
        ]
        variant_a = max(
            variant_a, Fraction(min(last.e + height(wide), 2 * last.e))
        )

    variant_b = Fraction(0)
    narrow = [j for j in jobs if not exceeds(2 * j.p, deadline)]
    for prefix in _prefixes(by_energy(narrow), deadline):
        last = prefix[-1]
        wide = [
            j for j in jobs if exceeds(2 * j.p, 2 * deadline - width(prefix))
        ]
        variant_b = max(
            variant_b, Fraction(min(last.e + height(wide), 2 * last.e))
        )

    return variant_a, variant_b


def t3(instance: Instance) -> Fraction:
    return max(t3_variants(instance))


def t4(instance: Instance) -> Fraction:
    deadline = instance.deadline
    jobs = instance.jobs
    best = Fraction(0)

    for prefix in _prefixes(by_energy(jobs), deadline):
        last = prefix[-1]
        members = {j.id for j in prefix}
        threshold = max(
            Fraction(deadline - width(prefix)), Fraction(deadline, 2)
        )
        crossing = [
            j for j in wider(jobs, threshold) if j.id not in members
        ]
        best = max(
            best,
            min(Fraction(2 * last.e), last.e + Fraction(height(crossing), 2))
        )

    return best


def lower_bound(instance: Instance) -> LowerBounds:
    values = (t1(instance), t2(instance), t3(instance), t4(instance))
    return LowerBounds(*values, t=max(values))
