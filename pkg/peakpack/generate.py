# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause
"""
Seeded instance generators.

Every instance is drawn from its own `random.Random(seed)`, so the same
arguments always give the same instance (and the same JSON document).
"""

import logging
import math
import random
from typing import Iterator, List

from .core import Instance, Job
from .errors import InvalidInput

LOG = logging.getLogger(__name__)

BALANCED = "balanced"
MANY_TALL = "many-tall"
MANY_WIDE = "many-wide"
KINDS = (BALANCED, MANY_TALL, MANY_WIDE)

MAX_ENERGY = 8


def _check(jobs: int, deadline: int, kind: str, max_energy: int) -> None:
    if jobs < 1:
        raise InvalidInput("an instance needs at least one job")
    if deadline < 1:
        raise InvalidInput("the deadline must be positive")
    if max_energy < 1:
        raise InvalidInput("the energy limit must be positive")
    if kind not in KINDS:
        raise InvalidInput("unknown generator {!r}".format(kind))


def _balanced(rng: random.Random, deadline: int, max_energy: int) -> Job:
    return Job("", rng.randint(1, deadline), rng.randint(1, max_energy))


def _tall(rng: random.Random, deadline: int, max_energy: int,
          count: int) -> Job:
    # Narrow enough that `count` of them fit side by side.
    longest = max(1, deadline // count)
    lowest = max(1, math.ceil(3 * max_energy / 4))
    return Job("", rng.randint(1, longest), rng.randint(lowest, max_energy))


def _wide(rng: random.Random, deadline: int, max_energy: int) -> Job:
    shortest = math.ceil(3 * deadline / 4)
    return Job("", rng.randint(shortest, deadline),
               rng.randint(1, max_energy))


def generate(
        jobs: int,
        deadline: int,
        kind: str = BALANCED,
        seed: int = 0,
        max_energy: int = MAX_ENERGY,
) -> Instance:
    """
    Draw an instance with `jobs` jobs and deadline `deadline`.

    - "balanced": p uniform on [1, D], e uniform on [1, `max_energy`].
    - "many-tall": half of the jobs (rounded up) have e >= 3/4 of
      `max_energy` and are narrow enough to sit side by side.
    - "many-wide": half of the jobs (rounded up) have 4p >= 3D.
    """
    _check(jobs, deadline, kind, max_energy)
    rng = random.Random(seed)
    special = math.ceil(jobs / 2)

    drawn = []  # type: List[Job]
    for n in range(jobs):
        if kind == MANY_TALL and n < special:
            job = _tall(rng, deadline, max_energy, special)
        elif kind == MANY_WIDE and n < special:
            job = _wide(rng, deadline, max_energy)
        else:
            job = _balanced(rng, deadline, max_energy)
        drawn.append(job)

    rng.shuffle(drawn)
    LOG.debug("generated %s instance with %d jobs (seed %d)", kind, jobs,
              seed)
    return Instance(
        deadline,
        (Job("j{}".format(n + 1), j.p, j.e) for n, j in enumerate(drawn)),
    )


def corpus(
        count: int,
        max_jobs: int,
        max_deadline: int,
        max_energy: int = MAX_ENERGY,
        seed: int = 0,
) -> Iterator[Instance]:
    """
    Yield `count` instances of every kind in turn, with sizes drawn up
    to the given limits.
    """
    rng = random.Random(seed)
    for n in range(count):
        yield generate(
            rng.randint(1, max_jobs),
            rng.randint(1, max_deadline),
            KINDS[n % len(KINDS)],
            rng.randrange(2**32),
            rng.randint(1, max_energy),
        )
