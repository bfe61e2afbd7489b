# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause
"""
The (5/3 + eps)-approximation.

`solve` computes the combined lower bound T' and dispatches:

- tall jobs (e > 2T'/3) cover at least (1 - 3eps/4)D: `solve_case1`;
- wide jobs (4p >= 3D) are taller than 2T'/3 together: `solve_case2`;
- otherwise the AEPTAS pipeline yields a base schedule and an overflow
  container, and `repack.repack` merges the two.

Whatever a branch returns is measured again; a peak above the
guarantee of the branch raises InternalInvariant.
"""

import logging
import math
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Tuple

from . import const
from .aeptas import aeptas_schedule, schedule_lite
from .bounds import by_energy, exceeds, lower_bound, taller, wider
from .core import (
    Instance,
    Job,
    Rational,
    Schedule,
    area,
    height,
    profile,
    validate,
    width,
)
from .errors import (
    ConditionViolated,
    InfeasibleSchedule,
    InternalInvariant,
    InvalidInput,
    PreconditionFailed,
)
from .exact import Limits, exact_opt, reference_schedule
from .lshape import lshape_schedule, lshape_solve
from .packing import (
    Box,
    compact_left,
    rects_of,
    shelf_schedule,
    steinberg_pack,
)
from .params import EpsilonParams, epsilon_params
from .repack import Container, container_peak, repack

__all__ = [
    "ALGORITHMS",
    "Certificate",
    "EpsilonParams",
    "Plan",
    "epsilon_params",
    "plan_case1",
    "plan_case2",
    "run",
    "shelf_schedule",
    "solve",
    "solve_case1",
    "solve_case2",
]

LOG = logging.getLogger(__name__)

ALGORITHMS = (
    "auto",
    "case1",
    "case2",
    "lshape",
    "ffdh",
    "nfdh",
    "exact",
    "aeptas",
)


class Plan(NamedTuple):
    """
    Everything a Steinberg case decides before packing: the jobs placed
    directly, the box the residual jobs are packed into, where that box
    starts, and whether the inequality chain of the case holds.
    """
    case: str
    rho: Fraction
    lam: Fraction
    fixed: Schedule
    residual: List[Job]
    box: Box
    offset: int
    chain: bool


class Certificate(NamedTuple):
    branch: str
    t_prime: Fraction
    bound: Optional[Fraction]
    peak: int
    reference_peak: Optional[int] = None


def _require_lower_bound(instance: Instance, bound: Fraction) -> None:
    t_prime = lower_bound(instance).t
    if bound < t_prime:
        raise PreconditionFailed(
            "T={} is below the lower bound {}".format(bound, t_prime)
        )


def _right_aligned(deadline: int, jobs: List[Job]) -> Dict[str, int]:
    starts = {}  # type: Dict[str, int]
    cursor = deadline
    for job in by_energy(jobs):
        cursor -= job.p
        starts[job.id] = cursor
    return starts


def plan_case1(
        instance: Instance,
        bound: Rational,
        params: EpsilonParams,
) -> Plan:
    bound = Fraction(bound)
    deadline = instance.deadline
    eps, w = params.eps, params.w

    tall = taller(instance, Fraction(2, 3) * bound)
    if width(tall) < (1 - w) * deadline:
        raise PreconditionFailed(
            "jobs with e > 2T/3 cover {} < (1 - w)D = {}".format(
                width(tall), (1 - w) * deadline
            )
        )
    _require_lower_bound(instance, bound)

    seq = taller(instance, bound / 2)
    seq_ids = {j.id for j in seq}
    wide = [
        j for j in wider(instance, (Fraction(1, 2) + w) * deadline)
        if j.id not in seq_ids
    ]
    fixed = lshape_schedule(instance, seq_ids, [j.id for j in wide])
    rho = Fraction(height(wide)) / bound

    if eps <= rho / 2:
        case, low = "A", bound / 3
        chain = (Fraction(4, 3) * w - rho * (w + Fraction(1, 2))
                 <= eps * (1 + 2 * w))
    else:
        case, low = "B", (Fraction(2, 3) + eps - rho / 2) / 2 * bound
        chain = (Fraction(4, 3) - 2 * rho) * w - rho / 2 <= eps

    placed = set(fixed)
    middle = [
        j for j in instance if j.id not in placed and exceeds(j.e, low)
        and not exceeds(j.e, bound / 2)
    ]
    fixed = fixed.merge(_right_aligned(deadline, middle))
    lam = Fraction(width(middle), deadline)

    residual = [j for j in instance if j.id not in set(fixed)]
    box = Box((1 - lam) * deadline,
              (Fraction(2, 3) - rho / 2 + eps) * bound)
    LOG.debug("case 1%s: rho=%s lambda=%s, %d residual jobs in %sx%s", case,
              rho, lam, len(residual), box.width, box.height)
    return Plan(case, rho, lam, fixed, residual, box, 0, chain)


def plan_case2(
        instance: Instance,
        bound: Rational,
        params: EpsilonParams,
) -> Plan:
    bound = Fraction(bound)
    deadline = instance.deadline

    wide_enough = [j for j in instance if 4 * j.p >= 3 * deadline]
    if not exceeds(height(wide_enough), Fraction(2, 3) * bound):
        raise PreconditionFailed(
            "jobs with p >= 3D/4 reach {} <= 2T/3 = {}".format(
                height(wide_enough), Fraction(2, 3) * bound
            )
        )
    _require_lower_bound(instance, bound)

    wide = wider(instance, Fraction(deadline, 2))
    wide_ids = {j.id for j in wide}
    seq = [j for j in taller(instance, bound / 2) if j.id not in wide_ids]
    fixed = lshape_schedule(instance, [j.id for j in seq], wide_ids)

    rho = Fraction(height(wide)) / bound - Fraction(2, 3)
    lam = Fraction(width(seq), deadline)
    residual = [j for j in instance if j.id not in set(fixed)]
    chain = (lam <= Fraction(1, 2) and
             2 * area(residual) <= (1 - lam - rho) * deadline * bound)

    box = Box((1 - lam) * deadline, (1 - rho) * bound)
    LOG.debug("case 2: rho=%s lambda=%s, %d residual jobs in %sx%s", rho, lam,
              len(residual), box.width, box.height)
    return Plan("2", rho, lam, fixed, residual, box, width(seq), chain)


def _execute(instance: Instance, plan: Plan, limit: Fraction) -> Schedule:
    if not plan.chain:
        raise ConditionViolated(
            "inequality chain of case {} fails (rho={}, lambda={})".format(
                plan.case, plan.rho, plan.lam
            )
        )

    starts = {}  # type: Dict[str, int]
    if plan.residual:
        rects = rects_of(plan.residual)
        placements = compact_left(steinberg_pack(rects, plan.box), rects)
        starts = {p.id: plan.offset + math.floor(p.x) for p in placements}
    schedule = plan.fixed.merge(starts)

    violations = validate(instance, schedule)
    if violations:
        raise InfeasibleSchedule(violations)
    level = profile(instance, instance.ids, schedule).peak
    if level > limit:
        raise InternalInvariant(
            "case {} peak {} exceeds {}".format(plan.case, level, limit)
        )
    return schedule


def solve_case1(
        instance: Instance,
        bound: Rational,
        params: EpsilonParams,
) -> Schedule:
    """
    Schedule an instance whose tall jobs (e > 2T/3) fill all but wD of
    the horizon, with a peak of at most (5/3 + eps)T.
    """
    plan = plan_case1(instance, bound, params)
    return _execute(instance, plan,
                    (Fraction(5, 3) + params.eps) * Fraction(bound))


def solve_case2(
        instance: Instance,
        bound: Rational,
        params: EpsilonParams,
) -> Schedule:
    """
    Schedule an instance whose wide jobs (p >= 3D/4) are taller than
    2T/3 together, with a peak of at most (5/3)T.
    """
    plan = plan_case2(instance, bound, params)
    return _execute(instance, plan, Fraction(5, 3) * Fraction(bound))


def _repack_branch(
        instance: Instance,
        params: EpsilonParams,
        limits: Limits,
        reference: Tuple[Schedule, int, str],
) -> Tuple[Schedule, Fraction]:
    lite = schedule_lite(instance, params.eps, "c1", limits,
                         reference=reference)
    base_peak = profile(instance, lite.base, lite.base).peak
    level = container_peak(instance, lite.overflow)
    bound = Fraction(max(base_peak, level))
    overflow = Container(lite.overflow.width, bound, lite.overflow.contents)
    LOG.debug("repacking base (peak %d) with %d overflow jobs, T=%s",
              base_peak, len(overflow.contents), bound)
    return repack(instance, lite.base, bound, overflow, params), bound


def solve(
        instance: Instance,
        eps: Rational = const.EPSILON,
        limits: Limits = Limits(),
) -> Tuple[Schedule, Certificate]:
    """
    Schedule `instance` with a peak of at most (5/3 + eps) OPT.

    The certificate names the branch taken, T' and the guarantee the
    branch was checked against.  Errors of the branch propagate; a
    measured peak above the guarantee raises InternalInvariant.
    """
    params = epsilon_params(eps)
    deadline = instance.deadline
    t_prime = lower_bound(instance).t

    tall = taller(instance, Fraction(2, 3) * t_prime)
    wide = [j for j in instance if 4 * j.p >= 3 * deadline]
    reference_peak = None  # type: Optional[int]

    if width(tall) >= (1 - Fraction(3, 4) * params.eps) * deadline:
        branch = "case1"
        bound = (Fraction(5, 3) + params.eps) * t_prime
        LOG.info("T'=%s, dispatching to %s", t_prime, branch)
        schedule = solve_case1(instance, t_prime, params)
    elif exceeds(height(wide), Fraction(2, 3) * t_prime):
        branch = "case2"
        bound = Fraction(5, 3) * t_prime
        LOG.info("T'=%s, dispatching to %s", t_prime, branch)
        schedule = solve_case2(instance, t_prime, params)
    else:
        branch = "repack"
        LOG.info("T'=%s, dispatching to %s", t_prime, branch)
        reference = reference_schedule(instance, limits=limits)
        reference_peak = reference[1]
        schedule, level = _repack_branch(instance, params, limits,
                                         reference)
        bound = min((Fraction(5, 3) + params.eps) * reference_peak,
                    Fraction(5, 3) * level)

    peak = profile(instance, instance.ids, schedule).peak
    if peak > bound:
        raise InternalInvariant(
            "{} branch peak {} exceeds {}".format(branch, peak, bound)
        )
    return schedule, Certificate(branch, t_prime, bound, peak,
                                 reference_peak)


def run(
        instance: Instance,
        algorithm: str = "auto",
        eps: Rational = const.EPSILON,
        limits: Limits = Limits(),
) -> Tuple[Schedule, Certificate]:
    """
    Run one of `ALGORITHMS` on `instance`.
    """
    if algorithm == "auto":
        return solve(instance, eps, limits)

    params = epsilon_params(eps)
    t_prime = lower_bound(instance).t
    bound = None  # type: Optional[Fraction]

    if algorithm == "case1":
        schedule = solve_case1(instance, t_prime, params)
        bound = (Fraction(5, 3) + params.eps) * t_prime
    elif algorithm == "case2":
        schedule = solve_case2(instance, t_prime, params)
        bound = Fraction(5, 3) * t_prime
    elif algorithm == "lshape":
        schedule = lshape_solve(instance)
    elif algorithm in ("ffdh", "nfdh"):
        schedule = shelf_schedule(instance, algorithm)
    elif algorithm == "exact":
        opt, schedule = exact_opt(instance, limits)
        bound = Fraction(opt)
    elif algorithm == "aeptas":
        schedule = aeptas_schedule(instance, params.eps, "c2", limits)
    else:
        raise InvalidInput("unknown algorithm {!r}".format(algorithm))

    level = profile(instance, instance.ids, schedule).peak
    return schedule, Certificate(algorithm, t_prime, bound, level)
