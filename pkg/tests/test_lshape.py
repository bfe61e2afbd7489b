# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause

from fractions import Fraction
from unittest import TestCase

from hypothesis import given, settings

from peakpack import core, errors, lshape
from peakpack.bounds import lower_bound
from peakpack.core import Instance

from .helpers import FIX_A, FIX_B, FIX_E, instance, instances


class TestLShapeSchedule(TestCase):
    def test_example(self) -> None:
        problem = instance(10, (2, 10), (2, 8), (9, 4))
        schedule = lshape.lshape_schedule(problem, ["j1", "j2"], ["j3"])
        self.assertEqual(dict(schedule), {"j1": 0, "j2": 2, "j3": 1})
        self.assertEqual(core.peak(problem, schedule), 14)

    def test_tallest_first(self) -> None:
        problem = instance(10, (2, 8), (3, 10))
        schedule = lshape.lshape_schedule(problem, ["j1", "j2"], [])
        self.assertEqual(dict(schedule), {"j2": 0, "j1": 3})
        self.assertEqual(core.peak(problem, schedule), 10)

    def test_wide_only(self) -> None:
        problem = instance(10, (6, 2), (7, 3))
        schedule = lshape.lshape_schedule(problem, [], ["j1", "j2"])
        self.assertEqual(dict(schedule), {"j1": 4, "j2": 3})
        self.assertEqual(core.peak(problem, schedule), 5)

    def test_errors(self) -> None:
        problem = instance(10, (6, 2), (7, 3))
        with self.assertRaises(errors.PreconditionFailed):
            lshape.lshape_schedule(problem, ["j1", "j2"], [])
        with self.assertRaises(errors.PreconditionFailed):
            lshape.lshape_schedule(problem, ["j1"], ["j1"])


class TestLShapeBoundCheck(TestCase):
    def test_fixtures(self) -> None:
        schedule, peak = lshape.lshape_bound_check(FIX_E)
        self.assertEqual(dict(schedule), {"j1": 0, "j2": 1, "j3": 1})
        self.assertEqual(peak, 18)

        _, peak = lshape.lshape_bound_check(FIX_A)
        self.assertEqual(peak, 5)

        schedule, peak = lshape.lshape_bound_check(FIX_B)
        self.assertEqual(dict(schedule), {"j2": 0, "j1": 4})
        self.assertLessEqual(peak, 7 + Fraction(3, 2))

    @settings(deadline=None, max_examples=300)
    @given(instances(max_jobs=8, max_deadline=12))
    def test_bound(self, problem: Instance) -> None:
        schedule, peak = lshape.lshape_bound_check(problem)
        t = lower_bound(problem).t
        seq, wide = lshape.lshape_sets(problem, t)
        self.assertLessEqual(peak, t + Fraction(core.height(wide), 2))
        self.assertEqual(set(schedule), {j.id for j in seq + wide})


class TestLShapeSolve(TestCase):
    @settings(deadline=None)
    @given(instances())
    def test_complete(self, problem: Instance) -> None:
        schedule = lshape.lshape_solve(problem)
        self.assertEqual(core.validate(problem, schedule), [])
