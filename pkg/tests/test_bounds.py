# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause

from fractions import Fraction
from typing import List
from unittest import TestCase

from hypothesis import given, settings
from hypothesis import strategies as st

from peakpack import bounds
from peakpack.core import Instance, height, width
from peakpack.exact import Limits, exact_opt, reference_schedule
from peakpack.generate import corpus

from .helpers import FIX_A, FIX_B, FIX_C, FIX_D, FIX_E, instance, instances


class TestThresholds(TestCase):
    def test_exceeds_is_strict(self) -> None:
        self.assertTrue(bounds.exceeds(Fraction(19, 2), 9))
        self.assertFalse(bounds.exceeds(9, 9))

    def test_sets(self) -> None:
        self.assertEqual([j.id for j in bounds.taller(FIX_E, 4)], ["j1"])
        self.assertEqual([j.id for j in bounds.wider(FIX_E, 5)],
                         ["j2", "j3"])

    def test_by_energy(self) -> None:
        problem = instance(10, (1, 2), (1, 5), (2, 2))
        self.assertEqual([j.id for j in bounds.by_energy(problem)],
                         ["j2", "j1", "j3"])


class TestT1(TestCase):
    def test_fixtures(self) -> None:
        self.assertEqual(bounds.t1(FIX_A), 5)
        self.assertEqual(bounds.t1(FIX_B), 7)
        self.assertEqual(bounds.t1(FIX_C), Fraction(54, 5))
        self.assertEqual(bounds.t1(FIX_E), 10)


class TestT2(TestCase):
    def test_fixtures(self) -> None:
        self.assertEqual(bounds.t2(FIX_A), 0)
        self.assertEqual(bounds.t2(FIX_B), 6)
        self.assertEqual(bounds.t2(FIX_C), 18)
        self.assertEqual(bounds.t2(FIX_E), 12)

    @settings(deadline=None)
    @given(instances())
    def test_descent_terminates(self, problem: Instance) -> None:
        value, steps = bounds.t2_descent(problem)
        self.assertLessEqual(steps, 3 * len(problem))
        self.assertGreaterEqual(value, 0)


class TestT3(TestCase):
    def test_fixtures(self) -> None:
        self.assertEqual(bounds.t3(FIX_A), 5)
        self.assertEqual(bounds.t3(FIX_B), 4)
        self.assertEqual(bounds.t3(FIX_D), 14)
        self.assertEqual(bounds.t3(FIX_E), 10)

    def test_variant_b_skips_wide_prefix(self) -> None:
        self.assertEqual(bounds.t3_variants(FIX_A), (Fraction(5), 0))


class TestT4(TestCase):
    def test_fixtures(self) -> None:
        self.assertEqual(bounds.t4(FIX_A), 5)
        self.assertEqual(bounds.t4(FIX_B), Fraction(11, 2))
        self.assertEqual(bounds.t4(FIX_E), 14)


class TestLowerBound(TestCase):
    def test_fixtures(self) -> None:
        self.assertEqual(bounds.lower_bound(FIX_B).t, 7)
        self.assertEqual(bounds.lower_bound(FIX_C).t, 18)
        self.assertEqual(bounds.lower_bound(FIX_D).t, 14)
        self.assertEqual(bounds.lower_bound(FIX_E).t, 14)

    def test_is_maximum(self) -> None:
        result = bounds.lower_bound(FIX_E)
        self.assertEqual(result.t, max(result.t1, result.t2, result.t3,
                                       result.t4))

    @settings(deadline=None, max_examples=200)
    @given(instances(max_jobs=5, max_deadline=8))
    def test_never_above_optimum(self, problem: Instance) -> None:
        opt, _ = exact_opt(problem)
        self.assertLessEqual(bounds.lower_bound(problem).t, opt)

    def test_generated_corpus(self) -> None:
        limits = Limits(max_nodes=200000, time_budget=5.0)
        kinds = []  # type: List[str]
        for problem in corpus(500, 8, 12, 8, seed=1):
            _, peak, kind = reference_schedule(problem, "exact", limits)
            kinds.append(kind)
            self.assertLessEqual(bounds.lower_bound(problem).t, peak)
        self.assertEqual(len(kinds), 500)
        self.assertIn("exact", kinds)


class TestBoundProperties(TestCase):
    @settings(deadline=None, max_examples=200)
    @given(instances(max_jobs=8, max_deadline=12),
           st.sampled_from([Fraction(0), Fraction(1, 8), Fraction(1, 4),
                            Fraction(3, 8), Fraction(49, 100)]))
    def test_tall_jobs_leave_little_room_for_middle_ones(
            self, problem: Instance, w: Fraction) -> None:
        t = bounds.t2(problem)
        tall = bounds.taller(problem, Fraction(2, 3) * t)
        if width(tall) > (1 - w) * problem.deadline:
            middle = [
                j for j in bounds.taller(problem, t / 3)
                if not bounds.exceeds(j.e, Fraction(2, 3) * t)
            ]
            self.assertLessEqual(width(middle), 2 * w * problem.deadline)

    @settings(deadline=None, max_examples=200)
    @given(instances(max_jobs=8, max_deadline=12),
           st.sampled_from([Fraction(5, 9), Fraction(2, 3), Fraction(3, 4),
                            Fraction(1)]),
           st.sampled_from([Fraction(1, 10), Fraction(1, 4), Fraction(2, 5)]))
    def test_wide_jobs_beside_tall_ones(
            self, problem: Instance, h: Fraction, w: Fraction) -> None:
        t = bounds.lower_bound(problem).t
        deadline = problem.deadline
        tall = [j for j in problem if j.e >= h * t]
        if width(tall) >= (1 - w) * deadline:
            ids = {j.id for j in tall}
            wide = [
                j for j in bounds.wider(problem, (Fraction(1, 2) + w / 2) *
                                        deadline)
                if j.id not in ids
            ]
            self.assertLessEqual(height(wide), (1 - h) * t)

    @settings(deadline=None, max_examples=200)
    @given(instances(max_jobs=8, max_deadline=12),
           st.sampled_from([Fraction(5, 9), Fraction(2, 3), Fraction(3, 4),
                            Fraction(1)]),
           st.sampled_from([Fraction(5, 9), Fraction(3, 4), Fraction(1)]))
    def test_tall_jobs_beside_wide_ones(
            self, problem: Instance, h: Fraction, w: Fraction) -> None:
        t = bounds.lower_bound(problem).t
        deadline = problem.deadline
        wide = [j for j in problem if j.p >= w * deadline]
        if height(wide) > (1 - h) * t:
            tall = [
                j for j in bounds.taller(problem, h * t)
                if not bounds.exceeds(j.p, Fraction(deadline, 2))
            ]
            self.assertLessEqual(width(tall), 2 * (1 - w) * deadline)
