# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause

import itertools
from unittest import TestCase
from unittest.mock import patch

from hypothesis import given, settings

from peakpack import core, errors, exact
from peakpack.core import Instance, Schedule

from .helpers import FIX_A, FIX_B, FIX_C, FIX_D, FIX_E, instances


def brute_force(problem: Instance) -> int:
    ranges = [range(problem.deadline - j.p + 1) for j in problem]
    return min(
        core.peak(problem, Schedule(zip(problem.ids, starts)))
        for starts in itertools.product(*ranges)
    )


class TestGreedySchedule(TestCase):
    def test_complete(self) -> None:
        schedule = exact.greedy_schedule(FIX_C)
        self.assertEqual(dict(schedule), {"j1": 0, "j2": 4, "j3": 0})
        self.assertEqual(core.peak(FIX_C, schedule), 18)

    def test_keeps_fixed(self) -> None:
        schedule = exact.greedy_schedule(FIX_B, {"j1": 4})
        self.assertEqual(schedule["j1"], 4)
        self.assertEqual(core.validate(FIX_B, schedule), [])

    def test_search_order(self) -> None:
        self.assertEqual([j.id for j in exact.search_order(list(FIX_E))],
                         ["j2", "j3", "j1"])


class TestExactOpt(TestCase):
    def test_fixtures(self) -> None:
        for problem, expected in [(FIX_A, 5), (FIX_B, 7), (FIX_C, 18),
                                  (FIX_D, 14), (FIX_E, 18)]:
            opt, schedule = exact.exact_opt(problem)
            self.assertEqual(opt, expected)
            self.assertEqual(core.peak(problem, schedule), expected)

    @settings(deadline=None, max_examples=150)
    @given(instances(max_jobs=4, max_deadline=6, max_energy=5))
    def test_matches_brute_force(self, problem: Instance) -> None:
        opt, schedule = exact.exact_opt(problem)
        self.assertEqual(opt, brute_force(problem))
        self.assertEqual(core.peak(problem, schedule), opt)

    def test_resource_exceeded(self) -> None:
        stacked = Schedule({"j1": 0, "j2": 0, "j3": 0})
        with patch("peakpack.exact.greedy_schedule") as greedy:
            greedy.return_value = stacked
            with self.assertRaises(errors.ResourceExceeded) as cm:
                exact.exact_opt(FIX_C, exact.Limits(max_nodes=0))
        self.assertEqual(cm.exception.peak, 27)
        self.assertEqual(dict(cm.exception.incumbent), dict(stacked))


class TestExactDecision(TestCase):
    def test_fixture_c(self) -> None:
        self.assertEqual(exact.exact_decision(FIX_C, 17), exact.INFEASIBLE)
        self.assertEqual(exact.exact_decision(FIX_C, 18), exact.FEASIBLE)
        self.assertEqual(exact.exact_decision(FIX_C, 27), exact.FEASIBLE)

    @settings(deadline=None, max_examples=100)
    @given(instances(max_jobs=4, max_deadline=6, max_energy=5))
    def test_threshold(self, problem: Instance) -> None:
        opt, _ = exact.exact_opt(problem)
        self.assertEqual(exact.exact_decision(problem, opt), exact.FEASIBLE)
        self.assertEqual(exact.exact_decision(problem, opt - 1),
                         exact.INFEASIBLE)


class TestReferenceSchedule(TestCase):
    def test_kinds(self) -> None:
        schedule, peak, kind = exact.reference_schedule(FIX_E)
        self.assertEqual((peak, kind), (18, "exact"))
        self.assertEqual(core.peak(FIX_E, schedule), 18)

        schedule, peak, kind = exact.reference_schedule(FIX_E, "ffdh")
        self.assertEqual(kind, "ffdh")
        self.assertEqual(core.peak(FIX_E, schedule), peak)

    def test_incumbent(self) -> None:
        stacked = Schedule({"j1": 0, "j2": 0, "j3": 0})
        with patch("peakpack.exact.greedy_schedule") as greedy:
            greedy.return_value = stacked
            _, peak, kind = exact.reference_schedule(
                FIX_C, "exact", exact.Limits(max_nodes=0)
            )
        self.assertEqual((peak, kind), (27, "incumbent"))

    def test_unknown(self) -> None:
        with self.assertRaises(errors.InvalidInput):
            exact.reference_schedule(FIX_E, "guess")
