# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause

from fractions import Fraction
from typing import Set
from unittest import TestCase
from unittest.mock import patch

from hypothesis import given, settings
from hypothesis import strategies as st

from peakpack import approx, core, errors
from peakpack.bounds import lower_bound
from peakpack.core import Instance, Schedule
from peakpack.exact import Limits, exact_opt, reference_schedule
from peakpack.generate import corpus
from peakpack.packing import rects_of, steinberg_condition

from .helpers import FIX_B, FIX_C, FIX_D, FIX_E, instance, instances

FOUR_TALL = instance(12, (3, 9), (3, 9), (3, 9), (3, 9))
TWO_WIDE = instance(4, (3, 4), (3, 4), (1, 1))


class TestEpsilonParams(TestCase):
    def test_derived(self) -> None:
        params = approx.epsilon_params(Fraction(1, 3))
        self.assertEqual(params.eps_prime, Fraction(1, 5))
        self.assertEqual(params.gamma, Fraction(1, 40))
        self.assertEqual(params.w, Fraction(1, 4))

    def test_range(self) -> None:
        for eps in (0, Fraction(1, 2), -1):
            with self.assertRaises(errors.InvalidInput):
                approx.epsilon_params(eps)


class TestSolveCase1(TestCase):
    def test_example(self) -> None:
        params = approx.epsilon_params(Fraction(1, 3))
        plan = approx.plan_case1(FOUR_TALL, 13, params)
        self.assertEqual((plan.case, plan.rho, plan.lam), ("B", 0, 0))
        self.assertTrue(plan.chain)
        self.assertEqual(plan.residual, [])

        schedule = approx.solve_case1(FOUR_TALL, 13, params)
        self.assertEqual(dict(schedule),
                         {"j1": 0, "j2": 3, "j3": 6, "j4": 9})
        self.assertEqual(core.peak(FOUR_TALL, schedule), 9)

    def test_precondition(self) -> None:
        params = approx.epsilon_params(Fraction(1, 3))
        with self.assertRaises(errors.PreconditionFailed):
            approx.solve_case1(FOUR_TALL, Fraction(27, 2), params)

    def test_below_lower_bound(self) -> None:
        params = approx.epsilon_params(Fraction(1, 3))
        with self.assertRaises(errors.PreconditionFailed):
            approx.solve_case1(FOUR_TALL, Fraction(17, 2), params)


class TestSolveCase2(TestCase):
    def test_example(self) -> None:
        params = approx.epsilon_params(Fraction(1, 3))
        plan = approx.plan_case2(TWO_WIDE, 8, params)
        self.assertEqual(plan.rho, Fraction(1, 3))
        self.assertEqual(plan.lam, 0)
        self.assertTrue(plan.chain)
        self.assertEqual([j.id for j in plan.residual], ["j3"])

        schedule = approx.solve_case2(TWO_WIDE, 8, params)
        self.assertEqual(dict(schedule), {"j1": 1, "j2": 1, "j3": 0})
        self.assertEqual(core.peak(TWO_WIDE, schedule), 8)

    def test_precondition(self) -> None:
        params = approx.epsilon_params(Fraction(1, 3))
        with self.assertRaises(errors.PreconditionFailed):
            approx.solve_case2(FIX_D, 14, params)

    def test_chain_failure(self) -> None:
        params = approx.epsilon_params(Fraction(1, 3))
        plan = approx.plan_case2(TWO_WIDE, 8, params)._replace(chain=False)
        with patch("peakpack.approx.plan_case2") as plan_case2:
            plan_case2.return_value = plan
            with self.assertRaises(errors.ConditionViolated):
                approx.solve_case2(TWO_WIDE, 8, params)


def _check_dispatch(test: TestCase, problem: Instance, eps: Fraction,
                    certificate: approx.Certificate) -> None:
    planners = {"case1": approx.plan_case1, "case2": approx.plan_case2}
    if certificate.branch in planners:
        params = approx.epsilon_params(eps)
        plan = planners[certificate.branch](problem, certificate.t_prime,
                                            params)
        test.assertTrue(plan.chain)
        test.assertTrue(
            steinberg_condition(rects_of(plan.residual), plan.box)
        )


class TestSolve(TestCase):
    def test_dispatch_case1(self) -> None:
        schedule, certificate = approx.solve(FOUR_TALL)
        self.assertEqual(certificate.branch, "case1")
        self.assertEqual(certificate.t_prime, 9)
        self.assertEqual(certificate.bound, 18)
        self.assertEqual(certificate.peak, 9)
        self.assertIsNone(certificate.reference_peak)
        self.assertEqual(core.peak(FOUR_TALL, schedule), 9)

    def test_dispatch_case2(self) -> None:
        schedule, certificate = approx.solve(TWO_WIDE)
        self.assertEqual(certificate.branch, "case2")
        self.assertEqual(certificate.bound, Fraction(40, 3))
        self.assertEqual(core.peak(TWO_WIDE, schedule), 8)

    def test_fixtures(self) -> None:
        self.assertEqual(approx.solve(FIX_B)[1].peak, 7)
        schedule, certificate = approx.solve(FIX_C)
        self.assertLessEqual(core.peak(FIX_C, schedule), 36)
        self.assertEqual(certificate.peak, core.peak(FIX_C, schedule))

    def test_repack_branch(self) -> None:
        schedule, certificate = approx.solve(FIX_B)
        self.assertEqual(certificate.branch, "repack")
        self.assertEqual(certificate.reference_peak, 7)
        self.assertEqual(core.validate(FIX_B, schedule), [])

    def test_branch_errors_propagate(self) -> None:
        for error in (errors.InternalInvariant("broken"),
                      errors.ConditionViolated("chain")):
            with patch("peakpack.approx.solve_case1") as solve_case1:
                solve_case1.side_effect = error
                with self.assertRaises(type(error)):
                    approx.solve(FOUR_TALL)

    def test_missed_guarantee(self) -> None:
        stacked = Schedule({"j1": 0, "j2": 0, "j3": 0, "j4": 0})
        with patch("peakpack.approx.solve_case1") as solve_case1:
            solve_case1.return_value = stacked
            with self.assertRaises(errors.InternalInvariant) as raised:
                approx.solve(FOUR_TALL)
        self.assertIn("exceeds", str(raised.exception))

    @settings(deadline=None, max_examples=100)
    @given(instances(max_jobs=6, max_deadline=10),
           st.sampled_from([Fraction(1, 3), Fraction(1, 10)]))
    def test_ratio(self, problem: Instance, eps: Fraction) -> None:
        schedule, certificate = approx.solve(problem, eps)
        opt, _ = exact_opt(problem)
        self.assertEqual(core.validate(problem, schedule), [])
        self.assertEqual(core.peak(problem, schedule), certificate.peak)
        self.assertIsNotNone(certificate.bound)
        self.assertLessEqual(certificate.peak, certificate.bound)
        self.assertLessEqual(certificate.peak, (Fraction(5, 3) + eps) * opt)
        _check_dispatch(self, problem, eps, certificate)

    def test_generated_corpus(self) -> None:
        limits = Limits(max_nodes=200000, time_budget=5.0)
        for seed, eps in ((3, Fraction(1, 3)), (4, Fraction(1, 10))):
            branches = set()  # type: Set[str]
            for problem in corpus(200, 8, 12, 8, seed=seed):
                schedule, certificate = approx.solve(problem, eps, limits)
                self.assertEqual(core.validate(problem, schedule), [])
                self.assertLessEqual(certificate.peak, certificate.bound)
                _check_dispatch(self, problem, eps, certificate)
                _, peak, kind = reference_schedule(problem, "exact", limits)
                if kind == "exact":
                    self.assertLessEqual(certificate.peak,
                                         (Fraction(5, 3) + eps) * peak)
                branches.add(certificate.branch)
            self.assertIn("repack", branches)


class TestRun(TestCase):
    def test_algorithms(self) -> None:
        for algorithm in approx.ALGORITHMS:
            if algorithm in ("case1", "case2"):
                continue
            schedule, certificate = approx.run(FIX_E, algorithm)
            self.assertEqual(core.validate(FIX_E, schedule), [])
            self.assertEqual(certificate.t_prime, 14)

    def test_exact(self) -> None:
        _, certificate = approx.run(FIX_E, "exact")
        self.assertEqual((certificate.peak, certificate.bound), (18, 18))

    def test_branch_errors_surface(self) -> None:
        with self.assertRaises(errors.PreconditionFailed):
            approx.run(FIX_D, "case2")

    def test_unknown(self) -> None:
        with self.assertRaises(errors.InvalidInput):
            approx.run(FIX_E, "simulated-annealing")

    def test_lower_bound_matches(self) -> None:
        _, certificate = approx.run(FIX_C, "ffdh")
        self.assertEqual(certificate.t_prime, lower_bound(FIX_C).t)
        self.assertIsNone(certificate.bound)
        self.assertEqual(exact_opt(FIX_C)[0], 18)
