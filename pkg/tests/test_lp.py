# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause

from fractions import Fraction
from unittest import TestCase

from peakpack import errors, lp


class TestSolve(TestCase):
    def test_exact_fraction(self) -> None:
        result = lp.solve([-1], a_ub=[[3]], b_ub=[1])
        self.assertEqual(result.status, lp.OPTIMAL)
        self.assertEqual(result.x, [Fraction(1, 3)])
        self.assertEqual(result.objective, Fraction(-1, 3))

    def test_inequalities(self) -> None:
        result = lp.solve([-1, -1], a_ub=[[1, 1], [1, 0]], b_ub=[4, 3])
        self.assertEqual(result.status, lp.OPTIMAL)
        self.assertEqual(result.objective, -4)
        self.assertEqual(sum(result.x), 4)
        self.assertLessEqual(result.x[0], 3)

    def test_equalities(self) -> None:
        result = lp.solve([1, 0], a_eq=[[1, 1]], b_eq=[2])
        self.assertEqual(result.x, [0, 2])
        self.assertEqual(result.basis, [1])

    def test_redundant_rows(self) -> None:
        result = lp.solve([1, 1], a_eq=[[1, 1], [2, 2]], b_eq=[2, 4])
        self.assertEqual(result.objective, 2)

    def test_infeasible(self) -> None:
        with self.assertRaises(errors.Infeasible):
            lp.solve([1], a_eq=[[1]], b_eq=[-1])
        with self.assertRaises(errors.Infeasible):
            lp.solve([0, 0], a_eq=[[1, 1]], b_eq=[3], a_ub=[[1, 1]],
                     b_ub=[2])

    def test_unbounded(self) -> None:
        self.assertEqual(lp.solve([-1]).status, lp.UNBOUNDED)

    def test_bad_row(self) -> None:
        with self.assertRaises(ValueError):
            lp.solve([1, 1], a_eq=[[1]], b_eq=[1])
