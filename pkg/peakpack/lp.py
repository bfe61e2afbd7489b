# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause
"""
Exact two-phase simplex over `Fraction`.

    minimize    c x
    subject to  A_eq x  = b_eq
                A_ub x <= b_ub
                x >= 0

Bland's rule picks both the entering and the leaving variable, so the
method cannot cycle.  The LPs built by the schedulers have at most a
few hundred columns.
"""

import logging
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .core import Rational
from .errors import Infeasible

LOG = logging.getLogger(__name__)

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"

Matrix = Sequence[Sequence[Rational]]
Row = List[Fraction]


class LPResult(NamedTuple):
    status: str
    x: List[Fraction]
    objective: Fraction
    basis: List[int]


def _pivot(rows: List[Row], objective: Row, r: int, col: int) -> None:
    pivot = rows[r][col]
    rows[r] = [v / pivot for v in rows[r]]
    target = rows[r]
    for i, row in enumerate(rows):
        factor = row[col]
        if i != r and factor != 0:
            rows[i] = [a - factor * b for a, b in zip(row, target)]
    factor = objective[col]
    if factor != 0:
        objective[:] = [a - factor * b for a, b in zip(objective, target)]


def _simplex(
        rows: List[Row],
        objective: Row,
        basis: List[int],
        columns: int,
) -> str:
    while True:
        entering = next(
            (j for j in range(columns) if objective[j] < 0), None
        )
        if entering is None:
            return OPTIMAL

        ratios = [
            (row[-1] / row[entering], basis[i], i)
            for i, row in enumerate(rows) if row[entering] > 0
        ]
        if not ratios:
            return UNBOUNDED
        _, _, leaving = min(ratios)
        _pivot(rows, objective, leaving, entering)
        basis[leaving] = entering


def _standard_form(
        n: int,
        a_eq: Matrix,
        b_eq: Sequence[Rational],
        a_ub: Matrix,
        b_ub: Sequence[Rational],
) -> Tuple[List[Row], int]:
    """
    Equality rows over the original columns followed by one slack
    column per inequality, every right-hand side made nonnegative.
    """
    slacks = len(a_ub)
    rows = []  # type: List[Row]

    for coefficients, rhs in zip(a_eq, b_eq):
        rows.append([Fraction(v) for v in coefficients] +
                    [Fraction(0)] * slacks + [Fraction(rhs)])
    for k, (coefficients, rhs) in enumerate(zip(a_ub, b_ub)):
        slack = [Fraction(0)] * slacks
        slack[k] = Fraction(1)
        rows.append([Fraction(v) for v in coefficients] + slack +
                    [Fraction(rhs)])

    for i, row in enumerate(rows):
        if len(row) != n + slacks + 1:
            raise ValueError(
                "constraint row {} has the wrong length".format(i)
            )
        if row[-1] < 0:
            rows[i] = [-v for v in row]
    return rows, n + slacks


def solve(
        c: Sequence[Rational],
        a_eq: Optional[Matrix] = None,
        b_eq: Optional[Sequence[Rational]] = None,
        a_ub: Optional[Matrix] = None,
        b_ub: Optional[Sequence[Rational]] = None,
) -> LPResult:
    """
    Solve the LP exactly.

    Raises `Infeasible` when no x satisfies the constraints.  The result
    is a basic solution; `basis` lists the basic original columns.
    """
    n = len(c)
    rows, columns = _standard_form(n, a_eq or [], b_eq or [], a_ub or [],
                                   b_ub or [])
    m = len(rows)

    # Phase 1: one artificial column per row.
    for i, row in enumerate(rows):
        artificial = [Fraction(0)] * m
        artificial[i] = Fraction(1)
        rows[i] = row[:-1] + artificial + row[-1:]
    basis = list(range(columns, columns + m))
    objective = [Fraction(0)] * columns + [Fraction(1)] * m + [Fraction(0)]
    for row in rows:
        objective = [a - b for a, b in zip(objective, row)]

    _simplex(rows, objective, basis, columns + m)
    if -objective[-1] > 0:
        raise Infeasible("linear program has no feasible solution")

    # Drive artificials out of the basis; rows where that is impossible
    # are redundant.
    keep = []  # type: List[int]
    for i in range(m):
        if basis[i] < columns:
            keep.append(i)
            continue
        col = next((j for j in range(columns) if rows[i][j] != 0), None)
        if col is None:
            continue
        _pivot(rows, objective, i, col)
        basis[i] = col
        keep.append(i)

    rows = [rows[i][:columns] + rows[i][-1:] for i in keep]
    basis = [basis[i] for i in keep]

    # Phase 2.
    objective = [Fraction(v) for v in c] + [Fraction(0)] * (columns - n + 1)
    for i, row in enumerate(rows):
        cost = objective[basis[i]]
        if cost != 0:
            objective = [a - cost * b for a, b in zip(objective, row)]

    status = _simplex(rows, objective, basis, columns)
    LOG.debug("LP with %d rows and %d columns: %s", m, columns, status)

    x = [Fraction(0)] * columns
    for i, col in enumerate(basis):
        x[col] = rows[i][-1]
    value = sum((Fraction(cj) * xj for cj, xj in zip(c, x)), Fraction(0))
    return LPResult(status, x[:n], value, sorted(j for j in basis if j < n))
