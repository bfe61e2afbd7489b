# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause

from fractions import Fraction
from typing import NamedTuple

from .core import Rational
from .errors import InvalidInput


class EpsilonParams(NamedTuple):
    eps: Fraction
    eps_prime: Fraction
    gamma: Fraction
    w: Fraction


def epsilon_params(eps: Rational) -> EpsilonParams:
    """
    Derive the accuracy parameters from eps in (0, 1/3]: eps' = (3/5)eps,
    gamma = (3/40)eps and w = (3/4)eps.
    """
    eps = Fraction(eps)
    if not 0 < eps <= Fraction(1, 3):
        raise InvalidInput("epsilon must lie in (0, 1/3], got {}".format(eps))
    return EpsilonParams(
        eps,
        Fraction(3, 5) * eps,
        Fraction(3, 40) * eps,
        Fraction(3, 4) * eps,
    )
