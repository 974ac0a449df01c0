"""Shared fixtures and helpers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from precint import (
    AlgebraicPoint,
    OreOperator,
    Poly,
    QuotientElement,
    RationalFunction,
    parse_element,
    parse_operator,
    parse_point,
)

# Order-3 operator whose integer orbit carries the full story: a double
# root of the trailing coefficient at -2, a leading-coefficient root making
# 1 a rightward drop position, and solutions of growth (1, 0, -1).
CUBIC = "(x+2)^2 + x*S^2 + (x+2)*S^3"

# The same operator with every coefficient shifted one step right in x;
# its solution table is the CUBIC table reindexed by one position.
CUBIC_SHIFTED = "(x+1)^2 + (x-1)*S^2 + (x+1)*S^3"


@pytest.fixture
def cubic() -> OreOperator:
    return parse_operator(CUBIC).normalized()


@pytest.fixture
def orbit_z() -> AlgebraicPoint:
    return AlgebraicPoint.from_rational(0)


def op(text: str) -> OreOperator:
    return parse_operator(text).normalized()


def el(text: str, order: int) -> QuotientElement:
    return parse_element(text, order)


def pt(text: str) -> AlgebraicPoint:
    return parse_point(text)


def coeff(text: str) -> RationalFunction:
    operator = parse_operator(text)
    if operator.order > 0:
        raise ValueError("expected a shift-free expression")
    return operator.coeffs[0] if operator.coeffs else RationalFunction.zero()


def random_poly(rng: random.Random, max_degree: int = 2, height: int = 4,
                nonzero: bool = False) -> Poly:
    while True:
        p = Poly([Fraction(rng.randint(-height, height))
                  for _ in range(rng.randint(0, max_degree) + 1)])
        if not nonzero or not p.is_zero:
            return p


def random_rf(rng: random.Random, max_degree: int = 2, height: int = 4,
              nonzero: bool = False) -> RationalFunction:
    num = random_poly(rng, max_degree, height, nonzero=nonzero)
    den = random_poly(rng, max_degree, height, nonzero=True)
    return RationalFunction(num, den)
