"""The q-adic valuation, bounded expansions, and the x -> z + q substitution."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from precint import (
    INFINITY,
    Poly,
    RationalFunction,
    eval_shifted,
    nu_at_factor,
    nu_q,
    q_expand,
)
from conftest import random_poly, random_rf

Q = Poly.x()  # the same dense representation serves the variable q


def test_nu_q_examples():
    f = RationalFunction(Q * (Q - 1), Q + 1)
    assert nu_q(f) == 1
    assert nu_q(RationalFunction.constant(Fraction(7, 3))) == 0
    assert nu_q(RationalFunction.zero()) is INFINITY


def test_nu_q_sees_poles():
    assert nu_q(RationalFunction(Poly([2, -1]), Q)) == -1


def test_q_expand_geometric_series():
    exp = q_expand(RationalFunction(Poly.one(), Poly([1, 1])), 2)
    assert exp.valuation == 0
    assert exp.coeffs == (1, -1, 1)
    assert exp.order == 2


def test_q_expand_with_pole():
    exp = q_expand(RationalFunction(Poly([2, -1]), Q), 0)
    assert exp.valuation == -1
    assert exp.coeffs == (2, -1)


def test_q_expand_zero_is_empty():
    exp = q_expand(RationalFunction.zero(), 5)
    assert exp.valuation is INFINITY
    assert exp.coeffs == ()


def test_eval_shifted_examples():
    square = RationalFunction(Poly([1, 1]) ** 2)
    assert eval_shifted(square, Fraction(-1)) == RationalFunction(Q ** 2)
    assert eval_shifted(RationalFunction.x(), Fraction(0)) == RationalFunction(Q)
    inv = eval_shifted(RationalFunction(Poly.one(), Poly.x()), Fraction(0))
    assert inv == RationalFunction(Poly.one(), Q)
    assert nu_q(inv) == -1


@pytest.mark.parametrize("seed", [41, 42])
def test_nu_q_is_a_valuation(seed):
    rng = random.Random(seed)
    for _ in range(25):
        f = random_rf(rng, nonzero=True)
        g = random_rf(rng, nonzero=True)
        assert nu_q(f * g) == nu_q(f) + nu_q(g)
        s = f + g
        lower = min(nu_q(f), nu_q(g))
        assert nu_q(s) >= lower
        if nu_q(f) != nu_q(g):
            assert nu_q(s) == lower


@pytest.mark.parametrize("seed", [43, 44])
def test_q_expand_of_product_is_convolution(seed):
    rng = random.Random(seed)
    order = 8
    for _ in range(10):
        f = random_rf(rng, nonzero=True)
        g = random_rf(rng, nonzero=True)
        ef, eg = q_expand(f, order + 2), q_expand(g, order + 2)
        ep = q_expand(f * g, order)
        assert ep.valuation == ef.valuation + eg.valuation
        for k in range(order - ep.valuation + 1):
            conv = sum(
                (ef.coeffs[i] * eg.coeffs[k - i]
                 for i in range(k + 1)
                 if i < len(ef.coeffs) and k - i < len(eg.coeffs)),
                Fraction(0),
            )
            assert ep.coeffs[k] == conv


@pytest.mark.parametrize("seed", [45, 46])
def test_eval_shifted_is_multiplicative(seed):
    rng = random.Random(seed)
    for _ in range(15):
        f = random_rf(rng)
        g = random_rf(rng)
        z = Fraction(rng.randint(-3, 3))
        assert eval_shifted(f * g, z) == eval_shifted(f, z) * eval_shifted(g, z)


@pytest.mark.parametrize("seed", [47, 48])
def test_eval_shifted_links_q_valuation_to_point_multiplicity(seed):
    rng = random.Random(seed)
    for _ in range(20):
        f = random_rf(rng, nonzero=True)
        z = Fraction(rng.randint(-2, 2))
        pole = Poly([-z, 1])
        assert nu_q(eval_shifted(f, z)) == nu_at_factor(f, pole)
