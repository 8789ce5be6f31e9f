import random
from fractions import Fraction

import pytest

from ncpart.errors import BadComposition, NotAUnit, PreconditionViolated, SingularPoint
from ncpart.inversion import (TruncatedSeries, binsum_check, cor1_sides, det_identity_check,
                              det_random_suite, determinant, lagrange_good, lemma1_sides,
                              lg_random_suite)


def S(d, order, coeffs):
    return TruncatedSeries(d, order, {k: Fraction(v) for k, v in coeffs.items()})


def test_series_arithmetic():
    z = TruncatedSeries.var(1, 5, 0)
    one = TruncatedSeries.const(1, 5)
    geo = (one - z).inverse()
    assert [geo.coeff(k) for k in range(6)] == [1] * 6
    assert (geo * (one - z)) == one
    with pytest.raises(NotAUnit):
        z.inverse()


def test_compose_needs_zero_constant():
    z = TruncatedSeries.var(1, 4, 0)
    one = TruncatedSeries.const(1, 4)
    with pytest.raises(BadComposition):
        z.compose([one + z])


def test_catalan():
    # f = z(1 - z); writing z as a series in f gives the Catalan numbers
    order = 6
    z = TruncatedSeries.var(1, order + 1, 0)
    phi = (TruncatedSeries.const(1, order + 1) - z).inverse()
    g = TruncatedSeries.var(1, order, 0)
    res = lagrange_good(g, [phi], order)
    assert res.verified
    assert [res.gammas[(k,)] for k in range(1, 7)] == [1, 1, 2, 5, 14, 42]


def test_trivial_phi():
    order = 5
    g = S(1, order, {(0,): 3, (2,): -1, (5,): 7})
    res = lagrange_good(g, [TruncatedSeries.const(1, order + 1)], order)
    assert res.verified
    assert res.gammas[(2,)] == -1 and res.gammas[(5,)] == 7


def test_order_precondition():
    g = TruncatedSeries.const(1, 3)
    with pytest.raises(PreconditionViolated):
        lagrange_good(g, [TruncatedSeries.const(1, 3)], 3)


def test_random_lagrange_good_small():
    assert lg_random_suite(count=8, seed=7, max_d=2, order=4) == []


def test_determinant():
    assert determinant([[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]) == -2


def test_lemma1_and_cor1_values():
    assert lemma1_sides((4,), ())[0] == lemma1_sides((4,), ())[1] == 1
    assert cor1_sides((2, 3), 5, 7, 1) == (Fraction(-2, 3), Fraction(-2, 3))
    assert det_identity_check("lemma1", {"X": (1, 2, 3), "Y": (4, 5)})


def test_singular_point():
    with pytest.raises(SingularPoint):
        cor1_sides((0, 3), 5, 7, 1)


def test_det_random():
    assert det_random_suite("lemma1", count=30, seed=3) == []
    assert det_random_suite("cor1", count=30, seed=3) == []


def test_binsum_small():
    assert all(binsum_check(M, r) for M in range(5) for r in range(5))
