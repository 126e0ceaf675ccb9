from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import as_q, poly_series, rational_series, rationals
from wronski.exactmath import Polynomial, SymbolTable, TruncationError, UsageError
from wronski.odecore import UniversalContext, universal_solutions
from wronski.series import (
    DifferentialOperator,
    DividedSeries,
    series_apply_operator,
    series_derive,
    series_map_coeffs,
    series_product,
)

E = SymbolTable.of("e1", "e2")
e1, e2 = Polynomial.variables(E)


def test_derive_examples():
    f = DividedSeries(as_q([1, 1, 1]))
    assert series_derive(f, 1) == DividedSeries(as_q([1, 1]))
    assert series_derive(f, 0) == f
    u = universal_solutions(UniversalContext(1, 6), 6)
    assert series_derive(u[1], 1).agrees_with(u[0], 5)


def test_derive_past_order():
    with pytest.raises(TruncationError):
        series_derive(DividedSeries(as_q([1, 2])), 2)


def test_product_examples():
    f = DividedSeries(as_q([1, 1, 0]))
    assert series_product(f, f) == DividedSeries(as_q([1, 2, 2]))
    ones = DividedSeries(as_q([1] * 8))
    assert series_product(ones, ones) == DividedSeries(as_q([2**n for n in range(8)]))
    unit = DividedSeries.constant(Fraction(1), 2)
    assert series_product(f, unit) == f


def test_product_ring_mismatch():
    f = DividedSeries(as_q([1, 1]))
    g = DividedSeries((e1, e2))
    with pytest.raises(UsageError):
        series_product(f, g)


def test_product_order_is_minimum():
    f = DividedSeries(as_q([1, 2, 3, 4]))
    g = DividedSeries(as_q([1, 1]))
    assert series_product(f, g).order == 1


def test_operator_examples():
    ctx = UniversalContext(1, 8)
    u = universal_solutions(ctx, 8)
    P = DifferentialOperator.from_elementary(ctx.elementary, ctx.one())
    assert series_apply_operator(P, u[0]).is_zero()
    D = DifferentialOperator((Fraction(0), Fraction(1)))
    f = DividedSeries(as_q([3, 1, 4, 1, 5]))
    assert series_apply_operator(D, f) == series_derive(f, 1)
    w0 = DividedSeries(tuple(e1**n for n in range(7)))
    first = DifferentialOperator((-e1, Polynomial.one(E)))
    assert series_apply_operator(first, w0).is_zero()


def test_operator_order_too_small():
    P = DifferentialOperator.from_elementary([e1, e2], Polynomial.one(E))
    with pytest.raises(TruncationError):
        series_apply_operator(P, DividedSeries((e1, e2)))


def test_map_coeffs_examples():
    u0 = universal_solutions(UniversalContext(1, 5), 5)[0]
    assert series_map_coeffs(u0, {"e1": 3, "e2": 2}) == DividedSeries(as_q([1, 3, 7, 15, 31, 63]))
    assert series_map_coeffs(u0, {"e1": 0, "e2": 1}) == DividedSeries(as_q([1, 0, -1, 0, 1, 0]))
    assert series_map_coeffs(u0, {"e1": e1, "e2": e2}) == u0


def test_agrees_with_needs_order():
    f = DividedSeries(as_q([1, 2]))
    with pytest.raises(TruncationError):
        f.agrees_with(f, 3)


def test_json_shape():
    f = DividedSeries(as_q([1, 3, 7]))
    assert f.to_json() == {"order": 2, "coeffs": ["1", "3", "7"]}


def test_render():
    assert DividedSeries(as_q([1, Fraction(1, 2)])).render() == "a0 = 1\na1 = 1/2"


@given(rational_series(7), rational_series(7))
def test_leibniz_rule(f, g):
    lhs = series_derive(series_product(f, g), 1)
    rhs = series_product(series_derive(f, 1), g) + series_product(f, series_derive(g, 1))
    assert lhs == rhs


@settings(deadline=None, max_examples=40)
@given(poly_series(E, 5), st.tuples(rationals, rationals))
def test_derive_commutes_with_map(f, vals):
    images = dict(zip(E.names, vals))
    assert series_derive(series_map_coeffs(f, images), 2) == series_map_coeffs(series_derive(f, 2), images)


@given(rational_series(6), rational_series(6), rationals)
def test_operator_is_linear(f, g, c):
    P = DifferentialOperator(as_q([2, -3, 1]))
    lhs = series_apply_operator(P, f * c + g)
    assert lhs == series_apply_operator(P, f) * c + series_apply_operator(P, g)


@given(rational_series(10))
def test_binomial_transform(f):
    ones = DividedSeries(as_q([1] * 11))
    got = series_product(ones, f)
    for n in range(11):
        assert got[n] == sum(comb(n, k) * f[k] for k in range(n + 1))


@given(rational_series(6))
def test_json_roundtrip(f):
    assert DividedSeries.from_json(f.to_json()) == f


@settings(deadline=None, max_examples=30)
@given(poly_series(E, 3))
def test_json_roundtrip_polynomial(f):
    assert DividedSeries.from_json(f.to_json()) == f
