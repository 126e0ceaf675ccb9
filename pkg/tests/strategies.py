"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from wronski.combinat import partition
from wronski.exactmath import Polynomial, SymbolTable
from wronski.series import DividedSeries

rationals = st.fractions(min_value=-9, max_value=9, max_denominator=6)


@st.composite
def polynomials(draw, symbols: SymbolTable, max_terms: int = 4, max_deg: int = 3):
    n = len(symbols)
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_deg)] * n),
            rationals,
            max_size=max_terms,
        )
    )
    return Polynomial(symbols, terms)


@st.composite
def partitions(draw, max_weight: int = 6, max_rows: int | None = None):
    rows = max_rows if max_rows is not None else max_weight
    parts = draw(st.lists(st.integers(0, max_weight), max_size=rows))
    parts = sorted(parts, reverse=True)
    while sum(parts) > max_weight:
        parts[0] -= 1
        parts.sort(reverse=True)
    return partition(parts)


@st.composite
def rational_series(draw, order: int):
    return DividedSeries(tuple(draw(st.lists(rationals, min_size=order + 1, max_size=order + 1))))


@st.composite
def poly_series(draw, symbols: SymbolTable, order: int):
    coeffs = draw(st.lists(polynomials(symbols, 3, 2), min_size=order + 1, max_size=order + 1))
    return DividedSeries(tuple(coeffs))


def as_q(values):
    return tuple(Fraction(v) for v in values)
