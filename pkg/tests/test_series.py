from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, assume
from hypothesis import strategies as st

from nwalk.series import (RationalSeries, series_sqrt, algebraic_residual, poly_t, LaurentPoly,
                          BivariateSeries, extract)
from nwalk.dyck import walk_series, UNWEIGHTED

ORDER = 20


def T(k=1, order=ORDER):
    return RationalSeries.t(order, k)


def one(order=ORDER):
    return RationalSeries.const(1, order)


def test_geometric_division():
    f = one() / poly_t([1, -3], ORDER)
    assert f.coefficients() == [3 ** n for n in range(ORDER)]


def test_laurent_valuation_bookkeeping():
    tinv = one() / T()
    assert tinv.valuation == -1
    prod = T() * tinv
    assert prod.valuation == 0 and prod[0] == 1


def test_bridge_closed_form():
    t2 = T(2)
    B = (one() - 6 * t2) / (one() - 9 * t2) / series_sqrt(one() - 8 * t2)
    assert B.coefficients(0, 9) == [1, 0, 7, 0, 63, 0, 583, 0, 5407]


def test_division_by_zero_series():
    with pytest.raises(ZeroDivisionError):
        one() / RationalSeries.zero(ORDER)


def test_sqrt_examples():
    s = series_sqrt(one() - 8 * T(2))
    expected = [Fraction(0)] * ORDER
    for k in range(ORDER // 2):
        # binomial series sum C(1/2, k) (-8 t^2)^k
        c = Fraction(1)
        for i in range(k):
            c *= Fraction(1, 2) - i
        c /= factorial(k)
        expected[2 * k] = c * (-8) ** k
    assert s.coefficients() == expected
    assert s.coefficients(0, 8) == [1, 0, -4, 0, -8, 0, -32, 0]
    assert series_sqrt(one()).coefficients() == [1] + [0] * (ORDER - 1)
    a = poly_t([1, 2], ORDER) * poly_t([1, -6], ORDER)
    r = series_sqrt(a)
    assert r * r == a


def test_sqrt_errors():
    with pytest.raises(ValueError):
        series_sqrt(T(1))
    with pytest.raises(ValueError):
        series_sqrt(poly_t([2, 1], ORDER))
    with pytest.raises(ValueError):
        series_sqrt(RationalSeries.zero(ORDER))


def test_sqrt_with_valuation():
    a = poly_t([0, 0, 4, 4, 1], ORDER)       # (2t + t^2)^2
    r = series_sqrt(a)
    assert r.valuation == 1
    assert r * r == a


def test_algebraic_residual():
    E = RationalSeries([1, 0, 2, 0, 8, 0, 40, 0, 224, 0, 1344], 0, 11)
    assert algebraic_residual([0, 1], RationalSeries.zero(11)).is_zero()
    # (1 - sqrt(1 - 8t^2)) / (4t^2) satisfies E = 1 + 2 t^2 E^2
    order = 16
    Ec = (one(order) - series_sqrt(one(order) - 8 * T(2, order))) / (4 * T(2, order))
    res = algebraic_residual([one(Ec.order), -one(Ec.order), 2 * T(2, Ec.order)], Ec)
    assert res.is_zero()
    assert Ec.coefficients(0, 11) == E.coefficients()


def test_str_and_json_roundtrip():
    f = RationalSeries([1, Fraction(-1, 2), 0, 3], 0, 5)
    assert str(f) == "1 - 1/2*t + 3*t^3 + O(t^5)"
    assert RationalSeries.from_json(f.to_json()) == f


series_coeffs = st.lists(st.fractions(-5, 5, max_denominator=7), min_size=ORDER, max_size=ORDER)


@settings(max_examples=200, deadline=None)
@given(series_coeffs, series_coeffs)
def test_mul_div_roundtrip(a, b):
    assume(b[0] != 0)
    A, B = RationalSeries(a, 0, ORDER), RationalSeries(b, 0, ORDER)
    assert (A * B) / B == A


@settings(max_examples=200, deadline=None)
@given(series_coeffs, st.integers(0, 3))
def test_sqrt_of_square(a, v):
    assume(a[0] != 0)
    A = RationalSeries(a, v, ORDER)
    sq = A * A
    r = series_sqrt(sq)
    assert r * r == sq
    assert r == A or r == -A


# -- bivariate and extraction ----------------------------------------------------

D = walk_series(UNWEIGHTED, 8)


def test_extract_bridge_coefficient():
    part = extract(extract(D, "x<=0"), "y>=0")
    assert part.totals()[2] == 7


def test_extract_positive_min_negative_max_is_empty():
    part = extract(extract(D, "x>0"), "y<0")
    assert all(not c for c in part.coeffs)


def test_residue_filter():
    f = BivariateSeries([{(-2, 0): 1, (-1, 1): 1}], 1)
    kept = extract(f, "x-residue", g=2, r=0)
    assert kept.coeffs[0] == {(-2, 0): 1}
    with pytest.raises(ValueError):
        extract(f, "x-residue", g=0, r=0)


def test_residue_equals_symmetrization():
    half = Fraction(1, 2)
    sym = (D + D.flip_x()).scale(half)
    assert extract(D, "x-residue", g=2, r=0) == sym


def test_selectors_partition_and_idempotent():
    pos, nonpos = extract(D, "x>0"), extract(D, "x<=0")
    assert pos + nonpos == D
    assert extract(pos, "x>0") == pos
    assert extract(D, "coefficient", i=-1, j=1).coeffs[1] == {(-1, 1): 1}


def test_laurent_poly_arithmetic():
    x = LaurentPoly.mono(1, 1, 0)
    y = LaurentPoly.mono(1, 0, 1)
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert p.evaluate(2, 1) == 3
    assert (p - p).is_zero()
    assert str(LaurentPoly.mono(Fraction(1, 2), -1, 2)) == "1/2*x^-1*y^2"
