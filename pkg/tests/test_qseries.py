from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sympferm.qseries import (
    DEN, QSeries, eta, eta2, eta_power, free_wtype, full_character, named_product,
    partial_theta, partial_theta_leading_exponent, qs_invert, qs_mul, sp_orbifold,
)


def poly(coeffs, trunc_weight):
    return QSeries.from_coefficients(coeffs, DEN * trunc_weight)


def partitions(n, min_part=1):
    table = [1] + [0] * n
    for p in range(min_part, n + 1):
        for s in range(p, n + 1):
            table[s] += table[s - p]
    return table


def test_difference_of_squares():
    assert qs_mul(poly([1, 1], 5), poly([1, -1], 5)) == poly([1, 0, -1], 5)


def test_product_of_binomials_squared():
    # direct hand count of prod_{j<=4}(1+q^j)^2 up to q^4
    acc = QSeries.one(5 * DEN)
    for j in range(1, 5):
        b = QSeries({0: 1, j * DEN: 1}, 5 * DEN)
        acc = acc * b * b
    assert acc.coefficients()[:5] == [1, 2, 3, 6, 9]


def test_zero_annihilates():
    a = poly([1, 2, 3], 6)
    assert qs_mul(a, QSeries.zero(6 * DEN)).is_zero()


def test_truncation_rule():
    a = QSeries({DEN: 1}, 4 * DEN)
    b = QSeries({0: 1}, 2 * DEN)
    assert qs_mul(a, b).trunc == min(4 * DEN + 0, 2 * DEN + DEN)


def test_geometric_inverse():
    inv = qs_invert(poly([1, -1], 10))
    assert inv.coefficients() == [1] * 10


def test_unit_inverse():
    assert qs_invert(QSeries.one(7 * DEN)) == QSeries.one(7 * DEN)


def test_invert_requires_nonzero():
    with pytest.raises((ValueError, ZeroDivisionError)):
        qs_invert(QSeries.zero(DEN))


def test_eta_inverse_counts_partitions():
    inv = qs_invert(eta(12 * DEN))
    assert inv.valuation == -1
    assert inv.coefficients(offset=-1)[:12] == partitions(11)


def test_eta_pentagonal_pattern():
    e = eta(13 * DEN)
    assert e.valuation == 1 and e.leading_coefficient == 1
    assert e.coefficients(offset=1)[:13] == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]


def test_eta2_leading_exponent():
    assert eta2(4 * DEN).valuation == 2


@pytest.mark.parametrize("k", [-3, -1, 0, 2, 4])
def test_eta_power_matches_repeated_products(k):
    t = 10 * DEN
    expected = QSeries.one(t) if k == 0 else (eta(t) ** k if k > 0 else qs_invert(eta(t)) ** (-k))
    assert eta_power(k, t).first_mismatch(expected) is None


def test_partial_theta_examples():
    t = 12 * DEN
    assert partial_theta(0, t) == QSeries({3 + 24: 1, 3 + 72: -1, 3 + 144: 1, 3 + 240: -1}, t)
    assert partial_theta(-1, t) == QSeries({3: 1, 3 + 24: -1, 3 + 72: 1, 3 + 144: -1, 3 + 240: 1}, t)
    p1 = partial_theta(1, 8 * DEN)
    assert list(p1.items())[:2] == [(75, 1), (147, -1)]


@pytest.mark.parametrize("n", range(-4, 5))
def test_partial_theta_leading_exponent(n):
    e = partial_theta_leading_exponent(n)
    assert partial_theta(n, e + 1).valuation == e


def test_full_character():
    ch = full_character(1, 1, 4 * DEN)
    assert ch.valuation == 2
    assert ch.coefficients(offset=2)[:4] == [1, 2, 3, 6]


def test_sp_orbifold_counts_partitions_without_ones():
    s = sp_orbifold(1, 11 * DEN)
    assert s.valuation == 2
    assert s.coefficients(offset=2)[:11] == [1, 0, 1, 1, 2, 2, 4, 4, 7, 8, 12]


def test_free_wtype_two_colors():
    assert free_wtype([2, 3], 7 * DEN).coefficients()[:7] == [1, 0, 1, 2, 3, 4, 8]


def test_named_product_dispatch():
    assert named_product("sp_orbifold", 2, trunc=6 * DEN) == sp_orbifold(2, 6 * DEN)
    with pytest.raises(ValueError):
        named_product("nope", trunc=DEN)


def test_json_round_trip():
    s = qs_invert(eta(6 * DEN)).scale(Fraction(3, 7))
    assert QSeries.from_json(s.to_json()) == s
    assert all(isinstance(e, int) for e, _ in s.to_csv_rows())


def test_substitute_and_shift():
    s = poly([1, 1], 3)
    assert s.substitute(2) == QSeries({0: 1, 2 * DEN: 1}, 6 * DEN)
    assert s.shift(5).valuation == 5


series = st.lists(st.integers(-5, 5), min_size=1, max_size=8).map(lambda c: poly(c, 8))


@settings(max_examples=60, deadline=None)
@given(series, series, series)
def test_ring_axioms(a, b, c):
    assert (a * b).first_mismatch(b * a) is None
    assert ((a * b) * c).first_mismatch(a * (b * c)) is None
    assert (a * (b + c)).first_mismatch(a * b + a * c) is None


@settings(max_examples=60, deadline=None)
@given(series)
def test_inverse_is_inverse(a):
    if a.is_zero():
        return
    prod = a * qs_invert(a)
    assert prod.first_mismatch(QSeries.one(prod.trunc)) is None
