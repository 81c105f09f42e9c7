from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lmsb.series import LogDegreeError, LogSeries, MultiSeries

ORDER = 6


def _series(nvars, terms):
    return MultiSeries(nvars, ORDER,
                       {e: Fraction(c) for e, c in terms.items()})


@st.composite
def series_strategy(draw, nvars=2, min_val=0):
    n = draw(st.integers(min_value=0, max_value=5))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(min_value=0, max_value=ORDER))
                  for _ in range(nvars))
        if sum(e) > ORDER or sum(e) < min_val:
            continue
        num = draw(st.integers(min_value=-30, max_value=30))
        den = draw(st.integers(min_value=1, max_value=9))
        terms[e] = Fraction(num, den)
    return MultiSeries(nvars, ORDER, terms)


@settings(max_examples=60, deadline=None)
@given(series_strategy(), series_strategy(), series_strategy())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None)
@given(series_strategy())
def test_additive_inverse(a):
    assert a - a == MultiSeries(2, ORDER)


@settings(max_examples=40, deadline=None)
@given(series_strategy())
def test_inverse_of_unit(a):
    u = a + MultiSeries.constant(1, 2, ORDER) - \
        MultiSeries.constant(a.constant_term, 2, ORDER)
    assert u * u.inverse() == MultiSeries.constant(1, 2, ORDER)


@settings(max_examples=40, deadline=None)
@given(series_strategy(min_val=1))
def test_exp_log_roundtrip(a):
    # log(exp(a)) == a for series without constant term
    assert a.exp().log1() == a


@settings(max_examples=40, deadline=None)
@given(series_strategy(), series_strategy())
def test_theta_leibniz(a, b):
    lhs = (a * b).theta(0)
    rhs = a.theta(0) * b + a * b.theta(0)
    assert lhs.truncate(ORDER) == rhs.truncate(ORDER)


def test_theta_commutes():
    s = _series(2, {(1, 0): 2, (2, 3): Fraction(5, 7), (0, 1): -3})
    assert s.theta(0).theta(1) == s.theta(1).theta(0)


def test_compose_identity():
    s = _series(2, {(1, 0): 2, (1, 1): Fraction(1, 3)})
    ident = [MultiSeries.variable(i, 2, ORDER) for i in range(2)]
    assert s.compose(ident) == s


def test_compose_is_homomorphism():
    a = _series(2, {(1, 0): 1, (0, 2): 3})
    b = _series(2, {(0, 1): Fraction(2, 5), (2, 0): -1})
    subs = [_series(2, {(1, 0): 1, (1, 1): 4}),
            _series(2, {(0, 1): 1, (2, 0): Fraction(1, 2)})]
    assert (a * b).compose(subs) == a.compose(subs) * b.compose(subs)
    assert (a + b).compose(subs) == a.compose(subs) + b.compose(subs)


def test_division_requires_unit():
    s = _series(2, {(1, 0): 1})
    with pytest.raises((ZeroDivisionError, ValueError)):
        s.inverse()


def test_log_cap_enforced():
    with pytest.raises(LogDegreeError):
        LogSeries(1, 4, {(5,): MultiSeries.constant(1, 1, 4)})


def test_log_series_product_collects_log_degrees():
    t = LogSeries.log_var(0, 1, 4)
    sq = t * t
    assert set(sq.components) == {(2,)}
    assert sq.component((2,)) == MultiSeries.constant(1, 1, 4)


def test_log_series_theta_differentiates_logs():
    # theta (log z)^2 = 2 log z
    t = LogSeries.log_var(0, 1, 4)
    d = (t * t).theta(0)
    assert d.component((1,)) == MultiSeries.constant(2, 1, 4)
    assert d.power_part == MultiSeries(1, 4)
