from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cacti.scalars import (
    F2, F3, FieldError, FieldSpec, Q, Scalar, TruncatedSeries, identity_series, log_series,
    parse_scalar, series_compose,
)


def test_rational_examples():
    assert Scalar.of(Fraction(1, 2)) + Scalar.of(Fraction(1, 3)) == Fraction(5, 6)
    assert Scalar.of(Fraction(2, 4)).value == Fraction(1, 2)
    assert str(Scalar.of(Fraction(-3, 6))) == "-1/2"


def test_prime_field_examples():
    assert Scalar.of(2, F3).inv() == 2
    assert str(Scalar.of(5, F3)) == "2 mod 3"
    assert Scalar.of(7, F2).value == 1


def test_errors():
    with pytest.raises(ZeroDivisionError):
        Scalar.of(0).inv()
    with pytest.raises(ZeroDivisionError):
        Scalar.of(3, F3).inv()
    with pytest.raises(FieldError):
        Scalar.of(1) + Scalar.of(1, F2)
    with pytest.raises(FieldError):
        FieldSpec(4)


def test_field_parse():
    assert FieldSpec.parse("q") == Q
    assert FieldSpec.parse("F3") == F3
    assert FieldSpec.parse("2") == F2
    with pytest.raises(FieldError):
        FieldSpec.parse("r")


def test_parse_scalar():
    assert parse_scalar("3/6") == Fraction(1, 2)
    assert parse_scalar("2 mod 3", F3) == 2
    assert parse_scalar("1/2", F3) == 2
    with pytest.raises(FieldError):
        parse_scalar("1 mod 5", F3)


small = st.fractions(min_value=-50, max_value=50, max_denominator=20)


@given(small, small, st.sampled_from([2, 3, 5, 7]))
def test_reduction_mod_p_is_a_homomorphism(a, b, p):
    F = FieldSpec(p)
    if a.denominator % p == 0 or b.denominator % p == 0:
        return
    ra, rb = F.coerce(a), F.coerce(b)
    assert F.coerce(a + b) == F.add(ra, rb)
    assert F.coerce(a * b) == F.mul(ra, rb)
    if b != 0 and b.numerator % p:
        assert F.coerce(a / b) == F.div(ra, rb)


def test_perm_nap_composition():
    f = TruncatedSeries([0, 1, 1, Fraction(1, 2), Fraction(1, 6)])
    g = TruncatedSeries([0, 1, 1, Fraction(3, 2), Fraction(8, 3)])
    h = series_compose(f, g, 4)
    assert h == TruncatedSeries([0, 1, 2, 4, Fraction(25, 3)])
    assert h.to_dims() == [1, 4, 24, 200]


def test_identity_series():
    f = TruncatedSeries([0, 3, Fraction(1, 2), 7, 1, 0, 2])
    assert series_compose(f, identity_series(6), 6) == f
    assert series_compose(identity_series(6), f, 6) == f


def test_lie_of_leib():
    lie = log_series(1, 6)
    leib = TruncatedSeries([0] + [1] * 6)  # t/(1-t)
    got = series_compose(lie, leib, 6)
    want = log_series(2, 6) - log_series(1, 6)  # -log((1-2t)/(1-t))
    assert got == want
    assert got.to_dims() == [1, 3, 14, 90, 744, 7560]


def test_dims_round_trip_and_twist():
    s = TruncatedSeries.from_dims([1, 2, 9, 64])
    assert s.to_dims() == [1, 2, 9, 64]
    assert s.twist().to_dims() == [1, -2, 9, -64]
    assert str(s) == "[1, 2, 9, 64]"


def test_compose_rejects_constant_term():
    with pytest.raises(FieldError):
        series_compose(identity_series(3), TruncatedSeries([1, 1, 0, 0]), 3)


def sparse_series(N):
    coeff = st.one_of(st.just(Fraction(0)), st.fractions(min_value=-5, max_value=5, max_denominator=6))
    return st.lists(coeff, min_size=N, max_size=N).map(lambda cs: TruncatedSeries([0] + cs))


@given(sparse_series(6), sparse_series(6), sparse_series(6))
def test_compose_associative(f, g, h):
    N = 6
    assert series_compose(series_compose(f, g, N), h, N) == series_compose(f, series_compose(g, h, N), N)


@given(st.lists(st.integers(0, 10), min_size=5, max_size=5), st.lists(st.integers(0, 10), min_size=5, max_size=5))
def test_compose_mod_p_agrees(a, b):
    f, g = TruncatedSeries([0] + a), TruncatedSeries([0] + b)
    fq = series_compose(f, g, 5)
    for F in (F2, F3):
        fp = series_compose(TruncatedSeries([0] + a, F), TruncatedSeries([0] + b, F), 5)
        assert fp.coeffs == tuple(F.coerce(c) for c in fq.coeffs)
