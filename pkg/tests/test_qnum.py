"""Rational parsing, q-points, and bracket arithmetic."""

import pytest
from fractions import Fraction
from hypothesis import given, strategies as st

from qgenocchi.qnum import (
    DEFAULT_Q_SAMPLES,
    PoleError,
    QPoint,
    Rat,
    Weights,
    binom,
    format_rat,
    parse_rat,
    q_bracket,
    q_pow,
    two_bracket,
)


def test_parse_rat_basic():
    assert parse_rat("3") == 3
    assert parse_rat("-3") == -3
    assert parse_rat("1/2") == Fraction(1, 2)
    assert parse_rat("-7/3") == Fraction(-7, 3)
    assert parse_rat("4/6") == Fraction(2, 3)


@pytest.mark.parametrize("bad", ["", "1.5", "1/2/3", "a/b", "1/-2", "+3", "1 /2", "2/0"])
def test_parse_rat_rejects(bad):
    with pytest.raises(ValueError):
        parse_rat(bad)


def test_parse_rat_tolerates_surrounding_whitespace():
    # config lists split on commas and hand over segments like " 1/2"
    assert parse_rat(" 1/2 ") == Fraction(1, 2)


def test_format_rat_canonical():
    assert format_rat(Rat(4, 6)) == "2/3"
    assert format_rat(Rat(-4, 2)) == "-2"
    assert format_rat(Rat(0)) == "0"


@given(st.fractions())
def test_format_parse_round_trip(r):
    assert parse_rat(format_rat(r)) == r


def test_qpoint_rejects_degenerate_values():
    for bad in (0, 1, -1, Fraction(1, 1)):
        with pytest.raises(ValueError):
            QPoint(bad)


def test_qpoint_inverse_and_raised():
    q = QPoint(Fraction(2, 3))
    assert q.inverse().value == Fraction(3, 2)
    assert q.raised(2).value == Fraction(4, 9)
    assert q.raised(-1).value == Fraction(3, 2)
    with pytest.raises(ValueError):
        q.raised(0)


def test_default_samples_are_valid_points():
    for value in DEFAULT_Q_SAMPLES:
        QPoint(value)  # must not raise


def test_pole_guard_is_unreachable_for_rational_points():
    # 1 + q^(alpha*l) = 0 needs q^(alpha*l) = -1, impossible for rational q
    # with |q| not in {0, 1}; every valid QPoint is therefore pole-free.
    for value in DEFAULT_Q_SAMPLES:
        q = QPoint(value)
        assert q.pole_free(3, 12)
        q.require_pole_free(3, 12)


def test_weights_validation():
    w = Weights(2, 3)
    assert (w.alpha, w.beta) == (2, 3)
    with pytest.raises(ValueError):
        Weights(0, 1)
    with pytest.raises(ValueError):
        Weights(1, -2)


def test_q_bracket_values():
    q2 = QPoint(2)
    assert q_bracket(0, q2) == 0
    assert q_bracket(1, q2) == 1
    assert q_bracket(2, q2) == 3
    assert q_bracket(3, q2) == 7
    assert q_bracket(-1, q2) == Fraction(-1, 2)
    assert q_bracket(2, QPoint(Fraction(1, 2))) == Fraction(3, 2)


def test_q_bracket_accepts_raw_one_as_classical_limit():
    assert q_bracket(5, 1) == 5
    assert q_bracket(-3, 1) == -3


rats = st.fractions(
    min_value=Fraction(-5), max_value=Fraction(5), max_denominator=7
).filter(lambda r: r not in (0, 1, -1))


@given(rats, st.integers(-6, 6), st.integers(-6, 6))
def test_q_bracket_addition_rule(qv, x, y):
    # [x+y]_q = [x]_q + q^x [y]_q
    q = QPoint(qv)
    assert q_bracket(x + y, q) == q_bracket(x, q) + q_pow(q, x) * q_bracket(y, q)


@given(rats, st.integers(-6, 6), st.integers(1, 4))
def test_reflection_bracket_identity(qv, x, alpha):
    # [1-x]_{q^-alpha} = 1 - [x]_{q^alpha} = -q^alpha [x-1]_{q^alpha}
    q = QPoint(qv)
    lhs = q_bracket(1 - x, q.raised(-alpha))
    assert lhs == 1 - q_bracket(x, q.raised(alpha))
    assert lhs == -q_pow(q, alpha) * q_bracket(x - 1, q.raised(alpha))


def test_two_bracket():
    assert two_bracket(1, QPoint(2)) == 3
    assert two_bracket(2, QPoint(2)) == 5
    assert two_bracket(1, QPoint(Fraction(1, 2))) == Fraction(3, 2)
    # [2]_{-q^beta} with q=4, beta=1 appears as 1+q^beta in the fermionic
    # normalizer's denominator; its value at q=4 is 5, while [3]_{-4} = 13.
    assert (1 - (-4) ** 3) / (1 - (-4)) == 13


def test_binom():
    assert binom(5, 2) == 10
    assert binom(5, 0) == 1
    assert binom(5, 7) == 0
    assert binom(5, -1) == 0
    with pytest.raises(ValueError):
        binom(-1, 0)


def test_pole_error_is_arithmetic_error():
    assert issubclass(PoleError, ArithmeticError)
