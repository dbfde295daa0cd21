"""Weighted q-Bernstein basis values and their fermionic moments."""

import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from qgenocchi.bernstein import (
    BernsteinSpec,
    bernstein_eval,
    basis_moment,
    moment_branch_rhs,
    moment_expansion_sum,
    moment_integral_exact,
    moment_theorem_rhs,
    symmetry_sides,
)
from qgenocchi.genocchi import TablePool, VARIANT_CORRECTED, VARIANT_PRINTED
from qgenocchi.qnum import DEFAULT_Q_SAMPLES, QPoint, Weights

W11 = Weights(1, 1)
Q2 = QPoint(2)


def test_eval_spots():
    # B_{1,2}(2, 2) at weight 1: C(2,1) [2]_2 [-1]_{1/2} = 2 * 3 * (-2) = -12
    assert bernstein_eval(1, 2, 1, 2, Q2) == -12
    # partition of unity at x=1, n=1: B_{0,1}(1) + B_{1,1}(1) = 0 + 1
    assert bernstein_eval(0, 1, 1, 1, Q2) == 0
    assert bernstein_eval(1, 1, 1, 1, Q2) == 1
    # out-of-range k gives the zero function
    assert bernstein_eval(3, 2, 1, 1, Q2) == 0


@settings(max_examples=100, deadline=None)
@given(
    st.integers(0, 6),
    st.integers(0, 6),
    st.integers(1, 3),
    st.integers(-2, 3),
    st.sampled_from(DEFAULT_Q_SAMPLES),
)
def test_symmetry_reflection(k, n, alpha, x, qv):
    lhs, rhs = symmetry_sides(k, n, alpha, x, QPoint(qv))
    assert lhs == rhs


def test_spec_validation_and_properties():
    spec = BernsteinSpec(1, (1, 2), 1)
    assert spec.fold == 2
    assert spec.total_degree == 3
    assert spec.admissible  # 3 > 2*1
    assert not BernsteinSpec(2, (1, 2), 1).admissible  # 3 < 4
    with pytest.raises(ValueError):
        BernsteinSpec(-1, (1,), 1)
    with pytest.raises(ValueError):
        BernsteinSpec(0, (), 1)
    with pytest.raises(ValueError):
        BernsteinSpec(0, (1,), 0)


def test_basis_moment_is_scaled_number():
    pool = TablePool()
    # integral of [xi]^m against the alternating measure: g_{m+1}/(m+1)
    assert basis_moment(0, W11, Q2, pool) == Fraction(3, 2)
    assert basis_moment(1, W11, Q2, pool) == Fraction(-1, 2)
    assert basis_moment(2, W11, Q2, pool) == Fraction(1, 10)


def test_moment_expansion_spots():
    pool = TablePool()
    # width-0 reflected moment is the constant-function integral
    assert moment_expansion_sum(0, 0, W11, Q2, pool) == Fraction(3, 2)
    # width 1: 3/2 + 1/2 = 2
    assert moment_expansion_sum(0, 1, W11, Q2, pool) == 2
    # the k=1, degrees (1,2) integrand reduces to width 1 at offset 2: 1/15
    assert moment_expansion_sum(2, 1, W11, Q2, pool) == Fraction(1, 15)


def test_moment_integral_spots():
    pool = TablePool()
    spec = BernsteinSpec(1, (1, 2), 1)
    assert moment_integral_exact(spec, 1, Q2, pool) == Fraction(2, 15)
    spec0 = BernsteinSpec(0, (1, 2), 1)
    assert moment_integral_exact(spec0, 1, Q2, pool) == Fraction(49, 15)
    # a degree list containing 0 with k=1 integrates the zero function
    dead = BernsteinSpec(1, (0, 3), 1)
    assert moment_integral_exact(dead, 1, Q2, pool) == 0


def test_theorem_rhs_matches_integral_when_corrected():
    pool = TablePool()
    spec = BernsteinSpec(1, (1, 2), 1)
    corrected = moment_theorem_rhs(spec, 1, Q2, VARIANT_CORRECTED, pool)
    assert corrected == moment_integral_exact(spec, 1, Q2, pool)
    printed = moment_theorem_rhs(spec, 1, Q2, VARIANT_PRINTED, pool)
    assert printed != corrected  # alpha = beta means the printed factor is 1


def test_printed_factor_agrees_only_when_alpha_is_twice_beta():
    pool = TablePool()
    spec = BernsteinSpec(1, (1, 2), 2)  # alpha = 2, beta = 1
    printed = moment_theorem_rhs(spec, 1, Q2, VARIANT_PRINTED, pool)
    corrected = moment_theorem_rhs(spec, 1, Q2, VARIANT_CORRECTED, pool)
    assert printed == corrected == moment_integral_exact(spec, 1, Q2, pool)


def test_branch_rhs_rejects_inadmissible_width():
    pool = TablePool()
    with pytest.raises(ValueError, match="inadmissible"):
        moment_branch_rhs(2, 2, W11, Q2, VARIANT_CORRECTED, pool)
    with pytest.raises(ValueError, match="inadmissible"):
        moment_theorem_rhs(BernsteinSpec(2, (1, 2), 1), 1, Q2, VARIANT_CORRECTED, pool)


@settings(max_examples=100, deadline=None)
@given(
    st.integers(0, 2),
    st.lists(st.integers(0, 4), min_size=1, max_size=3),
    st.integers(1, 2),
    st.integers(1, 2),
    st.sampled_from(DEFAULT_Q_SAMPLES),
)
def test_corrected_branch_matches_integral_on_admissible_specs(
    k, degrees, alpha, beta, qv
):
    spec = BernsteinSpec(k, tuple(degrees), alpha)
    if not spec.admissible:
        return
    pool = TablePool()
    q = QPoint(qv)
    lhs = moment_integral_exact(spec, beta, q, pool)
    rhs = moment_theorem_rhs(spec, beta, q, VARIANT_CORRECTED, pool)
    assert lhs == rhs
