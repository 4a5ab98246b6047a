from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from algebra.curves import (
    CurveVector,
    MaximalSummand,
    SL2Matrix,
    analyze_pair,
    canonicalize,
    det2_standardize,
    det_pair,
    extended_gcd,
    maximal_thread_pair,
    sl2_apply_curve,
    sl2_normal_form,
    to_first_basis_vector,
)
from core.errors import NonPrimitiveInput, NormalFormError, NotDetTwo, ZeroDeterminant
from strategies import det2_pairs, primitive_vectors, sl2_matrices


@pytest.mark.parametrize(
    "vector, curve, thread",
    [
        ((4, 6), (2, 3), 2),
        ((-2, -4), (1, 2), 2),
        ((0, -3), (0, 1), 3),
        ((-1, 3), (1, -3), 1),
        ((0, 0), (0, 0), 0),
    ],
)
def test_canonicalize(vector, curve, thread):
    assert canonicalize(vector) == (CurveVector(*curve), thread)


def test_curve_vector_rejects_non_canonical_sign():
    with pytest.raises(ValueError):
        CurveVector(-1, 2)


def test_det_pair():
    assert det_pair((1, 0), (0, 1)) == 1
    assert det_pair((4, 3), (0, 1)) == 4
    assert det_pair((11, 67), (3, 19)) == 8


@given(st.integers(-500, 500), st.integers(-500, 500))
def test_extended_gcd_bezout(a, b):
    g, x, y = extended_gcd(a, b)
    assert g >= 0
    assert a * x + b * y == g
    if a or b:
        assert a % g == 0 and b % g == 0


@given(primitive_vectors())
def test_to_first_basis_vector(u):
    m = to_first_basis_vector(u)
    assert m.apply(u) == (1, 0)


def test_to_first_basis_vector_rejects_non_primitive():
    with pytest.raises(NonPrimitiveInput):
        to_first_basis_vector((2, 4))


def test_matrix_determinant_is_checked():
    with pytest.raises(ValueError):
        SL2Matrix(2, 0, 0, 1)


@given(sl2_matrices(), sl2_matrices(), primitive_vectors())
def test_matrix_action_composes(m1, m2, v):
    assert (m1 @ m2).apply(v) == m1.apply(m2.apply(v))
    assert m1.inverse().apply(m1.apply(v)) == tuple(v)


@given(sl2_matrices(), primitive_vectors(), primitive_vectors())
def test_sl2_preserves_determinant(m, u, v):
    assert det_pair(m.apply(u), m.apply(v)) == det_pair(u, v)


def test_sl2_apply_curve_canonicalizes():
    assert sl2_apply_curve(SL2Matrix.rotation(), (1, 0)) == CurveVector(0, 1)
    assert sl2_apply_curve(SL2Matrix.rotation(), (0, 1)) == CurveVector(1, 0)


def test_normal_form_example():
    m, a = sl2_normal_form((4, 3), (0, 1))
    assert m.apply((4, 3)) == (1, 0)
    assert m.apply((0, 1)) == (a, 4)
    assert a in (1, 3)


@given(primitive_vectors(), primitive_vectors())
def test_normal_form_postconditions(u, v):
    n = det_pair(u, v)
    assume(n >= 2)
    m, a = sl2_normal_form(u, v)
    assert m.apply(u) == (1, 0)
    assert m.apply(v) == (a, n)
    assert 0 <= a < n


def test_normal_form_errors():
    with pytest.raises(ZeroDeterminant):
        sl2_normal_form((1, 2), (1, 2))
    with pytest.raises(NormalFormError):
        sl2_normal_form((1, 0), (0, 1))
    with pytest.raises(NonPrimitiveInput):
        sl2_normal_form((2, 0), (0, 1))


@pytest.mark.parametrize("pair", [((1, 2), (1, 0)), ((1, 0), (1, 2)), ((3, 5), (1, 1)), ((1, 4), (1, 2)), ((4, 3), (2, 1))])
def test_det2_standardize(pair):
    c1, c2 = pair
    m = det2_standardize(c1, c2)
    assert sl2_apply_curve(m, c1) == CurveVector(1, 0)
    assert sl2_apply_curve(m, c2) == CurveVector(1, 2)


def test_det2_standardize_preserves_gcd():
    m = det2_standardize((4, 3), (2, 1))
    image = m.apply((8, 6))
    assert image == (2, 0)
    assert gcd(*image) == 2
    assert canonicalize(image) == (CurveVector(1, 0), 2)


def test_det2_standardize_rejects_other_determinants():
    with pytest.raises(NotDetTwo):
        det2_standardize((1, 0), (0, 1))


@given(det2_pairs())
def test_det2_standardize_random(pair):
    c1, c2 = pair
    assert abs(det_pair(c1, c2)) == 2
    m = det2_standardize(c1, c2)
    assert sl2_apply_curve(m, c1) == CurveVector(1, 0)
    assert sl2_apply_curve(m, c2) == CurveVector(1, 2)


def test_analyze_pair_plus_summand():
    pair = analyze_pair((4, 3), (0, 1))
    assert pair.n == 4
    assert pair.d_plus == 4
    assert pair.d_minus == 2
    assert pair.maximal_summand is MaximalSummand.PLUS
    assert pair.maximal_direction == CurveVector(1, 1)
    assert pair.cascade_sign == 1


def test_analyze_pair_minus_summand():
    pair = analyze_pair((11, 67), (3, 19))
    assert pair.n == 8
    assert (pair.d_plus, pair.d_minus) == (2, 8)
    assert pair.maximal_summand is MaximalSummand.MINUS
    assert pair.maximal_direction == CurveVector(1, 6)
    assert pair.cascade_sign == -1


def test_analyze_pair_not_maximal():
    pair = analyze_pair((2, 3), (4, 1))
    assert pair.n == -10
    assert (pair.d_plus, pair.d_minus) == (2, 2)
    assert pair.maximal_summand is MaximalSummand.NONE
    assert not pair.is_maximal_thread
    assert pair.maximal_direction is None


def test_analyze_pair_errors():
    with pytest.raises(ZeroDeterminant):
        analyze_pair((1, 2), (-1, -2))
    with pytest.raises(NonPrimitiveInput):
        analyze_pair((2, 2), (1, 0))


@given(primitive_vectors(), st.integers(2, 40), st.sampled_from([1, -1]), st.integers(-3, 3))
def test_maximal_thread_pair_regime(u, n, sign, shift):
    assume(u != (0, 0))
    v = maximal_thread_pair(u, n, sign, shift)
    pair = analyze_pair(u, v)
    assert abs(pair.n) == n
    assert pair.is_maximal_thread
    # the other summand has thread degree 1 or 2
    other = pair.d_minus if pair.maximal_summand is MaximalSummand.PLUS else pair.d_plus
    if n > 2:
        assert other in (1, 2)
