import pytest
from hypothesis import given
from hypothesis import strategies as st

from algebra.chebyshev import cheb_S_laurent
from algebra.curves import CurveVector, analyze_pair, maximal_thread_pair
from algebra.laurent import LaurentPoly, t_power
from algebra.skein import UNIT, BasisKey, SkeinElement
from core.errors import NotMaxThread, UnsupportedProduct
from core.models import ProductCase
from engine.product import (
    STEPWISE_CASES,
    cascade_G,
    classify,
    epsilon_n,
    eta_bound,
    max_thread_product,
    multiply,
    multiply_raw,
    p_n_closed,
)
from strategies import primitive_vectors


def key(p, q):
    curve = SkeinElement.from_raw((p, q))
    ((_, basis),) = curve.terms
    return basis


def raw(p, q):
    return SkeinElement.from_raw((p, q))


@pytest.mark.parametrize(
    "left, right, case",
    [
        ((1, 2), (2, 4), ProductCase.PARALLEL),
        ((1, 0), (0, 1), ProductCase.DET1),
        ((1, 2), (1, 0), ProductCase.DET2_BOTH_SIMPLE),
        ((1, 2), (2, 2), ProductCase.DET2_WITH_COMPOSITE),
        ((3, 6), (1, 0), ProductCase.DET2_THREADED_FAMILY),
        ((1, 0), (3, 6), ProductCase.DET2_THREADED_FAMILY),
        ((4, 3), (0, 1), ProductCase.MAX_THREAD),
        ((2, 3), (4, 1), ProductCase.UNSUPPORTED),
        ((2, 4), (2, 0), ProductCase.UNSUPPORTED),
    ],
)
def test_classify(left, right, case):
    assert classify(key(*left), key(*right)) == case
    assert classify(key(*right), key(*left)) == case


def test_det1_has_no_correction():
    assert multiply_raw((1, 0), (0, 1)) == raw(1, 1).scale(t_power(1)) + raw(1, -1).scale(t_power(-1))


def test_parallel_rule():
    assert multiply_raw((1, 2), (2, 4)) == raw(3, 6) + raw(1, 2)
    assert multiply_raw((1, 2), (1, 2)) == raw(2, 4) + SkeinElement.scalar(2)


def test_p1_matches_worked_value():
    expected = raw(2, 2).scale(t_power(-2)) + raw(0, 2).scale(t_power(2)) + SkeinElement.eta()
    assert p_n_closed(1) == expected
    assert multiply_raw((1, 2), (1, 0)) == expected


def test_p2_through_the_dispatcher():
    expected = raw(3, 4).scale(t_power(-4)) + raw(1, 4).scale(t_power(4)) + raw(1, 2).eta_shift(1)
    assert p_n_closed(2) == expected
    assert multiply_raw((2, 4), (1, 0)) == expected


def test_p3_closed_form():
    l1 = LaurentPoly({4: 1, 0: 1, -4: 1})
    expected = (
        raw(4, 6).scale(t_power(-6))
        + raw(2, 6).scale(t_power(6))
        + (SkeinElement.scalar(l1) + raw(2, 4)).eta_shift(1)
    )
    assert p_n_closed(3) == expected
    assert multiply_raw((3, 6), (1, 0)) == expected


def test_epsilon_terms_carry_one_eta():
    for n in range(1, 15):
        assert epsilon_n(n).eta_degrees() == [1]


def test_right_threaded_is_bar_of_left_threaded():
    assert multiply_raw((1, 0), (3, 6)) == p_n_closed(3).bar()


def test_threaded_family_transported():
    # (3,1) = M(1,0) and (1,1) = M(1,2) up to sign for a unimodular M
    product = multiply_raw((3, 3), (3, 1))
    assert product.main_part() == raw(6, 4).scale(t_power(-6)) + raw(0, 2).scale(t_power(6))
    assert product.max_eta_degree == 1


def test_max_thread_cascade_4_3_by_0_1():
    product = multiply_raw((4, 3), (0, 1))
    expected = (
        raw(4, 2).scale(t_power(-4))
        + raw(4, 4).scale(t_power(4))
        + (SkeinElement.scalar(cheb_S_laurent(1)) + raw(2, 2).scale(t_power(2))).eta_shift(1)
    )
    assert product == expected


def test_max_thread_minus_summand_uses_negative_sign():
    product = max_thread_product((11, 67), (3, 19))
    correction = product.eta_component(1)
    assert correction.coefficient(BasisKey(CurveVector(1, 6), 6)) == t_power(-6)
    assert correction.coefficient(UNIT) == cheb_S_laurent(3)


def test_max_thread_rejects_other_pairs():
    with pytest.raises(NotMaxThread):
        max_thread_product((2, 3), (4, 1))
    with pytest.raises(NotMaxThread):
        max_thread_product((1, 0), (0, 1))


def test_unsupported_product_reports_pair():
    with pytest.raises(UnsupportedProduct) as info:
        multiply_raw((2, 3), (4, 1))
    diagnostic = info.value.to_dict()
    assert diagnostic["error"] == "unsupported_product"
    assert diagnostic["classification"] == "unsupported"
    assert "d+ = 2" in diagnostic["reason"]


def test_eta_bound_short_circuit():
    assert eta_bound((1, 0), (0, 1)) == 0
    assert eta_bound((2, 3), (4, 1)) == 2


def test_allowed_rules_restrict_dispatch():
    with pytest.raises(UnsupportedProduct):
        multiply(raw(3, 6), raw(1, 0), STEPWISE_CASES)
    assert multiply(raw(1, 2), raw(1, 0), STEPWISE_CASES) == p_n_closed(1)


def test_unit_and_scalars():
    element = p_n_closed(2)
    assert multiply(SkeinElement.scalar(1), element) == element
    assert multiply(element, SkeinElement.scalar(t_power(3))) == element.scale(t_power(3))
    assert multiply(SkeinElement.eta(), element) == element.eta_shift(1)


def test_multiplication_is_bilinear():
    a = raw(1, 0).scale(t_power(2)) + raw(0, 1)
    b = raw(1, 1)
    expected = multiply_raw((1, 0), (1, 1)).scale(t_power(2)) + multiply_raw((0, 1), (1, 1))
    assert multiply(a, b) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 6, 11])
def test_cascade_levels(n):
    mu = CurveVector(1, 0)
    cascade = cascade_G(n, 1, mu)
    if n == 1:
        assert cascade.is_zero()
        return
    assert cascade.coefficient(BasisKey(mu, n - 2) if n > 2 else UNIT) == t_power(n - 2)
    assert len(cascade) == (n - 2) // 2 + 1


def test_cascade_arguments_checked():
    with pytest.raises(ValueError):
        cascade_G(0, 1, (1, 0))
    with pytest.raises(ValueError):
        cascade_G(3, 2, (1, 0))
    with pytest.raises(ValueError):
        cascade_G(3, 1, (2, 0))


@given(primitive_vectors(12), st.integers(2, 12), st.sampled_from([1, -1]), st.integers(-2, 2))
def test_max_thread_eta_degree_is_one(u, n, sign, shift):
    v = maximal_thread_pair(u, n, sign, shift)
    product = multiply_raw(u, v)
    assert product.eta_degrees() in ([0, 1], [0])
    pair = analyze_pair(u, v)
    assert product.main_part() == (
        raw(u[0] + v[0], u[1] + v[1]).scale(t_power(pair.n))
        + raw(u[0] - v[0], u[1] - v[1]).scale(t_power(-pair.n))
    )


@given(primitive_vectors(12), primitive_vectors(12))
def test_reversed_order_is_bar(u, v):
    try:
        forward = multiply_raw(u, v)
    except UnsupportedProduct:
        with pytest.raises(UnsupportedProduct):
            multiply_raw(v, u)
        return
    assert multiply_raw(v, u) == forward.bar()