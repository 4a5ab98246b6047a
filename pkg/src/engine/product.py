"""Closed-form multiplication rules on the once-punctured torus.

Ordered products of T-basis keys are classified by the determinant of the
labelled vectors and dispatched to one rule; elements multiply bilinearly
with eta central.
"""

from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Optional

import structlog

from algebra.chebyshev import big_L, cheb_S_laurent
from algebra.curves import (
    CurveVector,
    analyze_pair,
    canonicalize,
    det2_standardize,
    det_pair,
)
from algebra.laurent import t_power
from algebra.skein import BasisKey, SkeinElement
from core.errors import NotMaxThread, UnsupportedProduct
from core.models import ProductCase


logger = structlog.get_logger()

#: rules that never need closed-form threaded formulas
STEPWISE_CASES: FrozenSet[ProductCase] = frozenset({
    ProductCase.PARALLEL,
    ProductCase.DET1,
    ProductCase.DET2_BOTH_SIMPLE,
    ProductCase.DET2_WITH_COMPOSITE,
})

STANDARD_THREADED = CurveVector(1, 2)


def eta_bound(u, v) -> int:
    """Largest eta power a product of the full vectors u, v can carry"""
    (p, q), (r, s) = u, v
    return min(abs(p) + abs(r), abs(q) + abs(s)) // 2


def classify(a: BasisKey, b: BasisKey) -> ProductCase:
    if a.is_unit or b.is_unit:
        raise ValueError("Unit products are scalar and are not classified")
    if a.mu == b.mu:
        return ProductCase.PARALLEL

    full_det = det_pair(a.vector, b.vector)
    if abs(full_det) == 1:
        return ProductCase.DET1
    if abs(full_det) == 2:
        if a.k == 1 and b.k == 1:
            return ProductCase.DET2_BOTH_SIMPLE
        return ProductCase.DET2_WITH_COMPOSITE

    primitive_det = det_pair(a.mu, b.mu)
    if abs(primitive_det) == 2 and (a.k > 1) != (b.k > 1):
        return ProductCase.DET2_THREADED_FAMILY
    if a.k == 1 and b.k == 1 and abs(primitive_det) >= 2:
        if analyze_pair(a.mu, b.mu).is_maximal_thread:
            return ProductCase.MAX_THREAD
    return ProductCase.UNSUPPORTED


def fg_main_terms_raw(u, v) -> SkeinElement:
    """t^D (u + v)_T + t^-D (u - v)_T with D = det(u, v) on the full vectors"""
    (p, q), (r, s) = u, v
    det = det_pair(u, v)
    plus = SkeinElement.from_raw((p + r, q + s)).scale(t_power(det))
    minus = SkeinElement.from_raw((p - r, q - s)).scale(t_power(-det))
    return plus + minus


def fg_main_terms(a: BasisKey, b: BasisKey) -> SkeinElement:
    return fg_main_terms_raw(a.vector, b.vector)


def epsilon_n(n: int) -> SkeinElement:
    """eta * sum over k of (T_{n-1-2k}((1,2)) - delta) * L_k"""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    total = SkeinElement.zero()
    for k in range((n - 1) // 2 + 1):
        degree = n - 1 - 2 * k
        total = total + SkeinElement.threaded_minus_delta(STANDARD_THREADED, degree).scale(big_L(k))
    return total.eta_shift(1)


def _base_case(n: int) -> SkeinElement:
    if n == 1:
        return (
            SkeinElement.from_raw((2, 2)).scale(t_power(-2))
            + SkeinElement.from_raw((0, 2)).scale(t_power(2))
            + SkeinElement.eta()
        )
    return (
        SkeinElement.from_raw((3, 4)).scale(t_power(-4))
        + SkeinElement.from_raw((1, 4)).scale(t_power(4))
        + SkeinElement.from_raw((1, 2)).eta_shift(1)
    )


@lru_cache(maxsize=256)
def p_n_closed(n: int) -> SkeinElement:
    """(n,2n)_T * (1,0)_T in closed form"""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if n <= 2:
        return _base_case(n)
    return (
        SkeinElement.from_raw((n + 1, 2 * n)).scale(t_power(-2 * n))
        + SkeinElement.from_raw((n - 1, 2 * n)).scale(t_power(2 * n))
        + epsilon_n(n)
    )


def cascade_G(n: int, eps: int, mu) -> SkeinElement:
    """Peel cascade: sum over j of t^(eps*(n-2-2j)) (T_{n-2-2j}(mu) - delta) S_j.

    Empty for n = 1; G_2 is the unit.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if eps not in (1, -1):
        raise ValueError(f"eps must be +1 or -1, got {eps}")
    curve, thread = canonicalize(mu.as_tuple() if isinstance(mu, CurveVector) else mu)
    if thread != 1:
        raise ValueError(f"Cascade direction must be primitive, got {mu}")

    total = SkeinElement.zero()
    for j in range((n - 2) // 2 + 1):
        degree = n - 2 - 2 * j
        coeff = cheb_S_laurent(j).shift(eps * degree)
        total = total + SkeinElement.threaded_minus_delta(curve, degree).scale(coeff)
    return total


def max_thread_product(alpha, beta) -> SkeinElement:
    pair = analyze_pair(alpha, beta)
    if abs(pair.n) < 2:
        raise NotMaxThread(alpha, beta, f"determinant {pair.n} has absolute value below 2")
    if not pair.is_maximal_thread:
        raise NotMaxThread(
            alpha, beta, f"d+ = {pair.d_plus}, d- = {pair.d_minus}, neither equals |n| = {abs(pair.n)}"
        )
    main = fg_main_terms_raw(pair.alpha_raw, pair.beta_raw)
    cascade = cascade_G(abs(pair.n), pair.cascade_sign, pair.maximal_direction)
    return main + cascade.eta_shift(1)


def _parallel(a: BasisKey, b: BasisKey) -> SkeinElement:
    return (
        SkeinElement.from_raw(a.mu.scaled(a.k + b.k))
        + SkeinElement.from_raw(a.mu.scaled(abs(a.k - b.k)))
    )


def _det2_both_simple(a: BasisKey, b: BasisKey) -> SkeinElement:
    return fg_main_terms(a, b) + SkeinElement.eta()


def _det2_threaded_family(a: BasisKey, b: BasisKey) -> SkeinElement:
    left_threaded = a.k > 1
    threaded, simple = (a, b) if left_threaded else (b, a)
    m = det2_standardize(simple.mu, threaded.mu)
    standard = p_n_closed(threaded.k)
    if not left_threaded:
        standard = standard.bar()
    logger.debug(f"Transporting {a} * {b} through {m}")
    return standard.sl2_apply(m.inverse())


def _max_thread(a: BasisKey, b: BasisKey) -> SkeinElement:
    return max_thread_product(a.mu, b.mu)


def _unsupported(a: BasisKey, b: BasisKey) -> SkeinElement:
    if eta_bound(a.vector, b.vector) == 0:
        return fg_main_terms(a, b)
    det = det_pair(a.vector, b.vector)
    reason = f"det {det} is outside the closed-form regimes"
    if a.k == 1 and b.k == 1:
        pair = analyze_pair(a.mu, b.mu)
        reason += f" (d+ = {pair.d_plus}, d- = {pair.d_minus}, not maximal-thread)"
    logger.warning(f"Unsupported product {a} * {b}: {reason}")
    raise UnsupportedProduct(a, b, ProductCase.UNSUPPORTED.value, reason=reason)


_RULES: Dict[ProductCase, Callable[[BasisKey, BasisKey], SkeinElement]] = {
    ProductCase.PARALLEL: _parallel,
    ProductCase.DET1: fg_main_terms,
    ProductCase.DET2_BOTH_SIMPLE: _det2_both_simple,
    ProductCase.DET2_WITH_COMPOSITE: fg_main_terms,
    ProductCase.DET2_THREADED_FAMILY: _det2_threaded_family,
    ProductCase.MAX_THREAD: _max_thread,
    ProductCase.UNSUPPORTED: _unsupported,
}


@lru_cache(maxsize=65536)
def multiply_basis(
    a: BasisKey,
    b: BasisKey,
    allowed: Optional[FrozenSet[ProductCase]] = None,
) -> SkeinElement:
    """Product of two basis keys, optionally restricted to some rules"""
    if a.is_unit:
        return SkeinElement.basis(b)
    if b.is_unit:
        return SkeinElement.basis(a)

    case = classify(a, b)
    if allowed is not None and case not in allowed:
        raise UnsupportedProduct(a, b, case.value, reason=f"the {case.value} rule is not admitted here")
    logger.debug(f"{a} * {b} dispatched to {case.value}")
    return _RULES[case](a, b)


def multiply(
    a: SkeinElement,
    b: SkeinElement,
    allowed: Optional[FrozenSet[ProductCase]] = None,
) -> SkeinElement:
    """Bilinear product; eta degrees add and coefficients commute past curves"""
    if allowed is not None:
        allowed = frozenset(allowed)
    total = SkeinElement.zero()
    for (da, ka), ca in a.terms.items():
        for (db, kb), cb in b.terms.items():
            product = multiply_basis(ka, kb, allowed)
            total = total + product.scale(ca * cb).eta_shift(da + db)
    return total


def multiply_raw(u, v) -> SkeinElement:
    """(u)_T * (v)_T for raw integer vectors"""
    return multiply(SkeinElement.from_raw(u), SkeinElement.from_raw(v))
