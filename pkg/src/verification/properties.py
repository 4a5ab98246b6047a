"""Randomized and exhaustive property suites over the whole engine.

Every suite takes a seeded random generator and a size and returns a
PropertyResult; counts are exact so acceptance sizes are reproducible.
"""

import random
from math import gcd
from typing import Callable, List, Tuple

import structlog

from algebra.chebyshev import (
    X_LAURENT,
    big_L,
    big_L_via_S,
    cheb_S,
    cheb_S_laurent,
    cheb_S_quotient,
    cheb_T,
    dictionary_numerator,
)
from algebra.curves import (
    SL2Matrix,
    analyze_pair,
    canonicalize,
    det2_standardize,
    det_pair,
    maximal_thread_pair,
    sl2_apply_curve,
    sl2_normal_form,
    to_first_basis_vector,
)
from algebra.laurent import LaurentPoly, t_power
from algebra.skein import BasisKey, SkeinElement, UNIT
from core.errors import UnsupportedProduct
from core.models import CheckStatus, ProductCase, PropertyResult
from engine.product import (
    STEPWISE_CASES,
    cascade_G,
    classify,
    eta_bound,
    max_thread_product,
    multiply,
    p_n_closed,
)
from verification.oracle import brute_force_pn, decompose_multiply, dense_multiply


logger = structlog.get_logger()

MAX_REPORTED_FAILURES = 20

# sampling for the slower cross-checks
DENSE_CHECK_EVERY = 10
POWER_BASIS_CHECK_MAX = 50

Suite = Callable[[random.Random, int], PropertyResult]


class _Tally:
    """Collects case counts and the first few failure messages"""

    def __init__(self, name: str):
        self.name = name
        self.cases = 0
        self.skipped = 0
        self.failures: List[str] = []
        self.failure_count = 0

    def check(self, condition: bool, message: str) -> None:
        self.cases += 1
        if not condition:
            self.failure_count += 1
            if len(self.failures) < MAX_REPORTED_FAILURES:
                self.failures.append(message)

    def result(self) -> PropertyResult:
        if self.failure_count:
            logger.warning(f"Property {self.name}: {self.failure_count} of {self.cases} checks failed")
        return PropertyResult(
            name=self.name,
            status=CheckStatus.FAILED if self.failure_count else CheckStatus.PASSED,
            cases=self.cases,
            skipped=self.skipped,
            failures=self.failures,
        )


# -- generators ------------------------------------------------------------

def random_laurent(rng: random.Random, max_terms: int = 6, exp_range: int = 50,
                   coeff_range: int = 10 ** 6) -> LaurentPoly:
    return LaurentPoly(
        (rng.randint(-exp_range, exp_range), rng.randint(-coeff_range, coeff_range))
        for _ in range(rng.randint(0, max_terms))
    )


def random_primitive(rng: random.Random, bound: int) -> Tuple[int, int]:
    while True:
        p, q = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if gcd(p, q) == 1:
            return p, q


def random_sl2(rng: random.Random, length: int = 4, max_power: int = 2) -> SL2Matrix:
    """Word in the upper and lower shears"""
    m = SL2Matrix.identity()
    for _ in range(length):
        k = rng.randint(-max_power, max_power)
        generator = SL2Matrix.shear(k) if rng.random() < 0.5 else SL2Matrix.lower_shear(k)
        m = generator @ m
    return m


def random_det2_pair(rng: random.Random, bound: int) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    """Primitive (u, v) with |det(u, v)| = 2"""
    u = random_primitive(rng, bound)
    w = to_first_basis_vector(u).inverse().apply((rng.randint(-3, 3), 1))
    sign = rng.choice((1, -1))
    v = (sign * u[0] + 2 * w[0], sign * u[1] + 2 * w[1])
    if rng.random() < 0.5:
        v = (-v[0], -v[1])
    return u, v


def random_supported_keys(rng: random.Random) -> Tuple[BasisKey, BasisKey]:
    """A pair of basis keys drawn from the regimes with closed forms"""
    u = random_primitive(rng, 12)
    kind = rng.randrange(5)
    if kind == 0:
        v = maximal_thread_pair(u, rng.randint(2, 10) * rng.choice((1, -1)),
                                rng.choice((1, -1)), rng.randint(-2, 2))
        pair = (u, 1), (v, 1)
    elif kind == 1:
        w = to_first_basis_vector(u).inverse().apply((rng.randint(-4, 4), rng.choice((1, -1))))
        pair = (u, 1), (w, 1)
    elif kind == 2:
        left, right = random_det2_pair(rng, 12)
        k = rng.randint(1, 6)
        pair = ((left, 1), (right, k)) if rng.random() < 0.5 else ((right, k), (left, 1))
    elif kind == 3:
        pair = (u, rng.randint(1, 6)), (u, rng.randint(1, 6))
    else:
        pair = (u, rng.randint(1, 5)), ((rng.choice((1, -1)), 0), rng.randint(1, 5))
    return tuple(BasisKey.threaded(canonicalize(v)[0], k) for v, k in pair)


def _element(key: BasisKey) -> SkeinElement:
    return SkeinElement.basis(key)


# -- suites ----------------------------------------------------------------

def check_ring_axioms(rng: random.Random, size: int) -> PropertyResult:
    tally = _Tally("ring_axioms")
    for index in range(size):
        a, b, c = random_laurent(rng), random_laurent(rng), random_laurent(rng)
        tally.check((a * b) * c == a * (b * c), f"associativity fails for {a!r}, {b!r}, {c!r}")
        tally.check(a * b == b * a, f"commutativity fails for {a!r}, {b!r}")
        tally.check(a * (b + c) == a * b + a * c, f"distributivity fails for {a!r}, {b!r}, {c!r}")
        tally.check((a + (-a)).is_zero() and not (a + (-a)).terms, f"a - a is not empty for {a!r}")
        tally.check(all((a * b).terms.values()), f"zero coefficient stored in {a!r} * {b!r}")
        if index % DENSE_CHECK_EVERY == 0:
            tally.check(dense_multiply(a, b) == a * b, f"dense and sparse products differ for {a!r}, {b!r}")
        tally.check(
            (a * b + c).evaluate(2) == a.evaluate(2) * b.evaluate(2) + c.evaluate(2),
            f"evaluation at t=2 disagrees for {a!r}, {b!r}, {c!r}",
        )
    return tally.result()


def check_chebyshev_products(rng: random.Random, size: int) -> PropertyResult:
    """T_1 T_m for m <= size and T_n T_m for n, m <= 60"""
    tally = _Tally("chebyshev_products")
    for m in range(1, size + 1):
        tally.check(cheb_T(1) * cheb_T(m) == cheb_T(m + 1) + cheb_T(m - 1), f"T_1 T_{m}")
    for n in range(61):
        for m in range(61):
            tally.check(cheb_T(n) * cheb_T(m) == cheb_T(n + m) + cheb_T(abs(n - m)), f"T_{n} T_{m}")
    return tally.result()


def check_coefficient_dictionary(rng: random.Random, size: int) -> PropertyResult:
    tally = _Tally("coefficient_dictionary")
    difference = LaurentPoly({2: 1, -2: -1})
    for j in range(size + 1):
        s_j = cheb_S_laurent(j)
        tally.check(s_j * difference == dictionary_numerator(j), f"S_{j} (t^2 - t^-2)")
        tally.check(cheb_S_quotient(j) == s_j, f"S_{j} by exact division")
        if j <= POWER_BASIS_CHECK_MAX:
            tally.check(cheb_S(j).evaluate(X_LAURENT) == s_j, f"S_{j} by power basis")
    return tally.result()


def check_big_l(rng: random.Random, size: int) -> PropertyResult:
    tally = _Tally("big_l")
    for k in range(size + 1):
        tally.check(big_L(k) == big_L_via_S(k), f"L_{k} against the S sum")
    return tally.result()


def check_parity(rng: random.Random, size: int) -> PropertyResult:
    tally = _Tally("parity")
    for n in range(1, size + 1):
        tally.check(gcd(n + 1, 2 * n) == (1 if n % 2 == 0 else 2), f"gcd(n+1, 2n) for n={n}")
        tally.check(det_pair((1, 2), (n + 1, 2 * n)) == -2, f"det((1,2),(n+1,2n)) for n={n}")
        tally.check(det_pair((1, 2), (n - 1, 2 * n)) == 2, f"det((1,2),(n-1,2n)) for n={n}")
    return tally.result()


def check_regime(rng: random.Random, size: int) -> PropertyResult:
    """Normal form and the three characterizations of the maximal-thread regime"""
    tally = _Tally("regime")
    # size uniform pairs with entries up to 200, then constructed maximal-thread pairs on top
    pairs = [(random_primitive(rng, 200), random_primitive(rng, 200)) for _ in range(size)]
    for _ in range(size // 2):
        u = random_primitive(rng, 200)
        pairs.append((u, maximal_thread_pair(u, rng.randint(2, 60), rng.choice((1, -1)), rng.randint(-3, 3))))
    for u, v in pairs:
        n = det_pair(u, v)
        if abs(n) < 2:
            tally.skipped += 1
            continue
        if n < 0:
            v = (-v[0], -v[1])
            n = -n

        m, a = sl2_normal_form(u, v)
        label = f"u={u}, v={v}"
        tally.check(m.apply(u) == (1, 0) and m.apply(v) == (a, n), f"normal form images for {label}")
        tally.check(0 <= a < n and gcd(a, n) == 1, f"normal form range for {label}")

        pair = analyze_pair(u, v)
        tally.check(pair.d_plus == gcd(1 + a, n), f"d+ two ways for {label}")
        tally.check(pair.d_minus == gcd(1 - a, n), f"d- two ways for {label}")

        by_degrees = max(pair.d_plus, pair.d_minus) == n and min(pair.d_plus, pair.d_minus) in (1, 2)
        by_normal_form = a % n in (1 % n, (n - 1) % n)
        by_residues = all((x - y) % n == 0 for x, y in zip(u, v)) or all((x + y) % n == 0 for x, y in zip(u, v))
        tally.check(by_degrees == by_normal_form == by_residues, f"characterizations disagree for {label}")
        tally.check(pair.is_maximal_thread == by_residues, f"maximal flag for {label}")
        if by_degrees:
            tally.check(min(pair.d_plus, pair.d_minus) == gcd(n, 2), f"co-thread degree for {label}")
    return tally.result()


def check_sl2_action(rng: random.Random, size: int) -> PropertyResult:
    tally = _Tally("sl2_action")
    for _ in range(size):
        m1, m2 = random_sl2(rng), random_sl2(rng)
        u = (rng.randint(-50, 50), rng.randint(-50, 50))
        v = (rng.randint(-50, 50), rng.randint(-50, 50))
        image_u, image_v = m1.apply(u), m1.apply(v)
        tally.check(det_pair(image_u, image_v) == det_pair(u, v), f"det not preserved by {m1}")
        tally.check(gcd(*image_u) == gcd(*u), f"gcd of {u} not preserved by {m1}")
        tally.check((m2 @ m1).apply(u) == m2.apply(m1.apply(u)), f"composition on {u}")
        tally.check(m1.inverse().apply(image_u) == u, f"inverse of {m1}")

        key = BasisKey.threaded(canonicalize(random_primitive(rng, 20))[0], rng.randint(1, 4))
        element = _element(key).scale(random_laurent(rng, 3, 8, 5)) + SkeinElement.eta()
        tally.check(
            element.sl2_apply(m1).sl2_apply(m2) == element.sl2_apply(m2 @ m1),
            f"relabelling does not compose for {key}",
        )
        tally.check(
            sl2_apply_curve(m1, key.mu).thread == 1,
            f"primitive {key.mu} lost primitivity under {m1}",
        )
    return tally.result()


def check_cascade_identity(rng: random.Random, size: int) -> PropertyResult:
    """mu G_n = t^eps G_{n-1} + t^-eps G_{n+1} - [n odd] t^(-eps n)"""
    tally = _Tally("cascade_identity")
    mu = (0, 1)
    generator = SkeinElement.from_raw(mu)
    parallel_only = frozenset({ProductCase.PARALLEL})
    for eps in (1, -1):
        for n in range(2, size + 1):
            left = multiply(generator, cascade_G(n, eps, mu), parallel_only)
            right = cascade_G(n - 1, eps, mu).scale(t_power(eps)) + cascade_G(n + 1, eps, mu).scale(t_power(-eps))
            if n % 2:
                right = right - SkeinElement.scalar(t_power(-eps * n))
            tally.check(left == right, f"cascade identity at n={n}, eps={eps}")
    return tally.result()


def check_recurrence(rng: random.Random, size: int) -> PropertyResult:
    """P_{n+1} = (1,2) P_n - P_{n-1} with stepwise rules, and where new eta appears"""
    tally = _Tally("recurrence")
    generator = SkeinElement.from_raw((1, 2))
    for n in range(2, size + 1):
        step = multiply(generator, p_n_closed(n), STEPWISE_CASES) - p_n_closed(n - 1)
        tally.check(step == p_n_closed(n + 1), f"recurrence at n={n}")

        created = multiply(generator, p_n_closed(n).main_part(), STEPWISE_CASES).correction()
        expected = SkeinElement.eta().scale(t_power(2 * n) + t_power(-2 * n)) if n % 2 == 0 else SkeinElement.zero()
        tally.check(created == expected, f"new eta terms at n={n}")
    return tally.result()


def check_cross_engine(rng: random.Random, size: int) -> PropertyResult:
    tally = _Tally("cross_engine")
    for n in range(1, size + 1):
        closed = p_n_closed(n)
        tally.check(closed == brute_force_pn(n), f"closed form against recurrence at n={n}")
        tally.check(closed == decompose_multiply((n, 2 * n), (1, 0)), f"closed form against decomposition at n={n}")
    return tally.result()


def _supported_products(rng: random.Random, size: int, tally: _Tally):
    produced = 0
    while produced < size:
        a, b = random_supported_keys(rng)
        try:
            product = multiply(_element(a), _element(b))
        except UnsupportedProduct:
            tally.skipped += 1
            continue
        produced += 1
        yield a, b, product


def check_eta_bound(rng: random.Random, size: int) -> PropertyResult:
    tally = _Tally("eta_bound")
    for a, b, product in _supported_products(rng, size, tally):
        bound = eta_bound(a.vector, b.vector)
        correction = product.correction()
        tally.check(correction.max_eta_degree <= bound, f"{a} * {b} exceeds eta bound {bound}")
        if bound == 0:
            tally.check(correction.is_zero(), f"{a} * {b} has eta terms below the bound rule")
    return tally.result()


def check_orientation(rng: random.Random, size: int) -> PropertyResult:
    """Reversing a product applies t -> t^-1"""
    tally = _Tally("orientation")
    for a, b, product in _supported_products(rng, size, tally):
        tally.check(multiply(_element(b), _element(a)) == product.bar(), f"{b} * {a} against {a} * {b}")
    return tally.result()


def check_equivariance(rng: random.Random, size: int) -> PropertyResult:
    tally = _Tally("sl2_equivariance")
    produced = 0
    while produced < size:
        a, b = random_supported_keys(rng)
        if classify(a, b) not in (
            ProductCase.DET2_BOTH_SIMPLE, ProductCase.DET2_THREADED_FAMILY, ProductCase.MAX_THREAD
        ):
            continue
        m = random_sl2(rng, length=3, max_power=1)
        left, right = _element(a), _element(b)
        try:
            product = multiply(left, right)
            moved = multiply(left.sl2_apply(m), right.sl2_apply(m))
        except UnsupportedProduct:
            tally.skipped += 1
            continue
        produced += 1
        tally.check(product.sl2_apply(m) == moved, f"{a} * {b} under {m}")
    return tally.result()


def check_transport(rng: random.Random, size: int, max_thread: int = 6) -> PropertyResult:
    """det2_standardize postconditions and transported products against decomposition"""
    tally = _Tally("transport")
    standard = {(1, 0), (1, 2)}
    for _ in range(size):
        c1, c2 = random_det2_pair(rng, 30)
        m = det2_standardize(c1, c2)
        images = (sl2_apply_curve(m, c1).as_tuple(), sl2_apply_curve(m, c2).as_tuple())
        tally.check(images == ((1, 0), (1, 2)), f"standardization of {c1}, {c2} gives {images}")
        tally.check(set(images) == standard, f"standard pair for {c1}, {c2}")

        k = rng.randint(2, max_thread)
        threaded = (k * c2[0], k * c2[1])
        left, right = (threaded, c1) if rng.random() < 0.5 else (c1, threaded)
        engine = multiply(SkeinElement.from_raw(left), SkeinElement.from_raw(right))
        tally.check(engine == decompose_multiply(left, right), f"transported {left} * {right}")
    return tally.result()


def check_cascade_quotients(rng: random.Random, size: int) -> PropertyResult:
    """Every cascade coefficient is t^(sigma m) times S_j as an exact quotient"""
    tally = _Tally("cascade_quotients")
    for alpha, beta in (((4, 3), (0, 1)), ((2, 1), (3, 4)), ((11, 67), (3, 19))):
        pair = analyze_pair(alpha, beta)
        n, sigma, mu = abs(pair.n), pair.cascade_sign, pair.maximal_direction
        correction = max_thread_product(alpha, beta).eta_component(1)
        for j in range((n - 2) // 2 + 1):
            m = n - 2 - 2 * j
            key = UNIT if m == 0 else BasisKey(mu, m)
            expected = cheb_S_quotient(j).shift(sigma * m)
            tally.check(correction.coefficient(key) == expected, f"{alpha} * {beta} level j={j}")
        tally.check(len(correction) == (n - 2) // 2 + 1, f"{alpha} * {beta} has extra eta terms")
    return tally.result()


def check_eta_centrality(rng: random.Random, size: int) -> PropertyResult:
    tally = _Tally("eta_centrality")
    eta = SkeinElement.eta()
    for n in range(1, size + 1):
        element = p_n_closed(n)
        left, right = multiply(eta, element), multiply(element, eta)
        tally.check(left == right == element.eta_shift(1), f"eta against P_{n}")
        doubled = multiply(SkeinElement.scalar(2), element)
        tally.check(doubled == element.scale(2), f"2 * P_{n}")
    return tally.result()


def property_plan(settings) -> List[Tuple[str, Suite, int]]:
    """Suites in report order with their sizes"""
    def transport(rng: random.Random, size: int) -> PropertyResult:
        return check_transport(rng, size, settings.transport_max_thread)

    return [
        ("ring_axioms", check_ring_axioms, settings.ring_samples),
        ("chebyshev_products", check_chebyshev_products, settings.dictionary_max),
        ("coefficient_dictionary", check_coefficient_dictionary, settings.dictionary_max),
        ("big_l", check_big_l, settings.big_l_max),
        ("parity", check_parity, settings.parity_max),
        ("regime", check_regime, settings.regime_samples),
        ("sl2_action", check_sl2_action, settings.regime_samples),
        ("cascade_identity", check_cascade_identity, settings.cascade_max),
        ("recurrence", check_recurrence, settings.max_pn),
        ("cross_engine", check_cross_engine, settings.max_pn),
        ("eta_bound", check_eta_bound, settings.bound_samples),
        ("orientation", check_orientation, settings.bound_samples),
        ("sl2_equivariance", check_equivariance, settings.transport_samples),
        ("transport", transport, settings.transport_samples),
        ("cascade_quotients", check_cascade_quotients, 1),
        ("eta_centrality", check_eta_centrality, settings.max_pn),
    ]
