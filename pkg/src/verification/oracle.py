"""Independent engines and golden fixtures used to check the closed forms.

Nothing here calls p_n_closed or the threaded rules: the recurrence oracle
carries its own two-rule multiplier and the decomposition method only
admits the stepwise rules of the engine.
"""

import time
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np
import structlog
import yaml
from pydantic import ValidationError

from algebra.chebyshev import power_basis
from algebra.curves import canonicalize
from algebra.laurent import LaurentPoly, t_power
from algebra.skein import BasisKey, SkeinElement, UNIT
from core.errors import FixtureError, SkeinEngineError, UnsupportedProduct
from core.models import CheckStatus, Fixture, FixtureKind, FixtureResult, Normalization
from engine.product import STEPWISE_CASES, epsilon_n, multiply, multiply_raw, p_n_closed


logger = structlog.get_logger()

DEFAULT_FIXTURES = Path(__file__).parent / "fixtures.yaml"

_DENOMINATORS = {
    "t^2 - t^-2": 1,
    "-t^2 + t^-2": -1,
}


# -- dense Laurent multiplication ------------------------------------------

def dense_multiply(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Convolution over the exponent windows of a and b with object arrays.

    Shares no code with the sparse product; used to cross-check it.
    """
    if a.is_zero() or b.is_zero():
        return LaurentPoly.zero()
    low_a, low_b = a.min_exponent, b.min_exponent
    dense_a = np.zeros(a.max_exponent - low_a + 1, dtype=object)
    dense_b = np.zeros(b.max_exponent - low_b + 1, dtype=object)
    for exp, coeff in a.items():
        dense_a[exp - low_a] = coeff
    for exp, coeff in b.items():
        dense_b[exp - low_b] = coeff
    product = np.convolve(dense_a, dense_b)
    return LaurentPoly((low_a + low_b + i, int(c)) for i, c in enumerate(product) if c)


# -- recurrence oracle -----------------------------------------------------

def _recurrence_step(a: BasisKey, b: BasisKey) -> SkeinElement:
    if a.is_unit:
        return SkeinElement.basis(b)
    if b.is_unit:
        return SkeinElement.basis(a)
    if a.mu == b.mu:
        total = a.mu.scaled(a.k + b.k)
        difference = a.mu.scaled(abs(a.k - b.k))
        return SkeinElement.from_raw(total) + SkeinElement.from_raw(difference)

    (p, q), (r, s) = a.vector, b.vector
    det = p * s - q * r
    if abs(det) not in (1, 2):
        raise UnsupportedProduct(a, b, "recurrence", reason=f"det {det} needs a threaded rule")
    result = (
        SkeinElement.from_raw((p + r, q + s)).scale(t_power(det))
        + SkeinElement.from_raw((p - r, q - s)).scale(t_power(-det))
    )
    if abs(det) == 2 and a.k == 1 and b.k == 1:
        result = result + SkeinElement.eta()
    return result


def _recurrence_multiply(x: SkeinElement, y: SkeinElement) -> SkeinElement:
    total = SkeinElement.zero()
    for (dx, kx), cx in x.terms.items():
        for (dy, ky), cy in y.terms.items():
            total = total + _recurrence_step(kx, ky).scale(cx * cy).eta_shift(dx + dy)
    return total


def brute_force_pn(n: int) -> SkeinElement:
    """P_n from P_n = (1,2) * P_{n-1} - P_{n-2}, P_0 = 2 (1,0)"""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    generator = SkeinElement.from_raw((1, 2))
    previous = SkeinElement.from_raw((1, 0)).scale(2)
    current = _recurrence_multiply(generator, SkeinElement.from_raw((1, 0)))
    for _ in range(n - 1):
        previous, current = current, _recurrence_multiply(generator, current) - previous
    return current


# -- decomposition method --------------------------------------------------

def _expand(mu, k: int, other: SkeinElement, threaded_on_left: bool) -> SkeinElement:
    """T_k(mu) times other by the power basis of T_k, folding toward other"""
    step = SkeinElement.from_raw(mu.as_tuple())
    current = other
    total = SkeinElement.zero()
    coefficients = power_basis(k)
    for degree in range(max(coefficients) + 1):
        if degree:
            if threaded_on_left:
                current = multiply(step, current, STEPWISE_CASES)
            else:
                current = multiply(current, step, STEPWISE_CASES)
        if degree in coefficients:
            total = total + current.scale(coefficients[degree])
    return total


def decompose_multiply(a, b) -> SkeinElement:
    """(a)_T * (b)_T with the threaded factor expanded as a polynomial"""
    mu_a, k_a = canonicalize(a)
    mu_b, k_b = canonicalize(b)
    if k_a == 0 or k_b == 0:
        return multiply_raw(a, b)
    if k_b == 1:
        return _expand(mu_a, k_a, SkeinElement.from_raw(b), threaded_on_left=True)
    if k_a == 1:
        return _expand(mu_b, k_b, SkeinElement.from_raw(a), threaded_on_left=False)
    raise UnsupportedProduct(
        BasisKey(mu_a, k_a), BasisKey(mu_b, k_b), "decomposition",
        reason="both factors are threaded",
    )


# -- fixtures --------------------------------------------------------------

def load_fixtures(path: Optional[Path] = None) -> List[Fixture]:
    """Load and validate the fixture file"""
    path = Path(path) if path else DEFAULT_FIXTURES
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh) or {}
    except (OSError, yaml.YAMLError) as e:
        raise FixtureError(f"Cannot read fixtures from {path}: {e}") from e

    entries = raw.get("fixtures", []) if isinstance(raw, dict) else []
    fixtures = []
    for index, entry in enumerate(entries):
        try:
            fixtures.append(Fixture(**entry))
        except (ValidationError, TypeError) as e:
            raise FixtureError(f"Fixture #{index} in {path} is invalid: {e}") from e
    logger.info(f"Loaded {len(fixtures)} fixtures from {path}")
    return fixtures


def parse_coefficient(data: Any) -> LaurentPoly:
    """A Laurent map, or {numerator, denominator} with an exact quotient"""
    if isinstance(data, int):
        return LaurentPoly.constant(data)
    if not isinstance(data, Mapping):
        raise FixtureError(f"Unreadable coefficient {data!r}")
    if "numerator" not in data:
        return LaurentPoly((int(e), int(c)) for e, c in data.items())
    denominator = str(data.get("denominator", "")).strip()
    if denominator not in _DENOMINATORS:
        raise FixtureError(f"Unsupported denominator {denominator!r}")
    numerator = parse_coefficient(data["numerator"]) * _DENOMINATORS[denominator]
    try:
        return numerator.divide_by_t2_minus_tm2()
    except SkeinEngineError as e:
        raise FixtureError(str(e)) from e


def parse_key(data: Mapping[str, Any], normalization: Normalization) -> SkeinElement:
    """One basis label as an element; T(0,0) depends on the normalization"""
    if data.get("unit"):
        return SkeinElement.basis(UNIT)
    if "mu" in data:
        return SkeinElement.basis(BasisKey.threaded(tuple(data["mu"]), int(data["k"])))
    if "curve" in data:
        p, q = data["curve"]
        if (p, q) == (0, 0) and normalization == Normalization.TPRIME:
            return SkeinElement.basis(UNIT)
        return SkeinElement.from_raw((int(p), int(q)))
    raise FixtureError(f"Unreadable basis key {dict(data)!r}")


def expected_element(fixture: Fixture) -> SkeinElement:
    total = SkeinElement.zero()
    for term in fixture.expected:
        try:
            key = parse_key(term["key"], fixture.normalization)
            coeff = parse_coefficient(term["coeff"])
        except (KeyError, TypeError, ValueError) as e:
            raise FixtureError(f"Fixture {fixture.name}: malformed term {term!r}") from e
        total = total + key.scale(coeff).eta_shift(int(term.get("eta", 0)))
    return total


def term_diff(expected: SkeinElement, actual: SkeinElement) -> List[str]:
    """One line per (eta degree, key) whose coefficients differ"""
    keys = set(expected.terms) | set(actual.terms)
    lines = []
    for degree, key in sorted(keys, key=lambda dk: (dk[0], dk[1].sort_key())):
        want = expected.coefficient(key, degree)
        got = actual.coefficient(key, degree)
        if want != got:
            lines.append(f"eta^{degree} * {key}: expected {want}, got {got}")
    return lines


def _engines(fixture: Fixture) -> List[Tuple[str, Any]]:
    if fixture.kind == FixtureKind.PN:
        n = fixture.n
        engines = [("closed", lambda: p_n_closed(n))]
        if fixture.oracle:
            engines.append(("recurrence", lambda: brute_force_pn(n)))
            engines.append(("decomposition", lambda: decompose_multiply((n, 2 * n), (1, 0))))
        return engines
    if fixture.kind == FixtureKind.EPSILON:
        n = fixture.n
        engines = [("closed", lambda: epsilon_n(n))]
        if fixture.oracle:
            engines.append(("recurrence", lambda: brute_force_pn(n).correction()))
        return engines
    left, right = (tuple(v) for v in fixture.lhs)
    engines = [("closed", lambda: multiply_raw(left, right))]
    if fixture.oracle:
        engines.append(("decomposition", lambda: decompose_multiply(left, right)))
    return engines


def evaluate_fixture(fixture: Fixture) -> List[FixtureResult]:
    """Run every engine that applies to the fixture against its transcript"""
    try:
        expected = expected_element(fixture)
    except FixtureError as e:
        return [FixtureResult(name=fixture.name, engine="-", status=CheckStatus.ERROR, error_message=str(e))]

    results = []
    for engine, compute in _engines(fixture):
        start_time = time.time()
        try:
            actual = compute()
        except SkeinEngineError as e:
            logger.error(f"Fixture {fixture.name} [{engine}] raised: {e}")
            results.append(FixtureResult(
                name=fixture.name,
                engine=engine,
                status=CheckStatus.ERROR,
                error_message=str(e),
                processing_time=time.time() - start_time,
            ))
            continue

        diff = term_diff(expected, actual)
        if diff:
            logger.error(f"Fixture {fixture.name} [{engine}] differs in {len(diff)} terms")
        results.append(FixtureResult(
            name=fixture.name,
            engine=engine,
            status=CheckStatus.FAILED if diff else CheckStatus.PASSED,
            expected=expected.to_json() if diff else None,
            actual=actual.to_json() if diff else None,
            diff=diff,
            processing_time=time.time() - start_time,
        ))
    return results


def fixture_elements(fixtures: List[Fixture]) -> Dict[str, SkeinElement]:
    """Expected value of every fixture by name"""
    return {fixture.name: expected_element(fixture) for fixture in fixtures}
