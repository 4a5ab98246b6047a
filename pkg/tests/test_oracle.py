import pytest

from algebra.laurent import LaurentPoly
from algebra.skein import SkeinElement
from core.errors import FixtureError, UnsupportedProduct
from core.models import CheckStatus, Fixture, FixtureKind, Normalization
from engine.product import epsilon_n, multiply_raw, p_n_closed
from verification.oracle import (
    DEFAULT_FIXTURES,
    brute_force_pn,
    decompose_multiply,
    dense_multiply,
    evaluate_fixture,
    expected_element,
    fixture_elements,
    load_fixtures,
    parse_coefficient,
    parse_key,
    term_diff,
)


@pytest.fixture(scope="module")
def fixtures():
    return load_fixtures(DEFAULT_FIXTURES)


def test_packaged_fixtures_load(fixtures):
    names = [f.name for f in fixtures]
    assert names[:5] == ["P1", "P2", "P3", "P4", "P5"]
    assert {"epsilon3", "epsilon4", "epsilon5"} <= set(names)
    assert sum(1 for f in fixtures if f.normalization == Normalization.TPRIME) == 3


def test_packaged_fixtures_cite_a_location(fixtures):
    sections = ("Base Case Calculations, ", "Detailed Calculations, Calculation for n=",
                "The General Formula for P_n, base case check ", "Maximal Thread Results and Comparison, Example ")
    for fixture in fixtures:
        assert fixture.source.startswith(sections), fixture.name


def test_every_packaged_fixture_passes(fixtures):
    for fixture in fixtures:
        for result in evaluate_fixture(fixture):
            assert result.passed, (fixture.name, result.engine, result.diff, result.error_message)


def test_oracle_fixtures_run_every_engine(fixtures):
    p3 = next(f for f in fixtures if f.name == "P3")
    assert [r.engine for r in evaluate_fixture(p3)] == ["closed", "recurrence", "decomposition"]


@pytest.mark.parametrize("n", range(1, 13))
def test_recurrence_oracle_agrees_with_closed_form(n):
    assert brute_force_pn(n) == p_n_closed(n)


@pytest.mark.parametrize("n", range(1, 9))
def test_decomposition_agrees_with_closed_form(n):
    assert decompose_multiply((n, 2 * n), (1, 0)) == p_n_closed(n)
    assert decompose_multiply((1, 0), (n, 2 * n)) == p_n_closed(n).bar()


def test_epsilon_is_correction_of_recurrence():
    for n in range(1, 10):
        assert brute_force_pn(n).correction() == epsilon_n(n)


def test_decomposition_on_a_transported_pair():
    assert decompose_multiply((3, 3), (3, 1)) == multiply_raw((3, 3), (3, 1))


def test_decomposition_refuses_two_threaded_factors():
    with pytest.raises(UnsupportedProduct):
        decompose_multiply((2, 4), (2, 0))


def test_decomposition_refuses_the_cascade_regime():
    with pytest.raises(UnsupportedProduct):
        decompose_multiply((4, 3), (0, 1))


def test_dense_multiply():
    a = LaurentPoly({2: 1, -2: 1})
    assert dense_multiply(a, a) == LaurentPoly({4: 1, 0: 2, -4: 1})
    assert dense_multiply(a, LaurentPoly.zero()).is_zero()


def test_parse_coefficient_forms():
    assert parse_coefficient(3) == 3
    assert parse_coefficient({4: 1, -4: 1}) == LaurentPoly({4: 1, -4: 1})
    quotient = parse_coefficient({"numerator": {4: -1, -4: 1}, "denominator": "-t^2 + t^-2"})
    assert quotient == LaurentPoly({2: 1, -2: 1})


def test_parse_coefficient_rejects_bad_input():
    with pytest.raises(FixtureError):
        parse_coefficient({"numerator": {4: 1}, "denominator": "t^2 - t^-2"})
    with pytest.raises(FixtureError):
        parse_coefficient({"numerator": {4: 1, -4: -1}, "denominator": "t^3"})
    with pytest.raises(FixtureError):
        parse_coefficient("t^2")


def test_origin_key_depends_on_normalization():
    assert parse_key({"curve": [0, 0]}, Normalization.T0) == SkeinElement.scalar(2)
    assert parse_key({"curve": [0, 0]}, Normalization.TPRIME) == SkeinElement.scalar(1)
    assert parse_key({"mu": [1, 2], "k": 2}, Normalization.T0) == SkeinElement.from_raw((2, 4))


def test_term_diff_lists_differing_terms():
    expected = p_n_closed(2)
    actual = expected + SkeinElement.eta()
    diff = term_diff(expected, actual)
    assert diff == ["eta^1 * 1: expected 0, got 1"]
    assert term_diff(expected, expected) == []


def test_corrupted_fixture_fails_with_diff():
    fixture = Fixture(
        name="bad P1",
        kind=FixtureKind.PN,
        source="hand edited",
        n=1,
        expected=[
            {"key": {"curve": [2, 2]}, "coeff": {-2: 1}},
            {"key": {"curve": [0, 2]}, "coeff": {2: 1}},
            {"key": {"unit": True}, "coeff": 2, "eta": 1},
        ],
    )
    (result,) = evaluate_fixture(fixture)
    assert result.status == CheckStatus.FAILED
    assert result.diff == ["eta^1 * 1: expected 2, got 1"]


def test_malformed_fixture_is_an_error_result():
    fixture = Fixture(
        name="broken",
        kind=FixtureKind.PN,
        source="hand edited",
        n=1,
        expected=[{"coeff": 1}],
    )
    (result,) = evaluate_fixture(fixture)
    assert result.status == CheckStatus.ERROR


def test_load_fixtures_rejects_invalid_entries(tmp_path):
    path = tmp_path / "fixtures.yaml"
    path.write_text("fixtures:\n  - name: x\n    kind: nonsense\n    source: s\n    expected: []\n")
    with pytest.raises(FixtureError):
        load_fixtures(path)


def test_load_fixtures_missing_file(tmp_path):
    with pytest.raises(FixtureError):
        load_fixtures(tmp_path / "missing.yaml")


def test_fixture_elements(fixtures):
    elements = fixture_elements(fixtures)
    assert elements["P2"] == expected_element(next(f for f in fixtures if f.name == "P2"))
    assert elements["P2"] == p_n_closed(2)
