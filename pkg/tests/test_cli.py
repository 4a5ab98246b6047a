import json

import pytest
from click.testing import CliRunner

from algebra.skein import SkeinElement
from config.settings import settings as app_settings
from engine.product import p_n_closed
from main import EXIT_SYNTAX, EXIT_UNSUPPORTED, EXIT_VERIFICATION, cli


@pytest.fixture
def runner():
    return CliRunner()


def test_mul_prints_product(runner):
    result = runner.invoke(cli, ["mul", "(3,6)*(1,0)"])
    assert result.exit_code == 0
    assert result.output.strip() == "t^-6*(4,6) + t^6*(2,6) + (t^4 + 1 + t^-4 + (2,4))*eta"


def test_mul_latex(runner):
    result = runner.invoke(cli, ["mul", "(1,2)*(1,0)", "--format", "latex"])
    assert result.exit_code == 0
    assert result.output.strip() == r"t^{-2}(2,2)_T + t^{2}(0,2)_T + \eta"


def test_mul_json_out(runner, tmp_path):
    path = tmp_path / "p2.json"
    result = runner.invoke(cli, ["mul", "(2,4)*(1,0)", "--json-out", str(path)])
    assert result.exit_code == 0
    payload = json.loads(path.read_text())
    assert payload["expression"] == "(2,4)*(1,0)"
    assert SkeinElement.from_json(payload) == p_n_closed(2)


def test_mul_syntax_error(runner):
    result = runner.invoke(cli, ["mul", "(1,2"])
    assert result.exit_code == EXIT_SYNTAX
    assert "offset 4" in result.output
    assert "^" in result.output


def test_mul_semantic_error(runner):
    result = runner.invoke(cli, ["mul", "eta^-1*(1,0)"])
    assert result.exit_code == EXIT_SYNTAX


def test_mul_unsupported_emits_diagnostic(runner):
    result = runner.invoke(cli, ["mul", "(2,3)*(4,1)"])
    assert result.exit_code == EXIT_UNSUPPORTED
    diagnostic = json.loads(result.output.strip().splitlines()[-1])
    assert diagnostic["error"] == "unsupported_product"
    assert diagnostic["classification"] == "unsupported"


def test_mul_reads_stdin(runner):
    result = runner.invoke(cli, ["mul", "-"], input="(1,2)*(1,0)\n(1,0)*(0,1)\n")
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert lines[0] == "t^-2*(2,2) + t^2*(0,2) + eta"
    assert lines[1] == "t^-1*(1,-1) + t*(1,1)"


def test_mul_stdin_unsupported_line(runner):
    result = runner.invoke(cli, ["mul", "-"], input="(1,0)*(0,1)\n(2,3)*(4,1)\n")
    assert result.exit_code == EXIT_UNSUPPORTED
    lines = result.output.strip().splitlines()
    assert "t^-1*(1,-1) + t*(1,1)" in lines
    diagnostic = json.loads(lines[-1])
    assert diagnostic["line"] == 2
    assert diagnostic["error"] == "unsupported_product"


def test_mul_stdin_syntax_error_outranks_unsupported(runner):
    result = runner.invoke(cli, ["mul", "-"], input="(2,3)*(4,1)\n(1,2\n")
    assert result.exit_code == EXIT_SYNTAX
    assert "Line 2:" in result.output
    assert '"line": 1' in result.output


def test_mul_deep_nesting_is_a_syntax_error(runner):
    result = runner.invoke(cli, ["mul", "(" * 400 + "1" + ")" * 400])
    assert result.exit_code == EXIT_SYNTAX
    assert "Nesting deeper than" in result.output


def test_pn_with_oracle(runner):
    result = runner.invoke(cli, ["pn", "2", "--oracle"])
    assert result.exit_code == 0
    assert "t^-4*(3,4) + t^4*(1,4) + (1,2)*eta" in result.output
    assert "recurrence" in result.output


def test_pn_rejects_zero(runner):
    result = runner.invoke(cli, ["pn", "0"])
    assert result.exit_code == 2


def test_classify_json(runner):
    result = runner.invoke(cli, ["classify", "(4,3)*(0,1)", "--json"])
    assert result.exit_code == 0
    info = json.loads(result.output)
    assert info["classification"] == "max_thread"
    assert info["det"] == 4
    assert info["maximal_summand"] == "plus"
    assert info["cascade_sign"] == 1
    assert info["normal_form_a"] in (1, 3)


def test_classify_scalar_and_threaded(runner):
    result = runner.invoke(cli, ["classify", "(0,0)*(1,0)", "--json"])
    assert json.loads(result.output)["classification"] == "scalar"
    result = runner.invoke(cli, ["classify", "(3,6)*(1,0)", "--json"])
    assert json.loads(result.output)["classification"] == "det2_threaded_family"


def test_classify_needs_two_curves(runner):
    result = runner.invoke(cli, ["classify", "(1,0)"])
    assert result.exit_code == EXIT_SYNTAX


def test_cascade_with_negative_sign(runner):
    result = runner.invoke(cli, ["cascade", "4", "-1"])
    assert result.exit_code == 0
    assert result.output.strip() == "t^2 + t^-2 + t^-2*(2,0)"


def test_verify_appendix_passes(runner):
    result = runner.invoke(cli, ["verify", "--suite", "appendix", "--workers", "2"])
    assert result.exit_code == 0
    assert "Verification passed" in result.output


def test_verify_reports_corrupted_fixture(runner, tmp_path):
    path = tmp_path / "fixtures.yaml"
    path.write_text(
        "fixtures:\n"
        "  - name: bad P1\n"
        "    kind: pn\n"
        "    source: hand edited\n"
        "    n: 1\n"
        "    expected:\n"
        "      - {key: {curve: [2, 2]}, coeff: {-2: 1}}\n"
        "      - {key: {curve: [0, 2]}, coeff: {2: 1}}\n"
        "      - {key: {unit: true}, coeff: 2, eta: 1}\n"
    )
    report = tmp_path / "report.json"
    result = runner.invoke(
        cli, ["verify", "--suite", "appendix", "--fixtures", str(path), "--json-out", str(report)]
    )
    assert result.exit_code == EXIT_VERIFICATION
    assert "expected 2, got 1" in result.output
    assert report.exists()


def test_verify_flags_do_not_leak_into_settings(runner, tmp_path):
    report = tmp_path / "report.json"
    seed_before = app_settings.random_seed
    result = runner.invoke(cli, ["verify", "--suite", "appendix", "--seed", "7", "--json-out", str(report)])
    assert result.exit_code == 0
    assert json.loads(report.read_text())["seed"] == 7
    assert app_settings.random_seed == seed_before


def test_validate_config(runner):
    result = runner.invoke(cli, ["validate-config"])
    assert "Configuration Status" in result.output
