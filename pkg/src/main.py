import sys
import json
from copy import copy
from pathlib import Path
from typing import Optional
import click
import structlog
from rich.console import Console
from rich.progress import Progress, SpinnerColumn, TextColumn, BarColumn, TaskProgressColumn, TimeElapsedColumn
from rich.table import Table

# Add src to path for imports
sys.path.append(str(Path(__file__).parent))

from config.settings import settings as app_settings
from algebra.curves import analyze_pair, canonicalize, det_pair, sl2_normal_form
from algebra.skein import BasisKey, SkeinElement
from core.errors import (
    ExpressionError,
    FixtureError,
    SkeinEngineError,
    UnsupportedProduct,
)
from core.models import Normalization, RenderFormat, Suite
from core.output_manager import OutputManager
from core.renderer import render
from engine.product import cascade_G, classify, eta_bound, p_n_closed
from processors.expression_processor import ExpressionProcessor
from utils.helpers import format_duration, parse_vectors, stopwatch
from utils.logging import setup_logging
from verification.oracle import brute_force_pn, decompose_multiply, term_diff
from verification.runner import VerificationRunner


EXIT_OK = 0
EXIT_FATAL = 1
EXIT_SYNTAX = 2
EXIT_UNSUPPORTED = 3
EXIT_VERIFICATION = 4

logger = structlog.get_logger()
console = Console()
err_console = Console(stderr=True)


def output_options(func):
    """--format, --normalization and --json-out shared by the result commands"""
    func = click.option('--json-out', type=click.Path(dir_okay=False),
                        help='Also write the result as JSON to this file')(func)
    func = click.option('--normalization', type=click.Choice([n.value for n in Normalization]),
                        help='Unit convention for display (default from settings)')(func)
    func = click.option('--format', 'output_format', type=click.Choice([f.value for f in RenderFormat]),
                        help='Output format (default from settings)')(func)
    return func


def _emit(
    element: SkeinElement,
    output_format: Optional[str],
    normalization: Optional[str],
    json_out: Optional[str],
    metadata: Optional[dict] = None,
) -> None:
    """Print a result to stdout and optionally save it"""
    fmt = RenderFormat(output_format) if output_format else app_settings.output_format
    norm = Normalization(normalization) if normalization else app_settings.normalization
    click.echo(render(element, fmt, norm))
    if json_out:
        OutputManager(norm).save_element(element, json_out, metadata)


def _fail(code: int, message: str) -> None:
    err_console.print(f"Error: {message}", style="red")
    sys.exit(code)


def _unsupported(e: UnsupportedProduct) -> None:
    # machine-readable diagnostic for batch drivers
    click.echo(json.dumps(e.to_dict()), err=True)
    sys.exit(EXIT_UNSUPPORTED)


def _two_vectors(text: str):
    vectors = parse_vectors(text)
    if len(vectors) != 2:
        raise click.BadParameter(f"expected two curves like '(p,q)*(r,s)', got {text!r}")
    return vectors


@click.group()
@click.option('--log-level', type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
              help='Logging level (default from settings)')
@click.option('--log-file', type=click.Path(dir_okay=False), help='Also write logs to this file')
def cli(log_level, log_file):
    """Torus Skein - exact products in the skein algebra of the once-punctured torus"""
    setup_logging(
        log_level or app_settings.log_level,
        log_file or app_settings.log_file,
        app_settings.log_structured,
    )


@cli.command()
@click.argument('expression')
@output_options
def mul(expression, output_format, normalization, json_out):
    """Evaluate a product expression such as '(3,6)*(1,0)'.

    Pass '-' to read one expression per line from stdin.
    """
    processor = ExpressionProcessor()
    try:
        if expression == "-":
            results = processor.process_lines(sys.stdin)
            for element in results:
                if element is not None:
                    _emit(element, output_format, normalization, None)
            for error in processor.errors:
                err_console.print(f"  • {error}", style="red")
            for number, unsupported in processor.unsupported:
                click.echo(json.dumps({"line": number, **unsupported.to_dict()}), err=True)
            # input errors outrank unsupported products
            if processor.errors:
                sys.exit(EXIT_SYNTAX)
            if processor.unsupported:
                sys.exit(EXIT_UNSUPPORTED)
            return

        element = processor.process(expression)
        _emit(element, output_format, normalization, json_out, {"expression": expression})
    except ExpressionError as e:
        offset = getattr(e, "offset", 0)
        err_console.print(f"Error: {e}", style="red")
        err_console.print(f"  {expression}\n  {' ' * offset}^", style="red", markup=False, highlight=False)
        sys.exit(EXIT_SYNTAX)
    except UnsupportedProduct as e:
        _unsupported(e)
    except SkeinEngineError as e:
        _fail(EXIT_SYNTAX, str(e))
    except OSError as e:
        _fail(EXIT_FATAL, f"Fatal error: {str(e)}")


@cli.command()
@click.argument('n', type=click.IntRange(min=1))
@click.option('--oracle', is_flag=True, help='Cross-check against the recurrence and decomposition engines')
@output_options
def pn(n, oracle, output_format, normalization, json_out):
    """Closed form of P_n = (n,2n)_T * (1,0)_T"""
    with stopwatch() as elapsed:
        element = p_n_closed(n)
    _emit(element, output_format, normalization, json_out, {"n": n})
    logger.info(f"P_{n} computed in {format_duration(elapsed[0])}")

    if not oracle:
        return

    checks = [
        ("recurrence", lambda: brute_force_pn(n)),
        ("decomposition", lambda: decompose_multiply((n, 2 * n), (1, 0))),
    ]
    table = Table(title=f"Oracle check for P_{n}", show_header=True)
    table.add_column("Engine", style="cyan")
    table.add_column("Status", style="white")
    table.add_column("Time", style="yellow")

    mismatches = []
    for engine, compute in checks:
        with stopwatch() as elapsed:
            other = compute()
        diff = term_diff(element, other)
        mismatches.extend(f"[{engine}] {line}" for line in diff)
        table.add_row(engine, "Success" if not diff else f"Failed ({len(diff)} terms)",
                      format_duration(elapsed[0]))
    err_console.print(table)

    if mismatches:
        for line in mismatches:
            err_console.print(f"  • {line}", style="red", markup=False, soft_wrap=True)
        sys.exit(EXIT_VERIFICATION)


@cli.command(name="classify")
@click.argument('pair')
@click.option('--json', 'as_json', is_flag=True, help='Print the analysis as JSON')
def classify_command(pair, as_json):
    """Show which product rule handles a pair such as '(2,1)*(3,4)'"""
    try:
        u, v = _two_vectors(pair)
    except click.BadParameter as e:
        _fail(EXIT_SYNTAX, str(e))

    mu_u, k_u = canonicalize(u)
    mu_v, k_v = canonicalize(v)
    info = {
        "left": list(u),
        "right": list(v),
        "det": det_pair(u, v),
        "eta_bound": eta_bound(u, v),
    }
    if k_u and k_v:
        info["classification"] = classify(BasisKey(mu_u, k_u), BasisKey(mu_v, k_v)).value
    else:
        info["classification"] = "scalar"

    if k_u == 1 and k_v == 1 and info["det"] != 0:
        analysis = analyze_pair(u, v)
        info.update(analysis.to_dict())
        info["cascade_sign"] = analysis.cascade_sign
        if analysis.n >= 2:
            _, a = sl2_normal_form(u, v)
            info["normal_form_a"] = a

    if as_json:
        click.echo(json.dumps(info, indent=2))
        return

    table = Table(title=f"Classification of {pair}", show_header=True)
    table.add_column("Field", style="cyan")
    table.add_column("Value", style="white")
    for field, value in info.items():
        table.add_row(field, str(value))
    console.print(table)


@cli.command(context_settings={"ignore_unknown_options": True})
@click.argument('n', type=click.IntRange(min=1))
@click.argument('eps', type=click.Choice(["1", "-1", "+1"]))
@click.option('--mu', default="(1,0)", show_default=True, help='Primitive direction of the cascade')
@output_options
def cascade(n, eps, mu, output_format, normalization, json_out):
    """Peel cascade G_n for direction mu and sign eps"""
    vectors = parse_vectors(mu)
    if len(vectors) != 1:
        _fail(EXIT_SYNTAX, f"--mu must be one curve like '(1,0)', got {mu!r}")
    try:
        element = cascade_G(n, int(eps), vectors[0])
    except ValueError as e:
        _fail(EXIT_SYNTAX, str(e))
    _emit(element, output_format, normalization, json_out, {"n": n, "eps": int(eps)})


@cli.command()
@click.option('--suite', type=click.Choice([s.value for s in Suite]), default=Suite.ALL.value,
              show_default=True, help='Which checks to run')
@click.option('--fixtures', 'fixtures_file', type=click.Path(exists=True, dir_okay=False),
              help='Alternative fixture file')
@click.option('--seed', type=int, help='Random seed for the property suites')
@click.option('--workers', '-w', type=click.IntRange(min=1), help='Number of worker threads')
@click.option('--json-out', type=click.Path(dir_okay=False), help='Write the full report as JSON')
def verify(suite, fixtures_file, seed, workers, json_out):
    """Check golden fixtures and property suites; exit 4 on any failure"""
    settings = copy(app_settings).override(
        verify_workers=workers,
        random_seed=seed,
        fixtures_file=Path(fixtures_file) if fixtures_file else None,
    )
    runner = VerificationRunner(settings)

    try:
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TaskProgressColumn(),
            TimeElapsedColumn(),
            console=err_console,
            transient=True,
        ) as progress:
            task = progress.add_task("Verifying...", total=None)

            def update_progress(data):
                progress.update(task, total=data["total"], completed=data["processed"])

            runner.set_progress_callback(update_progress)
            report = runner.run(Suite(suite))
    except FixtureError as e:
        _fail(EXIT_VERIFICATION, f"Fixture error: {str(e)}")

    if report.fixtures:
        fixture_table = Table(title="Fixtures", show_header=True)
        fixture_table.add_column("Fixture", style="cyan")
        fixture_table.add_column("Engine", style="white")
        fixture_table.add_column("Status", style="green")
        for result in report.fixtures:
            fixture_table.add_row(result.name, result.engine, result.status.value)
        console.print(fixture_table)

    if report.properties:
        property_table = Table(title="Properties", show_header=True)
        property_table.add_column("Property", style="cyan")
        property_table.add_column("Checks", style="white")
        property_table.add_column("Status", style="green")
        for result in report.properties:
            property_table.add_row(result.name, str(result.cases), result.status.value)
        console.print(property_table)

    for result in report.failed_fixtures():
        err_console.print(f"\nFixture {result.name} [{result.engine}] {result.status.value}", style="red")
        if result.error_message:
            err_console.print(f"  {result.error_message}", style="red", markup=False, soft_wrap=True)
        for line in result.diff:
            err_console.print(f"  • {line}", style="red", markup=False, soft_wrap=True)

    for result in report.failed_properties():
        err_console.print(f"\nProperty {result.name} {result.status.value}", style="red")
        if result.error_message:
            err_console.print(f"  {result.error_message}", style="red", markup=False, soft_wrap=True)
        for line in result.failures[:10]:
            err_console.print(f"  • {line}", style="red", markup=False, soft_wrap=True)

    console.print(f"\n{report.get_summary()}", markup=False)
    logger.info(f"Runner statistics: {runner.get_statistics()}")

    if json_out:
        OutputManager().save_report(report, json_out)

    sys.exit(EXIT_OK if report.all_passed else EXIT_VERIFICATION)


@cli.command()
def validate_config():
    """Validate configuration and show status"""
    try:
        issues = app_settings.validate()

        config_table = Table(title="Configuration Status", show_header=True)
        config_table.add_column("Setting", style="cyan")
        config_table.add_column("Value", style="white")

        config_items = [
            ("Log Level", app_settings.log_level),
            ("Output Format", app_settings.output_format.value),
            ("Normalization", app_settings.normalization.value),
            ("Workers", app_settings.verify_workers),
            ("Random Seed", app_settings.random_seed),
            ("Fixtures File", app_settings.fixtures_file or "(packaged)"),
            ("Config File", app_settings.config_file),
        ]
        config_items.extend(app_settings.suite_sizes().items())

        for setting, value in config_items:
            config_table.add_row(str(setting), str(value))

        console.print(config_table)

        # Show issues
        if issues:
            console.print("\nWarning:  Configuration Issues:", style="yellow")
            for issue in issues:
                level_style = "red" if issue.startswith("ERROR") else "yellow"
                console.print(f"  • {issue}", style=level_style)
        else:
            console.print("\nSuccess Configuration looks good!", style="green")

        if any(issue.startswith("ERROR") for issue in issues):
            sys.exit(EXIT_FATAL)

    except (OSError, ValueError) as e:
        _fail(EXIT_FATAL, f"Error validating config: {str(e)}")


if __name__ == '__main__':
    cli()
