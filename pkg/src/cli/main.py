"""Command-line interface for hartree-lab."""

import logging
import sys
from pathlib import Path
from typing import Dict, Optional

import typer

from .. import __version__
from ..core.checks import Report
from ..core.config import RunConfig, parse_config
from ..core.errors import ConfigError, HartreeLabError, ParameterError
from ..core.logging_config import setup_logging
from ..core.manifest import MANIFEST_VERSION
from ..reporters.base import BaseReporter
from ..reporters.csv_reporter import CSVReporter
from ..reporters.html_reporter import HTMLReporter
from ..reporters.json_reporter import JSONReporter
from .runner import run

app = typer.Typer(help="hartree-lab - exponent gate, Lorentz harnesses and solvers for the inhomogeneous Hartree equation")

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

REPORTERS: Dict[str, type] = {"json": JSONReporter, "html": HTMLReporter, "csv": CSVReporter}

CONFIG_OPTION = typer.Option(None, "--config", "-c", help="Config file of key = value lines")
OUT_OPTION = typer.Option(None, "--out", "-o", help="Directory for report files and snapshots")
FORMAT_OPTION = typer.Option("json", "--format", "-f", help="Output format: json, html, csv")
FAILURES_OPTION = typer.Option(False, "--failures-only", help="Render failing checks only")


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(None, "--log-level", help="DEBUG, INFO, WARNING or ERROR"),
    log_file: Optional[str] = typer.Option(None, "--log-file", help="Also log to this rotating file"),
):
    setup_logging(log_level, log_file)


def config_text(path: Optional[Path], overrides: Dict[str, Optional[str]]) -> str:
    """Config file text with command-line flags applied.

    Overridden lines are blanked to comments so error line numbers still
    point into the file.
    """
    overrides = {k: v for k, v in overrides.items() if v is not None}
    lines = []
    if path is not None:
        try:
            lines = path.read_text(encoding="utf-8").splitlines()
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e.strerror or e}") from e
    kept = []
    for line in lines:
        key = line.split("#", 1)[0].split("=", 1)[0].strip()
        kept.append(f"# {line}" if key in overrides else line)
    kept.extend(f"{key} = {value}" for key, value in overrides.items())
    return "\n".join(kept) + "\n"


def _load(command: str, path: Optional[Path], overrides: Dict[str, Optional[str]]) -> RunConfig:
    return parse_config(config_text(path, overrides), command=command)


def _emit(report: Report, fmt: str, out: Optional[Path], failures_only: bool) -> None:
    if fmt not in REPORTERS:
        raise ConfigError(f"unknown format {fmt!r}; expected one of {', '.join(REPORTERS)}")
    reporter: BaseReporter = REPORTERS[fmt](failures_only=failures_only)
    if out is None:
        typer.echo(reporter.generate(report), nl=False)
        return
    saved = reporter.save(report, out / f"{report.command}{reporter.extension}")
    typer.echo(f"Report saved to: {saved}")
    if report.rows and fmt != "csv":
        table = CSVReporter().save(report, out / f"{report.command}.csv")
        typer.echo(f"Table saved to: {table}")


def _execute(
    command: str,
    config: Optional[Path],
    out: Optional[Path],
    fmt: str,
    failures_only: bool,
    overrides: Optional[Dict[str, Optional[str]]] = None,
) -> None:
    try:
        run_config = _load(command, config, overrides or {})
        if out is None and run_config.out:
            out = Path(run_config.out)
        report = run(run_config, out_dir=out)
        _emit(report, fmt, out, failures_only)
    except ConfigError as e:
        typer.echo(f"Config error: {e}", err=True)
        sys.exit(EXIT_USAGE)
    except ParameterError as e:
        # The configured point itself is invalid, not the run
        logger.error("%s rejected its parameters: %s", command, e)
        typer.echo(f"Parameter error: {e}", err=True)
        sys.exit(EXIT_USAGE)
    except HartreeLabError as e:
        logger.error("%s failed: %s", command, e)
        typer.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_FAIL)

    if not report.passed:
        typer.echo(f"FAIL: {', '.join(c.name for c in report.get_failures())}", err=True)
        sys.exit(EXIT_FAIL)
    sys.exit(EXIT_PASS)


@app.command()
def gate(
    n: Optional[str] = typer.Option(None, "--n", help="Dimension"),
    s: Optional[str] = typer.Option(None, "--s", help="Regularity, e.g. 1/2"),
    alpha: Optional[str] = typer.Option(None, "--alpha", help="Riesz order"),
    b: Optional[str] = typer.Option(None, "--b", help="Singularity strength"),
    config: Optional[Path] = CONFIG_OPTION,
    out: Optional[Path] = OUT_OPTION,
    fmt: str = FORMAT_OPTION,
    failures_only: bool = FAILURES_OPTION,
):
    """Evaluate every local-theory hypothesis at one parameter point."""
    _execute("gate", config, out, fmt, failures_only, {"n": n, "s": s, "alpha": alpha, "b": b})


@app.command()
def scan(
    n: Optional[str] = typer.Option(None, "--n", help="Dimension"),
    s: Optional[str] = typer.Option(None, "--s", help="Regularity"),
    steps: Optional[str] = typer.Option(None, "--steps", help="Grid steps along both alpha and b"),
    config: Optional[Path] = CONFIG_OPTION,
    out: Optional[Path] = OUT_OPTION,
    fmt: str = typer.Option("csv", "--format", "-f", help="Output format: json, html, csv"),
    failures_only: bool = FAILURES_OPTION,
):
    """Gate a rectangular rational grid of (alpha, b) at fixed (n, s)."""
    _execute("scan", config, out, fmt, failures_only,
             {"n": n, "s": s, "alpha_steps": steps, "b_steps": steps})


@app.command()
def verify(
    suite: Optional[str] = typer.Option(None, "--suite", help="identities, holder, hls, sobolev or strichartz"),
    grid: Optional[str] = typer.Option(None, "--grid", help="Points per axis"),
    box: Optional[str] = typer.Option(None, "--box", help="Half-width of the box"),
    config: Optional[Path] = CONFIG_OPTION,
    out: Optional[Path] = OUT_OPTION,
    fmt: str = FORMAT_OPTION,
    failures_only: bool = FAILURES_OPTION,
):
    """Run one inequality or identity suite over the manifest families."""
    _execute("verify", config, out, fmt, failures_only, {"suite": suite, "points": grid, "half_width": box})


@app.command()
def simulate(
    config: Optional[Path] = CONFIG_OPTION,
    out: Optional[Path] = OUT_OPTION,
    fmt: str = FORMAT_OPTION,
    failures_only: bool = FAILURES_OPTION,
):
    """Integrate the equation and record diagnostics; snapshots go to OUT/snapshots."""
    _execute("simulate", config, out, fmt, failures_only)


@app.command()
def picard(
    config: Optional[Path] = CONFIG_OPTION,
    out: Optional[Path] = OUT_OPTION,
    fmt: str = FORMAT_OPTION,
    failures_only: bool = FAILURES_OPTION,
):
    """Iterate the Duhamel map and report the contraction."""
    _execute("picard", config, out, fmt, failures_only)


@app.command()
def scatter(
    config: Optional[Path] = CONFIG_OPTION,
    out: Optional[Path] = OUT_OPTION,
    fmt: str = FORMAT_OPTION,
    failures_only: bool = FAILURES_OPTION,
):
    """Track the backward-propagated solution at doubling checkpoints."""
    _execute("scatter", config, out, fmt, failures_only)


@app.command()
def depend(
    config: Optional[Path] = CONFIG_OPTION,
    out: Optional[Path] = OUT_OPTION,
    fmt: str = FORMAT_OPTION,
    failures_only: bool = FAILURES_OPTION,
):
    """Measure continuous dependence on the data over a ladder of perturbations."""
    _execute("depend", config, out, fmt, failures_only)


@app.command()
def version():
    """Show version information."""
    typer.echo(f"hartree-lab v{__version__} (manifest {MANIFEST_VERSION})")


if __name__ == "__main__":
    app()
