# varbv/cli/commands.py
"""
varbv CLI: the `varbv` command.
Commands: init, mean-exp, variation, tagged-variation, norm, maximal,
variation-function, compare-embedding, verify
"""
from __future__ import annotations

import functools
import json
import logging
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import click
import structlog
import yaml
from dotenv import load_dotenv
from pydantic import ValidationError

from varbv import __version__
from varbv.config.schema import VarbvConfig
from varbv.core.codec import format_rational, load_exponent, load_function
from varbv.core.errors import InvalidModel, VarbvError
from varbv.core.model import Interval, rational

load_dotenv()

logger = structlog.get_logger()

SCHEMA_VERSION = 1
EXIT_FAILED_CHECK, EXIT_INPUT_ERROR = 1, 2


def _configure_logging(config: VarbvConfig) -> None:
    """structlog to stderr so the report on stdout stays byte-stable."""
    renderer = (
        structlog.processors.JSONRenderer()
        if config.logging.format == "json"
        else structlog.dev.ConsoleRenderer(colors=False)
    )
    structlog.configure(
        processors=[structlog.processors.add_log_level, renderer],
        wrapper_class=structlog.make_filtering_bound_logger(logging.getLevelName(config.logging.level)),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


# ── Report encoding ───────────────────────────────────────────────────────────


def _encode(value: Any) -> Any:
    """Fractions as "n/d", non-finite floats as strings, floats as shortest round-trip repr."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, Interval):
        return [format_rational(value.lo), format_rational(value.hi)]
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, frozenset, set)):
        items = sorted(value) if isinstance(value, (frozenset, set)) else value
        return [_encode(v) for v in items]
    return str(value)


def _render(report: Dict[str, Any], fmt: str) -> str:
    encoded = _encode(report)
    if fmt == "text":
        return yaml.safe_dump(encoded, sort_keys=False, allow_unicode=True).rstrip("\n")
    return json.dumps(encoded, indent=2, ensure_ascii=False)


def _emit(
    command: str,
    inputs: Dict[str, Any],
    result: Any,
    diagnostics: Optional[Dict[str, Any]],
    fmt: str,
    warnings: Optional[List[str]] = None,
    details: Optional[Dict[str, Any]] = None,
) -> None:
    diag = {"grid_size": None, "rounds": None, "converged": None, "evaluations": None}
    diag.update(diagnostics or {})
    warnings = list(warnings or [])
    if diag["converged"] is False:
        warnings.append("refinement stopped at the grid cap before converging")
    report = {
        "schema": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "result": result,
        **({"details": details} if details is not None else {}),
        "diagnostics": diag,
        "warnings": warnings,
    }
    click.echo(_render(report, fmt))


# ── Input handling ────────────────────────────────────────────────────────────


def _input_error(message: str, field: Optional[str]) -> None:
    where = f"{field}: " if field else ""
    click.echo(click.style(f"[X] {where}{message}", fg="red"), err=True)
    click.get_current_context().exit(EXIT_INPUT_ERROR)


def guarded(command: Callable[..., None]) -> Callable[..., None]:
    """Map model and spec errors to exit code 2 with the offending field."""

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        try:
            command(*args, **kwargs)
        except VarbvError as e:
            _input_error(str(e), e.field)
        except FileNotFoundError as e:
            _input_error(str(e), "path")
        except yaml.YAMLError as e:
            _input_error(str(e), "config")
        except ValidationError as e:
            first = e.errors()[0]
            _input_error(first["msg"], ".".join(str(part) for part in first["loc"]))

    return wrapper


def _setup(config_path: Optional[str], tol: Optional[float] = None, max_points: Optional[int] = None) -> VarbvConfig:
    config = VarbvConfig.load(config_path)
    updates: Dict[str, Any] = {}
    if tol is not None:
        updates["tol"] = tol
    if max_points is not None:
        updates["max_points"] = max_points
    if updates:
        config.engine = type(config.engine)(**{**config.engine.model_dump(), **updates})
    _configure_logging(config)
    return config


def _number(value: Optional[str], field: str) -> Optional[Any]:
    """Exact rational when the literal allows it, float otherwise."""
    if value is None:
        return None
    try:
        return rational(value, field)
    except InvalidModel:
        pass
    try:
        return float(value)
    except ValueError:
        raise InvalidModel(f"cannot parse {value!r} as a number", field=field) from None


def _interval(values: Tuple[str, str]) -> Tuple[Fraction, Fraction]:
    lo, hi = values
    return rational(lo, "interval"), rational(hi, "interval")


def _points(text: str) -> List[Fraction]:
    return [rational(part, "xs") for part in text.split(",") if part.strip()]


def config_option(f: Callable[..., Any]) -> Callable[..., Any]:
    return click.option(
        "--config",
        "config_path",
        default=None,
        help="Path to config file (default: ./varbv.config.yaml when present)",
    )(f)


def format_option(f: Callable[..., Any]) -> Callable[..., Any]:
    return click.option(
        "--format",
        "fmt",
        type=click.Choice(["json", "text"]),
        default=None,
        help="Report format (default: output.format from config)",
    )(f)


def engine_options(f: Callable[..., Any]) -> Callable[..., Any]:
    f = click.option(
        "--max-points",
        type=click.IntRange(min=2),
        default=None,
        help="Refinement grid cap (overrides engine.max_points and VARBV_MAX_GRID)",
    )(f)
    return click.option(
        "--tol",
        type=click.FloatRange(min=0.0, min_open=True),
        default=None,
        help="Relative convergence tolerance of the refinement",
    )(f)


exponent_option = click.option("--exponent", "exponent_path", required=True, help="Exponent spec (JSON)")
function_option = click.option("--function", "function_path", required=True, help="Function spec (JSON)")


def _variation_result(result: Any) -> Dict[str, Any]:
    return {
        "value": result.lower_bound,
        "partition": list(result.best_partition.points),
        "mode": result.mode,
    }


# ── Commands ──────────────────────────────────────────────────────────────────


@click.group()
@click.version_option(version=__version__, prog_name="varbv")
def cli():
    """
    varbv: variable-exponent Wiener variation toolkit.

    Computes harmonic-mean exponents, variation modulars, Luxemburg norms
    and maximal exponents of step data, and verifies the classic
    counterexample constructions.

    Quick start:
      varbv init                                   # Create config file
      varbv mean-exp --exponent p.json --interval 0 1
      varbv verify anti-embedding --n 100
    """
    pass


@cli.command()
@click.option("--force", is_flag=True, default=False, help="Overwrite an existing config without asking")
def init(force: bool):
    """Write varbv.config.yaml in the current directory."""
    config_path = VarbvConfig.default_config_path()
    if config_path.exists() and not force:
        if not click.confirm(f"{config_path} already exists. Overwrite?"):
            click.echo("Aborted.")
            return

    template_path = Path(__file__).parent.parent / "config" / "varbv.config.yaml.template"
    config_path.write_text(template_path.read_text(encoding="utf-8"), encoding="utf-8")

    env_path = Path(".env")
    if not env_path.exists():
        env_path.write_text(
            "# Refinement grid cap (overrides engine.max_points)\n"
            "# VARBV_MAX_GRID=4096\n\n"
            "# Log level: DEBUG | INFO | WARNING | ERROR\n"
            "# VARBV_LOG_LEVEL=WARNING\n",
            encoding="utf-8",
        )
        click.echo("Created .env template")

    click.echo(click.style("[OK] varbv initialized!", fg="green"))
    click.echo(f"   Config: {config_path}")


@cli.command("mean-exp")
@exponent_option
@click.option("--interval", nargs=2, required=True, metavar="LO HI", help="Closed interval [LO, HI]")
@config_option
@format_option
@guarded
def mean_exp(exponent_path: str, interval: Tuple[str, str], config_path: Optional[str], fmt: Optional[str]):
    """Harmonic-mean exponent p̄ over an interval."""
    from varbv.exponent.prefix import attainable_exponents, mean_exponent, mean_value_witnesses

    config = _setup(config_path)
    p = load_exponent(exponent_path)
    q = _interval(interval)
    value = mean_exponent(p, q)
    lo_witness, hi_witness = mean_value_witnesses(p, q)
    _emit(
        "mean-exp",
        {"exponent": exponent_path, "interval": list(q)},
        value,
        None,
        fmt or config.output.format,
        details={"attainable_exponents": attainable_exponents(p, q), "witnesses": [lo_witness, hi_witness]},
    )


def _run_variation(mode: str, exponent_path: str, function_path: str, config: VarbvConfig, fmt: Optional[str]) -> None:
    from varbv.engine.refine import refine_variation

    p, f = load_exponent(exponent_path), load_function(function_path)
    result = refine_variation(p, f, config.engine, mode=mode)  # type: ignore[arg-type]
    _emit(
        "variation" if mode == "plain" else "tagged-variation",
        {"exponent": exponent_path, "function": function_path, "tol": config.engine.tol},
        _variation_result(result),
        result.diagnostics(),
        fmt or config.output.format,
    )


@cli.command()
@exponent_option
@function_option
@engine_options
@config_option
@format_option
@guarded
def variation(exponent_path, function_path, tol, max_points, config_path, fmt):
    """WBV modular V_a^b(p, f): sup over partitions with exponent p̄ per interval."""
    config = _setup(config_path, tol, max_points)
    _run_variation("plain", exponent_path, function_path, config, fmt)


@cli.command("tagged-variation")
@exponent_option
@function_option
@engine_options
@config_option
@format_option
@guarded
def tagged_variation(exponent_path, function_path, tol, max_points, config_path, fmt):
    """BV modular: sup over tagged partitions with exponent p(tag) per interval."""
    config = _setup(config_path, tol, max_points)
    _run_variation("tagged", exponent_path, function_path, config, fmt)


@cli.command()
@exponent_option
@function_option
@click.option("--tagged", is_flag=True, default=False, help="Norm of the tagged (BV) modular")
@click.option("--tol", type=click.FloatRange(min=0.0, min_open=True), default=None, help="Norm bracket width")
@click.option("--max-points", type=click.IntRange(min=2), default=None, help="Refinement grid cap")
@config_option
@format_option
@guarded
def norm(exponent_path, function_path, tagged, tol, max_points, config_path, fmt):
    """Luxemburg norm inf{λ > 0 : V(p, f/λ) <= 1}; --tol is the bracket width."""
    from varbv.norm.luxemburg import luxemburg_norm

    config = _setup(config_path, max_points=max_points)
    p, f = load_exponent(exponent_path), load_function(function_path)
    mode = "tagged" if tagged else "plain"
    result = luxemburg_norm(p, f, tol, mode=mode, engine=config.engine, config=config.norm)
    _emit(
        "norm",
        {
            "exponent": exponent_path,
            "function": function_path,
            "mode": mode,
            "tol": config.norm.tol if tol is None else tol,
        },
        {"norm": result.norm, "bracket": list(result.bracket), "modular_at_norm": result.modular_at_norm},
        {
            "grid_size": result.grid_size,
            "rounds": result.grid.generation,
            "converged": result.converged,
            "evaluations": result.evaluations,
        },
        fmt or config.output.format,
    )


@cli.command()
@exponent_option
@click.option("--x", "x", required=True, help="Interior point (rational literal)")
@config_option
@format_option
@guarded
def maximal(exponent_path, x, config_path, fmt):
    """Maximal values of 1/p at x, p̄_-^x and the additivity condition."""
    from varbv.exponent.maximal import additivity_condition, maximal_profile

    config = _setup(config_path)
    p = load_exponent(exponent_path)
    point = rational(x, "x")
    profile = maximal_profile(p, point)
    condition = additivity_condition(p, point)
    sides = ("full", "left", "right")
    _emit(
        "maximal",
        {"exponent": exponent_path, "x": point},
        {
            "maximal": {side: profile.value(side) for side in sides},
            "p_minus": {side: 1 / profile.value(side) for side in sides},
            "witnesses": {side: profile.witness(side) for side in sides},
            "additivity_condition": {"holds": condition.holds, "gap": condition.gap, "side": condition.side},
        },
        None,
        fmt or config.output.format,
    )


@cli.command("variation-function")
@exponent_option
@function_option
@click.option("--xs", required=True, help="Sorted comma-separated query points, e.g. 0,1/4,1/2")
@engine_options
@config_option
@format_option
@guarded
def variation_function_cmd(exponent_path, function_path, xs, tol, max_points, config_path, fmt):
    """F(x) = V_a^x(p, f) at each query point."""
    from varbv.engine.refine import trace_variation

    config = _setup(config_path, tol, max_points)
    p, f = load_exponent(exponent_path), load_function(function_path)
    trace = trace_variation(p, f, _points(xs), config.engine)
    _emit(
        "variation-function",
        {"exponent": exponent_path, "function": function_path, "xs": list(trace.points)},
        {"points": list(trace.points), "values": list(trace.values)},
        trace.result.diagnostics(),
        fmt or config.output.format,
    )


@cli.command("compare-embedding")
@click.option("--small", "small_path", required=True, help="Smaller exponent p1 (JSON)")
@click.option("--large", "large_path", required=True, help="Larger exponent p2 >= p1 (JSON)")
@function_option
@click.option("--tol", type=click.FloatRange(min=0.0, min_open=True), default=None, help="Norm bracket width")
@click.option("--max-points", type=click.IntRange(min=2), default=None, help="Refinement grid cap")
@config_option
@format_option
@guarded
def compare_embedding(small_path, large_path, function_path, tol, max_points, config_path, fmt):
    """Both Luxemburg norms of f on one grid; checks ‖f‖_{p2} <= ‖f‖_{p1}."""
    from varbv.norm.luxemburg import embedding_compare

    config = _setup(config_path, max_points=max_points)
    small, large = load_exponent(small_path), load_exponent(large_path)
    f = load_function(function_path)
    report = embedding_compare(small, large, f, tol, config.engine, config.norm)
    _emit(
        "compare-embedding",
        {"small": small_path, "large": large_path, "function": function_path, "tol": report.tol},
        {"norm_small": report.norm_small.norm, "norm_large": report.norm_large.norm, "holds": report.holds},
        {
            "grid_size": report.norm_small.grid_size,
            "converged": report.norm_small.converged and report.norm_large.converged,
            "evaluations": report.norm_small.evaluations + report.norm_large.evaluations,
        },
        fmt or config.output.format,
    )


@cli.command()
@click.argument("scenario_id")
@click.option("--n", "n", type=int, default=None, help="Truncation N (anti-embedding, unbounded-jump, bv-inclusion)")
@click.option("--depth", type=int, default=None, help="Cantor depth")
@click.option("--c", "c", default=None, help="Constant C >= 1 (additivity-failure)")
@click.option("--m", "m", default=None, help="Threshold M > 0 for the divergence certificate (anti-embedding)")
@click.option("--x", "x", default=None, help="Split point (additivity-failure, superadditivity)")
@click.option("--seed", type=int, default=None, help="Random seed (bv-inclusion)")
@click.option("--exponent", "exponent_path", default=None, help="Exponent spec overriding the built-in one")
@click.option("--function", "function_path", default=None, help="Function spec (superadditivity)")
@engine_options
@config_option
@format_option
@guarded
def verify(scenario_id, n, depth, c, m, x, seed, exponent_path, function_path, tol, max_points, config_path, fmt):
    """
    Build a counterexample scenario and check its bounds.

    Exits 1 when any check fails. Scenarios: anti-embedding, unbounded-jump,
    cantor, additivity-failure, superadditivity, bv-inclusion, embedding.
    """
    from varbv.pipeline import VerificationPipeline

    config = _setup(config_path, tol, max_points)
    params: Dict[str, Any] = {
        "n": n,
        "depth": depth,
        "c": _number(c, "c"),
        "m": _number(m, "m"),
        "x": None if x is None else rational(x, "x"),
        "seed": seed,
        "exponent": load_exponent(exponent_path) if exponent_path else None,
        "function": load_function(function_path) if function_path else None,
    }
    result = VerificationPipeline(config).run(scenario_id, **params)
    if result["status"] == "error":
        _input_error(result["error"], result.get("field"))
        return

    report = result["report"]
    inputs = {"scenario": scenario_id, "exponent": exponent_path, "function": function_path}
    inputs.update({k: v for k, v in params.items() if k not in ("exponent", "function") and v is not None})
    _emit(
        "verify",
        inputs,
        report.to_dict(),
        report.diagnostics,
        fmt or config.output.format,
        warnings=[f"check failed: {name}" for name in report.failed_checks],
    )
    if not report.passed:
        click.get_current_context().exit(EXIT_FAILED_CHECK)


if __name__ == "__main__":
    cli()
