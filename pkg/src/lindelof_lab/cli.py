"""CLI for lindelof-lab."""

import math
import sys
from pathlib import Path
from typing import Callable, TypeVar

import click
import numpy as np

from . import __version__
from .chifn import CHARACTERS, chi, chi_k, get_character, l_function
from .config import (
    ENV_VARS,
    get_default_c0,
    get_default_seed,
    get_workers,
    load_config_file,
)
from .errors import DomainError, LindelofLabError
from .gammafn import gamma
from .harness import CHECK_REGISTRY, GridSpec, SuiteReport, parse_checks, run_bounds_suite
from .lindelof import HeavisideConvention, estimate_mu_slope, moment_integral
from .mellin import (
    ContourSpec,
    inverse_mellin_lambda,
    inverse_mellin_reciprocal,
    lambda_target,
    reciprocal_target,
)
from .report import FORMATS, RENDERERS, load_report, write_mu_csv, write_report
from .zetafn import zeta

T = TypeVar("T")

FUNCTIONS = ("zeta", "gamma", "chi", "chi_k", "L")


def _fail(exc: Exception) -> None:
    """Report a computation error and exit 1."""
    click.echo(f"Error: {type(exc).__name__}: {exc}", err=True)
    sys.exit(1)


def _from_config(getter: Callable[[], T], option: str) -> T:
    try:
        return getter()
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint=option)


def parse_complex(text: str) -> complex:
    """'2', '-1', '0.5+14i', '3-4j', 'i' -> complex."""
    cleaned = text.strip().lower().replace(" ", "").replace("i", "j")
    if cleaned.endswith("j") and (len(cleaned) == 1 or cleaned[-2] in "+-"):
        cleaned = cleaned[:-1] + "1j"
    try:
        return complex(cleaned)
    except ValueError:
        raise click.BadParameter(f"cannot parse {text!r} as a complex number", param_hint="S") from None


def _float_list(text: str, option: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter(f"expected a comma list of numbers, got {text!r}", param_hint=option) from None


def output_options(default_format: str = "json"):
    def decorator(f):
        f = click.option("-q", "--quiet", is_flag=True, help="Suppress progress output")(f)
        f = click.option(
            "--format", "fmt", type=click.Choice(FORMATS), default=default_format,
            help=f"Output file format (default: {default_format})",
        )(f)
        f = click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write results to this file")(f)
        return f
    return decorator


def workers_option(f):
    return click.option(
        "--workers", type=click.IntRange(min=1), default=None,
        help="Worker threads (default: LINDELOF_LAB_WORKERS or CPU count, at most 8)",
    )(f)


@click.group()
@click.version_option(__version__, prog_name="lindelof-lab")
@click.option(
    "--config", "config_path", type=click.Path(dir_okay=False, path_type=Path),
    help="INI file with a [common] section and per-command sections",
)
@click.pass_context
def cli(ctx: click.Context, config_path: Path | None):
    """Chi-factor, zeta and Lindelof mu-function toolkit with a bound-verification harness."""
    if config_path is not None:
        try:
            ctx.default_map = load_config_file(config_path, sorted(cli.commands))
        except ValueError as exc:
            raise click.BadParameter(str(exc), param_hint="--config")


@cli.command("eval", context_settings={"ignore_unknown_options": True})
@click.argument("function", type=click.Choice(FUNCTIONS))
@click.argument("s")
@click.option("-k", "--k", "k", type=int, default=None, help="Modulus for chi_k and L")
def eval_cmd(function: str, s: str, k: int | None):
    """Evaluate FUNCTION at the complex point S (e.g. 0.5+14i)."""
    point = parse_complex(s)
    if function in ("chi_k", "L") and k is None:
        raise click.UsageError(f"{function} needs --k")
    if function == "L" and k not in CHARACTERS:
        raise click.BadParameter(f"no built-in character mod {k}; available: {sorted(CHARACTERS)}", param_hint="--k")

    try:
        if function == "zeta":
            result = zeta(point)
        elif function == "gamma":
            result = gamma(point)
        elif function == "chi":
            result = chi(point)
        elif function == "chi_k":
            result = chi_k(point, k)
        else:
            result = l_function(point, get_character(k))
    except (LindelofLabError, ArithmeticError) as exc:
        _fail(exc)

    click.echo(f"re:      {result.value.real:.16g}")
    click.echo(f"im:      {result.value.imag:.16g}")
    click.echo(f"modulus: {result.modulus:.16g}")
    click.echo(f"abs_err: {result.abs_err:.3g}")


@cli.command()
@click.option("--sigma-min", type=float, default=GridSpec.sigma_min, show_default=True)
@click.option("--sigma-max", type=float, default=GridSpec.sigma_max, show_default=True)
@click.option("--sigma-steps", type=int, default=GridSpec.sigma_steps, show_default=True)
@click.option("--tau-min", type=float, default=GridSpec.tau_min, show_default=True)
@click.option("--tau-max", type=float, default=GridSpec.tau_max, show_default=True)
@click.option("--tau-steps", type=int, default=GridSpec.tau_steps, show_default=True)
@click.option("--tau-scale", type=click.Choice(["linear", "geometric"]), default=GridSpec.tau_scale, show_default=True)
@click.option("--checks", default="all", show_default=True, help="Comma list of check IDs, or 'all'")
@click.option("--random-points", type=click.IntRange(min=0), default=0, help="Extra uniformly random points")
@click.option("--seed", type=int, default=None, help="Seed for --random-points (default: LINDELOF_LAB_SEED)")
@click.option("--c0", type=float, default=None, help="Heaviside value at 0, in (0, 1/2)")
@workers_option
@output_options()
def bounds(
    sigma_min, sigma_max, sigma_steps, tau_min, tau_max, tau_steps, tau_scale,
    checks, random_points, seed, c0, workers, out, fmt, quiet,
):
    """Sweep a sigma-tau grid and verify every selected check."""

    def log(msg):
        if not quiet:
            click.echo(msg)

    try:
        grid = GridSpec(sigma_min, sigma_max, sigma_steps, tau_min, tau_max, tau_scale, tau_steps)
    except DomainError as exc:
        raise click.UsageError(str(exc))
    try:
        check_ids = parse_checks(checks)
    except DomainError as exc:
        raise click.BadParameter(str(exc), param_hint="--checks")
    try:
        conv = HeavisideConvention(c0 if c0 is not None else _from_config(get_default_c0, "--c0"))
    except DomainError as exc:
        raise click.BadParameter(str(exc), param_hint="--c0")
    if seed is None:
        seed = _from_config(get_default_seed, "--seed")
    workers = workers or _from_config(get_workers, "--workers")

    report = run_bounds_suite(
        grid, check_ids, conv, workers=workers, random_points=random_points, seed=seed, progress=log,
    )

    log(f"{'check':<24}{'count':>8}{'failures':>10}  worst margin")
    for s in report.summaries:
        worst = "-" if s.worst_margin is None else f"{s.worst_margin:.3e}"
        log(f"{s.check_id:<24}{s.count:>8}{s.failures:>10}  {worst}")
    if "sup_chi_ratio" in report.extrema:
        sup = report.extrema["sup_chi_ratio"]
        log(f"sup |chi| / tau^(1/2 - sigma) = {sup['value']:.6f} at sigma = {sup['sigma']:g}, tau = {sup['tau']:g}")

    if out is not None:
        try:
            write_report(report, fmt, out)
        except OSError as exc:
            _fail(exc)
        log(f"Wrote {len(report.records)} records to {out}")

    if report.failures:
        click.echo(f"{report.failures} failing record(s)", err=True)
        sys.exit(1)


@cli.command()
@click.option("--target", type=click.Choice(["zeta", "chi", "chi_k", "L"]), default="zeta", show_default=True)
@click.option("--sigmas", required=True, help="Comma list of sigma values, e.g. -1,0,0.5")
@click.option("--tau-min", type=float, default=10.0, show_default=True)
@click.option("--tau-max", type=float, default=3000.0, show_default=True)
@click.option("--windows", type=int, default=8, show_default=True)
@click.option("-k", "--k", "k", type=int, default=None, help="Modulus for chi_k and L")
@workers_option
@output_options(default_format="csv")
def mu(target, sigmas, tau_min, tau_max, windows, k, workers, out, fmt, quiet):
    """Estimate growth exponents of |f(sigma + i tau)| from window maxima."""

    def log(msg):
        if not quiet:
            click.echo(msg)

    sigma_values = _float_list(sigmas, "--sigmas")
    if not sigma_values:
        raise click.BadParameter("no sigma values given", param_hint="--sigmas")
    workers = workers or _from_config(get_workers, "--workers")

    estimates = []
    for sigma in sigma_values:
        log(f"Sampling {target} at sigma = {sigma:g} over [{tau_min:g}, {tau_max:g}]...")
        try:
            estimates.append(estimate_mu_slope(target, sigma, tau_min, tau_max, windows, k=k, workers=workers))
        except LindelofLabError as exc:
            _fail(exc)

    click.echo(f"{'sigma':>8}  {'slope':>10}  {'residual':>10}")
    for m in estimates:
        click.echo(f"{m.sigma:>8g}  {m.slope:>10.4f}  {m.residual_rms:>10.4f}")
        if m.skipped_samples:
            click.echo(f"Warning: {m.skipped_samples} sample(s) at sigma = {m.sigma:g} could not be evaluated", err=True)

    if out is not None:
        try:
            if fmt == "csv":
                write_mu_csv(estimates, out)
            else:
                report = SuiteReport(
                    tool_version=__version__,
                    config_echo={"target": target, "k": k, "sigmas": sigma_values,
                                 "tau_min": tau_min, "tau_max": tau_max, "windows": windows},
                    mu_estimates=estimates,
                )
                write_report(report, fmt, out)
        except OSError as exc:
            _fail(exc)
        log(f"Wrote {len(estimates)} estimate(s) to {out}")


@cli.command()
@click.option("-k", "--k", "k", type=click.Choice(["1", "2"]), default="1", show_default=True)
@click.option("-T", "--height", "T", type=float, default=100.0, show_default=True, help="Upper limit T")
@click.option("--step", type=float, default=0.05, show_default=True, help="Coarse quadrature step")
def moment(k, T, step):
    """Mean value (1/T) int_1^T |zeta(1/2 + it)|^(2k) dt."""
    try:
        result = moment_integral(int(k), T, step)
    except LindelofLabError as exc:
        _fail(exc)

    click.echo(f"k:                 {result.k}")
    click.echo(f"T:                 {result.T:g}")
    click.echo(f"normalized moment: {result.normalized_moment:.10g}")
    click.echo(f"quadrature error:  {result.quadrature_err:.3g}")
    if result.k == 1:
        leading = math.log(T / (2.0 * math.pi)) + 2.0 * np.euler_gamma - 1.0
        click.echo(f"log(T/2pi)+2g-1:   {leading:.10g}")


@cli.command()
@click.argument("which", type=click.Choice(["lambda", "reciprocal"]))
@click.option("--x", "xs", default="0.3,0.5,1,2", show_default=True, help="Comma list of x values")
@click.option("--c", type=float, default=None, help="Line abscissa (default: 0.25 for lambda, 0.75 for reciprocal)")
@click.option("-T", "--height", "T", type=float, default=ContourSpec.T, show_default=True)
@click.option("--panels", type=int, default=ContourSpec.panels, show_default=True)
@click.option("--windows", type=int, default=ContourSpec.averaging_windows, show_default=True)
@click.option("--tol", type=float, default=ContourSpec.tol, show_default=True)
@click.option("--form", type=click.Choice(["chi", "gamma"]), default="chi", show_default=True,
              help="Integrand form for lambda")
def mellin(which, xs, c, T, panels, windows, tol, form):
    """Recover 2cos(2 pi x) (lambda) or (2/x)cos(2 pi/x) (reciprocal) from line integrals."""
    if c is None:
        c = 0.25 if which == "lambda" else 0.75
    try:
        spec = ContourSpec(c=c, T=T, panels=panels, averaging_windows=windows, tol=tol)
    except DomainError as exc:
        raise click.UsageError(str(exc))
    # the reciprocal form carries twice the amplitude
    allowed = tol if which == "lambda" else 2.0 * tol

    click.echo(f"{'x':>8}  {'value':>12}  {'target':>12}  {'error':>10}  {'abs_err':>10}")
    off = 0
    for x in _float_list(xs, "--x"):
        try:
            if which == "lambda":
                result, target = inverse_mellin_lambda(x, spec, form=form), lambda_target(x)
            else:
                result, target = inverse_mellin_reciprocal(x, spec), reciprocal_target(x)
        except LindelofLabError as exc:
            _fail(exc)
        error = abs(result.value.real - target)
        off += error > allowed
        click.echo(f"{x:>8g}  {result.value.real:>12.6f}  {target:>12.6f}  {error:>10.2e}  {result.abs_err:>10.2e}")
    if off:
        click.echo(f"{off} value(s) outside the tolerance {allowed:g}", err=True)
        sys.exit(1)


@cli.command()
@click.argument("source", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@output_options(default_format="markdown")
def report(source, out, fmt, quiet):
    """Convert a saved JSON report to another format."""
    try:
        loaded = load_report(source)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="SOURCE")

    if out is None:
        click.echo(RENDERERS[fmt](loaded), nl=False)
        return
    try:
        write_report(loaded, fmt, out)
    except OSError as exc:
        _fail(exc)
    if not quiet:
        click.echo(f"Wrote {fmt} report to {out}")


@cli.command()
def config():
    """Show current configuration."""
    click.echo("Lindelof Lab Configuration")
    click.echo("=" * 50)
    click.echo(f"Version:         {__version__}")
    click.echo(f"Workers:         {_from_config(get_workers, 'LINDELOF_LAB_WORKERS')}")
    click.echo(f"Heaviside c0:    {_from_config(get_default_c0, 'LINDELOF_LAB_C0')}")
    click.echo(f"Seed:            {_from_config(get_default_seed, 'LINDELOF_LAB_SEED')}")
    click.echo(f"Characters:      {', '.join(f'k={k}' for k in sorted(CHARACTERS))}")
    click.echo(f"Checks:          {len(CHECK_REGISTRY)} registered")
    for check_id in sorted(CHECK_REGISTRY):
        click.echo(f"  - {check_id}")
    click.echo()
    click.echo("Environment variables:")
    for name, description in ENV_VARS.items():
        click.echo(f"  {name:<22} - {description}")


if __name__ == "__main__":
    cli()
