"""Report persistence: JSON, CSV and markdown writers plus the JSON loader."""

import csv
import io
import json
import math
from pathlib import Path
from typing import Literal

from .harness import CHECK_REGISTRY, SuiteReport
from .lindelof import MuEstimate

ReportFormat = Literal["json", "csv", "markdown"]
FORMATS = ("json", "csv", "markdown")

CSV_COLUMNS = ("check_id", "sigma", "tau", "lhs", "rhs", "margin", "pass")
MU_CSV_COLUMNS = ("sigma", "tau_mid", "max_modulus", "slope", "residual_rms")


def format_float(value: float) -> str:
    """17 significant digits, enough to round-trip any double."""
    if math.isnan(value):
        return "nan"
    return "%.17g" % value


def render_json(report: SuiteReport) -> str:
    # json writes floats with repr, which round-trips bit-exactly
    return json.dumps(report.to_dict(), indent=2) + "\n"


def render_csv(report: SuiteReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in report.records:
        writer.writerow([
            r.check_id,
            format_float(r.sigma),
            format_float(r.tau),
            format_float(r.lhs),
            format_float(r.rhs),
            format_float(r.margin),
            "true" if r.passed else "false",
        ])
    return buffer.getvalue()


def _short(value: float | None) -> str:
    if value is None:
        return "-"
    return "%.6g" % value


def render_markdown(report: SuiteReport) -> str:
    lines = [
        "# lindelof-lab report",
        "",
        f"- version: {report.tool_version}",
        f"- generated: {report.timestamp}",
        f"- records: {len(report.records)}, failures: {report.failures}",
    ]
    for key, value in report.config_echo.items():
        lines.append(f"- {key}: {value}")

    if report.summaries:
        lines += [
            "",
            "## Summary",
            "",
            "| check | statement | count | failures | worst margin | at (sigma, tau) |",
            "|---|---|---|---|---|---|",
        ]
        for s in report.summaries:
            info = CHECK_REGISTRY.get(s.check_id)
            statement = info.statement if info else ""
            where = "-" if s.worst_sigma is None else f"({_short(s.worst_sigma)}, {_short(s.worst_tau)})"
            lines.append(
                f"| {s.check_id} | {statement} | {s.count} | {s.failures} | {_short(s.worst_margin)} | {where} |"
            )

    if report.extrema:
        lines += ["", "## Extrema", ""]
        for name, entry in report.extrema.items():
            lines.append(
                f"- {name}: {_short(entry['value'])} at sigma = {_short(entry['sigma'])}, "
                f"tau = {_short(entry['tau'])}"
            )

    if report.mu_estimates:
        lines += [
            "",
            "## Growth exponents",
            "",
            "| target | sigma | slope | residual rms | windows |",
            "|---|---|---|---|---|",
        ]
        for m in report.mu_estimates:
            target = m.target if m.k is None else f"{m.target} (k={m.k})"
            lines.append(
                f"| {target} | {_short(m.sigma)} | {_short(m.slope)} | {_short(m.residual_rms)} "
                f"| {len(m.window_maxima)} |"
            )

    by_check: dict[str, list] = {}
    for r in report.records:
        by_check.setdefault(r.check_id, []).append(r)
    for check_id, records in by_check.items():
        lines += [
            "",
            f"## {check_id}",
            "",
            "| sigma | tau | lhs | rhs | margin | pass | note |",
            "|---|---|---|---|---|---|---|",
        ]
        for r in records:
            mark = "yes" if r.passed else "**no**"
            lines.append(
                f"| {_short(r.sigma)} | {_short(r.tau)} | {_short(r.lhs)} | {_short(r.rhs)} "
                f"| {_short(r.margin)} | {mark} | {r.note} |"
            )
    return "\n".join(lines) + "\n"


RENDERERS = {
    "json": render_json,
    "csv": render_csv,
    "markdown": render_markdown,
}


def _write_text(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write report: {exc.strerror}", str(path)) from exc


def write_report(report: SuiteReport, fmt: ReportFormat, path: Path | str) -> None:
    if fmt not in RENDERERS:
        raise ValueError(f"unknown report format {fmt!r}; expected one of {', '.join(FORMATS)}")
    _write_text(Path(path), RENDERERS[fmt](report))


def load_report(path: Path | str) -> SuiteReport:
    """Read a JSON report back; fields missing from older reports get defaults."""
    path = Path(path)
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path} is not a JSON report: {exc}") from exc
    if not isinstance(data, dict) or "records" not in data:
        raise ValueError(f"{path} does not look like a lindelof-lab report")
    try:
        return SuiteReport.from_dict(data)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"{path} has a malformed record: {exc}") from exc


def render_mu_csv(estimates: list[MuEstimate]) -> str:
    """One row per window, plot-ready."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(MU_CSV_COLUMNS)
    for m in estimates:
        for tau_mid, max_modulus in m.window_maxima:
            writer.writerow([
                format_float(m.sigma),
                format_float(tau_mid),
                format_float(max_modulus),
                format_float(m.slope),
                format_float(m.residual_rms),
            ])
    return buffer.getvalue()


def write_mu_csv(estimates: list[MuEstimate], path: Path | str) -> None:
    _write_text(Path(path), render_mu_csv(estimates))
