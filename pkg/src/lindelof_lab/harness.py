"""Grid sweeps over the check registry and the resulting suite report."""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Callable, Iterable, Literal

import numpy as np

from . import __version__
from . import chifn, lindelof
from .chifn import CHARACTERS, BoundRecord, chi, error_record
from .errors import DomainError, LindelofLabError
from .lindelof import DEFAULT_CONVENTION, HeavisideConvention, MuEstimate

MAX_GRID_TAU = 1e4


@dataclass(frozen=True)
class GridSpec:
    """Rectangular sigma x tau sample of the plane."""

    sigma_min: float = 0.0
    sigma_max: float = 0.5
    sigma_steps: int = 26
    tau_min: float = 1.0
    tau_max: float = 1e3
    tau_scale: Literal["linear", "geometric"] = "geometric"
    tau_steps: int = 60

    def __post_init__(self):
        if not self.sigma_min <= self.sigma_max:
            raise DomainError(f"sigma_min {self.sigma_min:g} exceeds sigma_max {self.sigma_max:g}")
        if not 0.0 < self.tau_min <= self.tau_max <= MAX_GRID_TAU:
            raise DomainError(f"need 0 < tau_min <= tau_max <= {MAX_GRID_TAU:g}")
        if self.tau_scale not in ("linear", "geometric"):
            raise DomainError(f"tau_scale must be linear or geometric, got {self.tau_scale!r}")
        for name, lo, hi, steps in (
            ("sigma", self.sigma_min, self.sigma_max, self.sigma_steps),
            ("tau", self.tau_min, self.tau_max, self.tau_steps),
        ):
            needed = 2 if lo < hi else 1
            if steps < needed:
                raise DomainError(f"{name}_steps must be >= {needed}, got {steps}")

    def sigmas(self) -> np.ndarray:
        if self.sigma_min == self.sigma_max:
            return np.array([self.sigma_min])
        return np.linspace(self.sigma_min, self.sigma_max, self.sigma_steps)

    def taus(self) -> np.ndarray:
        if self.tau_min == self.tau_max:
            return np.array([self.tau_min])
        if self.tau_scale == "geometric":
            return np.geomspace(self.tau_min, self.tau_max, self.tau_steps)
        return np.linspace(self.tau_min, self.tau_max, self.tau_steps)

    def points(self) -> list[complex]:
        return [complex(float(s), float(t)) for s in self.sigmas() for t in self.taus()]

    def random_points(self, n: int, seed: int) -> list[complex]:
        """n uniform points of the rectangle (log-uniform in tau on a geometric grid)."""
        if n <= 0:
            return []
        rng = np.random.default_rng(seed)
        sigmas = rng.uniform(self.sigma_min, self.sigma_max, n)
        if self.tau_scale == "geometric":
            taus = np.exp(rng.uniform(math.log(self.tau_min), math.log(self.tau_max), n))
        else:
            taus = rng.uniform(self.tau_min, self.tau_max, n)
        return [complex(float(s), float(t)) for s, t in zip(sigmas, taus)]


@dataclass(frozen=True)
class CheckInfo:
    """A registry entry: what is compared and how it is evaluated."""

    check_id: str
    statement: str
    kind: Literal["point", "character", "sigma"]
    evaluate: Callable


CHECK_REGISTRY: dict[str, CheckInfo] = {
    info.check_id: info
    for info in (
        CheckInfo("sharp-imag-axis", "|chi(it)| <= sqrt(t / 2pi)", "point", chifn.check_sharp_imag_axis),
        CheckInfo("critical-line-modulus", "|chi(1/2 + it)| = 1", "point", chifn.check_critical_line),
        CheckInfo("affine-exponent", "|chi(s)| <= 8 t^k(sigma), k affine from 1/2 to 0", "point",
                  chifn.check_affine_exponent),
        CheckInfo("asymptotic-ratio", "|chi(s)| ~ (t / 2pi)^(1/2 - sigma)", "point", chifn.check_asymptotic_ratio),
        CheckInfo("reflection-identity", "chi(s) chi(1 - s) = 1", "point", chifn.check_reflection),
        CheckInfo("mirror-symmetry", "|chi(sigma + it)| = |chi(sigma - it)|", "point", chifn.check_mirror),
        CheckInfo("A3-sine", "|sin(pi s / 2)| <= e^(pi |t| / 2)", "point", chifn.check_a3_sine),
        CheckInfo("A4-stirling", "|Gamma(1 - s)| <= Stirling majorant", "point", chifn.check_a4_stirling),
        CheckInfo("A5-majorant", "|Gamma(1 - s) sin(pi s / 2)| <= 2 sqrt(2pi) |1 - s|^(1/2 - sigma)", "point",
                  chifn.check_a5_majorant),
        CheckInfo("A6-prefactor", "(1/pi)(2pi)^sigma sqrt(2pi) <= 2", "point", chifn.check_a6_prefactor),
        CheckInfo("A7-majorant", "|chi(s)| <= 4 |1 - s|^(1/2 - sigma)", "point", chifn.check_a7_majorant),
        CheckInfo("A9-majorant", "|1 - s|^(1/2 - sigma) <= 2 |t|^(1/2 - sigma)", "point", chifn.check_a9_majorant),
        CheckInfo("A14-rectangle", "|chi(s)| <= 8 for |t| <= 1", "point", chifn.check_a14_rectangle),
        CheckInfo("K8-strip", "|chi(s)| <= 8 t^(1/2 - sigma), t >= 1", "point", chifn.check_k8_strip),
        CheckInfo("K8-global", "|chi(s)| <= max(8 |t|^(1/2 - sigma), 8)", "point", chifn.check_k8_global),
        CheckInfo("chik-asymptotic", "|chi_k(s)| ~ (k t / 2pi)^(1/2 - sigma)", "character",
                  lambda s, spec: chifn.check_chik_asymptotic(s, spec.modulus)),
        CheckInfo("Lk-functional-eq", "L_k(s) = k^(1/2 - s) chi(s) L_k(1 - s)", "character",
                  chifn.check_lk_functional_eq),
        CheckInfo("heaviside-partition", "H(sigma - a) + H(a - sigma) = 1, or 2 c0 at sigma = a", "sigma",
                  lindelof.check_heaviside_partition),
        CheckInfo("mu-closed-form", "mu_chi(sigma) = (1/2 - sigma) H(1/2 - sigma)", "sigma",
                  lindelof.check_mu_closed_form),
        CheckInfo("mu-functional-eq", "mu(sigma) = 1/2 - sigma + mu(1 - sigma)", "sigma",
                  lindelof.check_mu_functional_eq),
        CheckInfo("mu-nonunique", "(1 - sigma)/2 and (1 - sigma)^2/2 solve the same equation", "sigma",
                  lindelof.check_mu_nonunique),
    )
}


def parse_checks(spec: str | Iterable[str]) -> list[str]:
    """'all', a comma list, or an iterable of IDs -> sorted registry IDs."""
    if isinstance(spec, str):
        if spec.strip() == "all":
            return sorted(CHECK_REGISTRY)
        spec = [part.strip() for part in spec.split(",") if part.strip()]
    ids = sorted(set(spec))
    if not ids:
        raise DomainError("the check set is empty")
    unknown = [check_id for check_id in ids if check_id not in CHECK_REGISTRY]
    if unknown:
        raise DomainError(f"unknown check id(s): {', '.join(unknown)}")
    return ids


@dataclass
class CheckSummary:
    check_id: str
    count: int
    failures: int
    worst_margin: float | None = None
    worst_sigma: float | None = None
    worst_tau: float | None = None


@dataclass
class SuiteReport:
    """Everything a sweep produced."""

    tool_version: str
    config_echo: dict
    records: list[BoundRecord] = field(default_factory=list)
    summaries: list[CheckSummary] = field(default_factory=list)
    mu_estimates: list[MuEstimate] = field(default_factory=list)
    extrema: dict = field(default_factory=dict)
    timestamp: str = ""

    @property
    def failures(self) -> int:
        return sum(1 for r in self.records if not r.passed)

    def to_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "config_echo": self.config_echo,
            "records": [r.to_dict() for r in self.records],
            "summaries": [asdict(s) for s in self.summaries],
            "mu_estimates": [m.to_dict() for m in self.mu_estimates],
            "extrema": self.extrema,
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SuiteReport":
        return cls(
            tool_version=data.get("tool_version", ""),
            config_echo=data.get("config_echo", {}),
            records=[BoundRecord.from_dict(r) for r in data.get("records", [])],
            summaries=[CheckSummary(**s) for s in data.get("summaries", [])],
            mu_estimates=[MuEstimate.from_dict(m) for m in data.get("mu_estimates", [])],
            extrema=data.get("extrema", {}),
            timestamp=data.get("timestamp", ""),
        )


def summarize(records: list[BoundRecord]) -> list[CheckSummary]:
    """Per-check counts, failures and the worst finite margin with its point."""
    by_check: dict[str, list[BoundRecord]] = {}
    for record in records:
        by_check.setdefault(record.check_id, []).append(record)

    summaries = []
    for check_id in sorted(by_check):
        group = by_check[check_id]
        summary = CheckSummary(check_id, len(group), sum(1 for r in group if not r.passed))
        finite = [r for r in group if math.isfinite(r.margin)]
        if finite:
            worst = min(finite, key=lambda r: r.margin)
            summary.worst_margin = worst.margin
            summary.worst_sigma = worst.sigma
            summary.worst_tau = worst.tau
        summaries.append(summary)
    return summaries


def _describe(exc: Exception) -> str:
    return f"{type(exc).__name__}: {exc}"


def evaluate_point(s: complex, check_ids: Iterable[str]) -> list[BoundRecord]:
    """Point and character checks at one s; evaluation errors become failed records."""
    records = []
    for check_id in check_ids:
        info = CHECK_REGISTRY[check_id]
        if info.kind == "point":
            try:
                record = info.evaluate(s)
            except (LindelofLabError, ArithmeticError, ValueError) as exc:
                record = error_record(check_id, s, _describe(exc))
            if record is not None:
                records.append(record)
        elif info.kind == "character":
            for k in sorted(CHARACTERS):
                try:
                    record = info.evaluate(s, CHARACTERS[k])
                except (LindelofLabError, ArithmeticError, ValueError) as exc:
                    record = error_record(check_id, s, f"k={k}: {_describe(exc)}")
                if record is not None:
                    records.append(record)
    return records


def evaluate_sigma(sigma: float, check_ids: Iterable[str], conv: HeavisideConvention) -> list[BoundRecord]:
    records = []
    for check_id in check_ids:
        info = CHECK_REGISTRY[check_id]
        if info.kind != "sigma":
            continue
        try:
            records.append(info.evaluate(sigma, conv))
        except (LindelofLabError, ArithmeticError, ValueError) as exc:
            records.append(error_record(check_id, complex(sigma, 0.0), _describe(exc)))
    return records


def compute_extrema(points: Iterable[complex]) -> dict:
    """sup |chi| / tau^(1/2 - sigma) over the half-strip points with tau >= 1, and the worst
    critical-line deviation | |chi| - 1 |."""
    best_ratio = None
    worst_line = None
    for s in points:
        if not (0.0 <= s.real <= 0.5 and s.imag > 0.0):
            continue
        try:
            modulus = chi(s).modulus
        except LindelofLabError:
            continue
        if s.imag >= 1.0:
            ratio = modulus / s.imag ** (0.5 - s.real)
            if best_ratio is None or ratio > best_ratio["value"]:
                best_ratio = {"value": ratio, "sigma": s.real, "tau": s.imag}
        if s.real == 0.5:
            deviation = abs(modulus - 1.0)
            if worst_line is None or deviation > worst_line["value"]:
                worst_line = {"value": deviation, "sigma": s.real, "tau": s.imag}
    extrema = {}
    if best_ratio is not None:
        extrema["sup_chi_ratio"] = best_ratio
    if worst_line is not None:
        extrema["critical_line_deviation"] = worst_line
    return extrema


def _sort_key(record: BoundRecord) -> tuple:
    return (record.check_id, record.sigma, record.tau, record.note)


def run_bounds_suite(
    grid: GridSpec,
    checks: Iterable[str],
    conv: HeavisideConvention = DEFAULT_CONVENTION,
    workers: int = 1,
    random_points: int = 0,
    seed: int | None = None,
    mu_estimates: list[MuEstimate] | None = None,
    progress: Callable[[str], None] | None = None,
) -> SuiteReport:
    """Evaluate every selected check on the grid (plus optional random points)."""
    check_ids = parse_checks(checks)
    if random_points and seed is None:
        raise DomainError("random points need a seed")

    points = grid.points() + grid.random_points(random_points, seed or 0)
    point_ids = [c for c in check_ids if CHECK_REGISTRY[c].kind != "sigma"]
    sigma_ids = [c for c in check_ids if CHECK_REGISTRY[c].kind == "sigma"]

    records: list[BoundRecord] = []
    if point_ids:
        if progress:
            progress(f"Evaluating {len(point_ids)} check(s) at {len(points)} point(s)...")
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                for batch in pool.map(lambda s: evaluate_point(s, point_ids), points):
                    records.extend(batch)
        else:
            for s in points:
                records.extend(evaluate_point(s, point_ids))
    if sigma_ids:
        for sigma in sorted({s.real for s in points}):
            records.extend(evaluate_sigma(sigma, sigma_ids, conv))

    records.sort(key=_sort_key)
    config_echo = {
        "grid": asdict(grid),
        "checks": check_ids,
        "c0": conv.c0,
        "random_points": random_points,
        "seed": seed,
    }
    return SuiteReport(
        tool_version=__version__,
        config_echo=config_echo,
        records=records,
        summaries=summarize(records),
        mu_estimates=list(mu_estimates or []),
        extrema=compute_extrema(points),
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )
