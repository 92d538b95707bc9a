"""Lindelof mu functions: Heaviside closed forms, empirical growth slopes and mean-value moments."""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np
from scipy.integrate import simpson

from .chifn import CHARACTERS, BoundRecord, chi, chi_k, get_character, l_function, make_record
from .errors import DomainError, FitError, LindelofLabError, QuadratureError, RangeError
from .zetafn import MAX_TAU_HURWITZ, zeta

# Slack for the exact mu algebra
ALGEBRA_TOL = 1e-15

MIN_WINDOWS = 4
MAX_SLOPE_TAU = 1e4
MAX_STEP = 0.1

MOMENT_T_RANGE = (10.0, 5000.0)
MAX_QUAD_STEP = 0.05
# Step-halving disagreement above this fraction is a failure
QUAD_REL_TOL = 0.01

Target = Literal["zeta", "chi", "chi_k", "L"]
StepRule = Callable[[float], float]


@dataclass(frozen=True)
class HeavisideConvention:
    """Value c0 assigned to the unit step at 0; any c0 in (0, 1/2)."""

    c0: float = 0.25

    def __post_init__(self):
        if not 0.0 < self.c0 < 0.5:
            raise DomainError(f"c0 must lie in (0, 1/2), got {self.c0!r}")


DEFAULT_CONVENTION = HeavisideConvention()


@dataclass
class MuEstimate:
    """Growth exponent of |f(sigma + i tau)| fitted over geometric tau windows."""

    sigma: float
    window_maxima: list[tuple[float, float]] = field(default_factory=list)  # (tau_mid, max modulus)
    slope: float = 0.0
    residual_rms: float = 0.0
    target: str = "zeta"
    k: int | None = None
    skipped_samples: int = 0  # samples that raised or were not finite

    def to_dict(self) -> dict:
        return {
            "sigma": self.sigma,
            "target": self.target,
            "k": self.k,
            "window_maxima": [list(pair) for pair in self.window_maxima],
            "slope": self.slope,
            "residual_rms": self.residual_rms,
            "skipped_samples": self.skipped_samples,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MuEstimate":
        return cls(
            sigma=data["sigma"],
            window_maxima=[(float(t), float(m)) for t, m in data.get("window_maxima", [])],
            slope=data["slope"],
            residual_rms=data.get("residual_rms", 0.0),
            target=data.get("target", "zeta"),
            k=data.get("k"),
            skipped_samples=data.get("skipped_samples", 0),
        )


@dataclass(frozen=True)
class MomentResult:
    """(1/T) int_1^T |zeta(1/2 + it)|^(2k) dt and its error estimate."""

    k: int
    T: float
    normalized_moment: float
    quadrature_err: float


def heaviside(x: float, conv: HeavisideConvention = DEFAULT_CONVENTION) -> float:
    if x > 0.0:
        return 1.0
    if x < 0.0:
        return 0.0
    return conv.c0


def _mu_from_shift(shift: float, conv: HeavisideConvention) -> float:
    return shift * heaviside(shift, conv)


def mu_chi_closed(sigma: float, conv: HeavisideConvention = DEFAULT_CONVENTION) -> float:
    """(1/2 - sigma) H(1/2 - sigma)."""
    return _mu_from_shift(0.5 - sigma, conv)


def mu_functional_eq_residual(sigma: float, conv: HeavisideConvention = DEFAULT_CONVENTION) -> float:
    """[mu(sigma) - mu(1 - sigma)] - (1/2 - sigma) for the closed form; identically zero.

    1/2 - (1 - sigma) is formed as -(1/2 - sigma) so that no rounding enters.
    """
    shift = 0.5 - sigma
    return (_mu_from_shift(shift, conv) - _mu_from_shift(-shift, conv)) - shift


def mu_k_closed(sigma: float, k: int, conv: HeavisideConvention = DEFAULT_CONVENTION) -> float:
    """mu of chi_k; the factor k^(1/2 - s) has constant modulus on vertical lines."""
    if k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    return mu_chi_closed(sigma, conv)


def mu_alternative_a(sigma: float) -> float:
    """(1 - sigma) / 2, another solution of mu(sigma) - mu(1 - sigma) = 1/2 - sigma."""
    return 0.5 * (1.0 - sigma)


def mu_alternative_b(sigma: float) -> float:
    """(1 - sigma)^2 / 2, likewise a solution of the mu functional equation."""
    return 0.5 * (1.0 - sigma) ** 2


def _alternative_residual(mu: Callable[[float], float], sigma: float) -> float:
    return (mu(sigma) - mu(1.0 - sigma)) - (0.5 - sigma)


def default_step(tau: float) -> float:
    """min(0.1, pi / log tau): several samples per mean zero gap of zeta."""
    if tau <= math.e:
        return MAX_STEP
    return min(MAX_STEP, math.pi / math.log(tau))


def _modulus_function(target: Target, sigma: float, k: int | None) -> Callable[[float], float]:
    if target == "zeta":
        return lambda tau: zeta(complex(sigma, tau)).modulus
    if target == "chi":
        return lambda tau: chi(complex(sigma, tau)).modulus
    if target == "chi_k":
        if k is None or k < 1:
            raise DomainError("target chi_k needs a positive modulus k")
        return lambda tau: chi_k(complex(sigma, tau), k).modulus
    if target == "L":
        if k is None:
            raise DomainError(f"target L needs a character modulus, one of {sorted(CHARACTERS)}")
        spec = get_character(k)
        return lambda tau: l_function(complex(sigma, tau), spec).modulus
    raise DomainError(f"unknown target {target!r}")


def _window_maximum(
    modulus: Callable[[float], float], lo: float, hi: float, step_rule: StepRule
) -> tuple[float | None, int]:
    """Largest sampled modulus on [lo, hi], or None, and how many samples could not be evaluated."""
    # the step rule is non-increasing in tau, so its value at hi is the finest needed
    step = step_rule(hi)
    if not step > 0:
        raise DomainError(f"step rule returned a non-positive step {step!r} at tau = {hi:g}")
    n = max(2, int(math.ceil((hi - lo) / step)) + 1)
    best = None
    skipped = 0
    for tau in np.linspace(lo, hi, n):
        try:
            value = modulus(float(tau))
        except LindelofLabError:
            skipped += 1
            continue
        if not math.isfinite(value):
            skipped += 1
        elif best is None or value > best:
            best = value
    return best, skipped


def estimate_mu_slope(
    target: Target,
    sigma: float,
    tau_min: float,
    tau_max: float,
    windows: int = 8,
    step_rule: StepRule = default_step,
    k: int | None = None,
    workers: int = 1,
) -> MuEstimate:
    """Least-squares slope of log(window max |f|) against log(tau_mid) over geometric windows."""
    if not 1.0 <= tau_min < tau_max <= MAX_SLOPE_TAU:
        raise RangeError(f"need 1 <= tau_min < tau_max <= {MAX_SLOPE_TAU:g}, got [{tau_min:g}, {tau_max:g}]")
    if target == "L" and tau_max > MAX_TAU_HURWITZ:
        raise RangeError(f"target L supports tau_max <= {MAX_TAU_HURWITZ:g}")
    if windows < MIN_WINDOWS:
        raise FitError(f"need at least {MIN_WINDOWS} windows, got {windows}")

    modulus = _modulus_function(target, sigma, k)
    edges = np.geomspace(tau_min, tau_max, windows + 1)
    bounds = list(zip(edges[:-1].tolist(), edges[1:].tolist()))

    def window_max(bound: tuple[float, float]) -> tuple[float | None, int]:
        return _window_maximum(modulus, bound[0], bound[1], step_rule)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(window_max, bounds))
    else:
        results = [window_max(b) for b in bounds]
    maxima = [m for m, _ in results]
    skipped = sum(n for _, n in results)

    window_maxima = [
        (math.sqrt(lo * hi), m) for (lo, hi), m in zip(bounds, maxima) if m is not None and m > 0.0
    ]
    if len(window_maxima) < MIN_WINDOWS:
        raise FitError(
            f"only {len(window_maxima)} usable windows, need {MIN_WINDOWS} ({skipped} samples failed to evaluate)"
        )

    log_tau = np.log([t for t, _ in window_maxima])
    log_max = np.log([m for _, m in window_maxima])
    slope, intercept = np.polyfit(log_tau, log_max, 1)
    residuals = log_max - (slope * log_tau + intercept)
    return MuEstimate(
        sigma=sigma,
        window_maxima=window_maxima,
        slope=float(slope),
        residual_rms=float(np.sqrt(np.mean(residuals**2))),
        target=target,
        k=k,
        skipped_samples=skipped,
    )


def moment_integral(k: int, T: float, quad_step: float = MAX_QUAD_STEP) -> MomentResult:
    """Composite Simpson for (1/T) int_1^T |zeta(1/2 + it)|^(2k) dt, checked by step halving."""
    if k not in (1, 2):
        raise DomainError(f"only k = 1, 2 are supported, got {k!r}")
    if not MOMENT_T_RANGE[0] <= T <= MOMENT_T_RANGE[1]:
        raise RangeError(f"T = {T:g} outside [{MOMENT_T_RANGE[0]:g}, {MOMENT_T_RANGE[1]:g}]")
    if not 0.0 < quad_step <= MAX_QUAD_STEP:
        raise RangeError(f"quad_step must lie in (0, {MAX_QUAD_STEP:g}], got {quad_step!r}")

    # coarse grid has an even number of intervals of width <= quad_step; the fine grid halves it
    n_coarse = int(math.ceil((T - 1.0) / quad_step))
    n_coarse += n_coarse % 2
    t = np.linspace(1.0, T, 2 * n_coarse + 1)

    values = np.empty_like(t)
    zeta_err = np.empty_like(t)
    for i, ti in enumerate(t):
        ev = zeta(complex(0.5, float(ti)))
        values[i] = ev.modulus ** (2 * k)
        zeta_err[i] = 2 * k * ev.modulus ** (2 * k - 1) * ev.abs_err

    fine = simpson(values, x=t) / T
    coarse = simpson(values[::2], x=t[::2]) / T
    disagreement = abs(fine - coarse)
    if disagreement > QUAD_REL_TOL * abs(fine):
        raise QuadratureError(
            f"step halving changed the moment by {disagreement / abs(fine):.2%} (> {QUAD_REL_TOL:.0%})"
        )
    propagated = float(simpson(zeta_err, x=t)) / T
    return MomentResult(k=k, T=T, normalized_moment=float(fine), quadrature_err=disagreement + propagated)


# -- sigma-only checks, recorded at s = sigma + 0i ---------------------------------------

def check_heaviside_partition(sigma: float, conv: HeavisideConvention = DEFAULT_CONVENTION) -> BoundRecord:
    """H(sigma - 1/2) + H(1/2 - sigma): 1 off the jump, 2 c0 on it."""
    lhs = heaviside(sigma - 0.5, conv) + heaviside(0.5 - sigma, conv)
    rhs = 2.0 * conv.c0 if sigma == 0.5 else 1.0
    return make_record("heaviside-partition", complex(sigma, 0.0), lhs, rhs, ALGEBRA_TOL, equality=True)


def check_mu_closed_form(sigma: float, conv: HeavisideConvention = DEFAULT_CONVENTION) -> BoundRecord:
    lhs = mu_chi_closed(sigma, conv)
    rhs = 0.5 - sigma if sigma < 0.5 else 0.0
    return make_record("mu-closed-form", complex(sigma, 0.0), lhs, rhs, ALGEBRA_TOL, equality=True)


def check_mu_functional_eq(sigma: float, conv: HeavisideConvention = DEFAULT_CONVENTION) -> BoundRecord:
    lhs = abs(mu_functional_eq_residual(sigma, conv))
    return make_record("mu-functional-eq", complex(sigma, 0.0), lhs, 0.0, ALGEBRA_TOL, equality=True)


def check_mu_nonunique(sigma: float, conv: HeavisideConvention = DEFAULT_CONVENTION) -> BoundRecord:
    """The functional equation alone does not pin mu down: two smooth solutions."""
    lhs = max(
        abs(_alternative_residual(mu_alternative_a, sigma)),
        abs(_alternative_residual(mu_alternative_b, sigma)),
    )
    # the squares round at the scale of (1 - sigma)^2
    tol = ALGEBRA_TOL * max(1.0, (1.0 - sigma) ** 2, sigma**2)
    return make_record(
        "mu-nonunique", complex(sigma, 0.0), lhs, 0.0, tol, equality=True, note="(1-s)/2, (1-s)^2/2"
    )
