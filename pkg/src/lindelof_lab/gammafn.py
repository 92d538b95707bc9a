"""Complex Gamma / log-Gamma in double precision.

Moderate arguments use the Lanczos approximation (g = 7, 9 coefficients);
arguments with |s| > 20 use the Stirling series. Arguments left of
Re s = 1/2 are shifted right with the recurrence, which keeps the
principal branch of log Gamma.
"""

import cmath
import math
from dataclasses import dataclass

from scipy.special import bernoulli

from .errors import DomainError, NumericOverflowError, PoleError

# Distance from a non-positive integer treated as a pole hit
POLE_TOL = 1e-12

# Switch to the Stirling series above this modulus
STIRLING_THRESHOLD = 20.0
STIRLING_TERMS = 10

# Machine-level error budget attached to every evaluation
REL_BUDGET = 1e-13
ABS_FLOOR = 1e-300

# Largest x with exp(x) finite in double precision
MAX_EXP = 709.78

HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
LOG_PI = math.log(math.pi)
LOG_2 = math.log(2.0)

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _stirling_coefficients(n_terms: int) -> tuple[float, ...]:
    """B_2k / (2k (2k - 1)) for k = 1..n_terms."""
    b = bernoulli(2 * n_terms)
    return tuple(float(b[2 * k]) / (2 * k * (2 * k - 1)) for k in range(1, n_terms + 1))


# One extra coefficient serves as the truncation estimate
_STIRLING_COEF = _stirling_coefficients(STIRLING_TERMS + 1)


@dataclass(frozen=True)
class Evaluation:
    """A complex value with an absolute error estimate."""

    value: complex
    abs_err: float

    def __post_init__(self):
        if not cmath.isfinite(self.value):
            raise NumericOverflowError(f"non-finite value {self.value!r}")
        if not (self.abs_err >= 0.0 and math.isfinite(self.abs_err)):
            raise ValueError(f"abs_err must be finite and non-negative, got {self.abs_err!r}")

    @property
    def modulus(self) -> float:
        return abs(self.value)


def is_near_pole(s: complex, tol: float = POLE_TOL) -> bool:
    """True when s is within tol of 0, -1, -2, ..."""
    if abs(s.imag) >= tol or s.real > tol:
        return False
    return abs(s.real - round(s.real)) < tol


def _check_pole(s: complex) -> None:
    if is_near_pole(s):
        raise PoleError(f"Gamma has a pole at s = {s.real:g}")


def _lanczos(z: complex) -> complex:
    """log Gamma(z) for Re z >= 1/2."""
    z = z - 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def _stirling(z: complex) -> tuple[complex, float]:
    """log Gamma(z) and the first omitted term, for |z| > STIRLING_THRESHOLD, Re z >= 0."""
    value = (z - 0.5) * cmath.log(z) - z + HALF_LOG_2PI
    inv = 1.0 / z
    inv2 = inv * inv
    term = inv
    for coef in _STIRLING_COEF[:STIRLING_TERMS]:
        value += coef * term
        term *= inv2
    return value, abs(_STIRLING_COEF[STIRLING_TERMS] * term)


def _log_gamma(s: complex) -> tuple[complex, float]:
    shift = 0j
    z = s
    if z.real < 0.5:
        m = math.ceil(0.5 - z.real)
        # log Gamma(z) = log Gamma(z + m) - sum log(z + j) on the principal branch
        shift = sum(cmath.log(z + j) for j in range(m))
        z = z + m
    if abs(z) > STIRLING_THRESHOLD:
        value, tail = _stirling(z)
    else:
        value, tail = _lanczos(z), 0.0
    return value - shift, tail


def log_gamma(s: complex) -> Evaluation:
    """Principal-branch log Gamma(s)."""
    s = complex(s)
    _check_pole(s)
    value, tail = _log_gamma(s)
    if s.imag == 0.0 and s.real > 0.0:
        value = complex(value.real, 0.0)
    return Evaluation(value, REL_BUDGET * abs(value) + ABS_FLOOR + tail)


def gamma(s: complex) -> Evaluation:
    """Gamma(s) = exp(log Gamma(s))."""
    s = complex(s)
    lg = log_gamma(s)
    if abs(lg.value.real) > MAX_EXP:
        raise NumericOverflowError(
            f"|Re log Gamma(s)| = {abs(lg.value.real):.6g} exceeds the double exponent range"
        )
    value = cmath.exp(lg.value)
    if s.imag == 0.0:
        value = complex(value.real, 0.0)
    return Evaluation(value, abs(value) * (lg.abs_err + REL_BUDGET) + ABS_FLOOR)


def log_sinh(x: float) -> float:
    """log sinh(x) for x > 0 without overflow."""
    return x + math.log(-math.expm1(-2.0 * x)) - LOG_2


def abs_gamma_imag_axis(t: float) -> float:
    """|Gamma(it)| = sqrt(pi / (t sinh(pi t))), evaluated in log space."""
    if not t > 0.0:
        raise DomainError(f"t must be positive, got {t!r}")
    return math.exp(0.5 * (LOG_PI - math.log(t) - log_sinh(math.pi * t)))


def log_stirling_abs_bound(s: complex) -> float:
    """Logarithm of the Stirling-type majorant of |Gamma(1 - s)|."""
    s = complex(s)
    r = abs(1.0 - s)
    if r == 0.0:
        raise DomainError("the majorant is undefined at s = 1")
    return (
        HALF_LOG_2PI
        + (0.5 - s.real) * math.log(r)
        - 0.5 * math.pi * abs(s.imag)
        + 1.0 / (6.0 * r)
    )


def stirling_abs_bound(s: complex) -> float:
    """sqrt(2 pi) |1-s|^(1/2-sigma) e^(-pi|tau|/2) exp(1/(6|1-s|)), a majorant of |Gamma(1-s)|."""
    return math.exp(log_stirling_abs_bound(s))
