"""The chi-factor of the Riemann functional equation, its bounds and its Dirichlet analogue.

chi(s) = (1/pi) (2 pi)^s sin(pi s / 2) Gamma(1 - s) is evaluated in log space
so that |tau| up to 1e4 neither overflows the sine nor underflows Gamma.
"""

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import CharacterError, DomainError, IndeterminateError, NumericOverflowError, PoleError
from .gammafn import (
    LOG_2,
    LOG_PI,
    MAX_EXP,
    POLE_TOL,
    Evaluation,
    log_gamma,
    log_stirling_abs_bound,
)

LOG_2PI = math.log(2.0 * math.pi)
EPS = 2.220446049250313e-16

# Slack for identities on unit-scale quantities
IDENTITY_TOL = 1e-9
# Relative slack for comparisons that are sharp in the limit
SHARP_REL_TOL = 1e-12
# Asymptotic checks apply from this height on, with tolerance ASYMPTOTIC_SCALE / tau^2
ASYMPTOTIC_MIN_TAU = 10.0
ASYMPTOTIC_SCALE = 4.0
# Explicit constant of the strip bound
K_BOUND = 8.0


@dataclass
class BoundRecord:
    """One inequality or identity check at one sample point."""

    check_id: str
    sigma: float
    tau: float
    lhs: float
    rhs: float
    margin: float  # rhs - lhs for inequalities, -|lhs - rhs| for identities
    passed: bool
    note: str = ""

    @property
    def s(self) -> complex:
        return complex(self.sigma, self.tau)

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "sigma": self.sigma,
            "tau": self.tau,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "pass": self.passed,
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BoundRecord":
        return cls(
            check_id=data["check_id"],
            sigma=data["sigma"],
            tau=data["tau"],
            lhs=data["lhs"],
            rhs=data["rhs"],
            margin=data["margin"],
            passed=data["pass"],
            # Older reports carry no note
            note=data.get("note", ""),
        )


def make_record(
    check_id: str,
    s: complex,
    lhs: float,
    rhs: float,
    tol: float,
    equality: bool = False,
    note: str = "",
) -> BoundRecord:
    """Build a record; pass iff margin >= -tol."""
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        return error_record(check_id, s, f"non-finite comparison ({lhs!r} vs {rhs!r})")
    margin = -abs(lhs - rhs) if equality else rhs - lhs
    return BoundRecord(check_id, s.real, s.imag, lhs, rhs, margin, margin >= -tol, note)


def error_record(check_id: str, s: complex, reason: str) -> BoundRecord:
    """A failed record standing in for a point whose evaluation raised."""
    nan = float("nan")
    return BoundRecord(check_id, s.real, s.imag, nan, nan, nan, False, f"error: {reason}")


@dataclass(frozen=True)
class CharacterSpec:
    """A real Dirichlet character mod k given by its table chi(0), ..., chi(k-1)."""

    modulus: int
    values: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __call__(self, n: int) -> int:
        return self.values[n % self.modulus]

    def validate(self) -> None:
        """Raise CharacterError unless the character is real, primitive and even."""
        k = self.modulus
        if k < 2 or len(self.values) != k:
            raise CharacterError(f"need {k} values for modulus {k}, got {len(self.values)}")
        if any(v not in (-1, 0, 1) for v in self.values):
            raise CharacterError("values must be -1, 0 or 1")
        for a in range(k):
            coprime = math.gcd(a, k) == 1
            if coprime != (self.values[a] != 0):
                raise CharacterError(f"chi({a}) must vanish exactly when gcd({a}, {k}) > 1")
        if self.values[1] != 1:
            raise CharacterError("chi(1) must equal 1")
        for a in range(k):
            for b in range(a, k):
                if self.values[(a * b) % k] != self.values[a] * self.values[b]:
                    raise CharacterError(f"not multiplicative: chi({a}*{b}) != chi({a}) chi({b})")
        if self.values[k - 1] != 1:
            raise CharacterError("character must be even (chi(k-1) = 1)")
        for d in range(1, k):
            if k % d:
                continue
            induced = all(
                self.values[a] == 1
                for a in range(1, k)
                if a % d == 1 % d and math.gcd(a, k) == 1
            )
            if induced:
                raise CharacterError(f"character is induced from modulus {d}, not primitive")


CHARACTERS: dict[int, CharacterSpec] = {
    5: CharacterSpec(5, (0, 1, -1, -1, 1), "Legendre symbol (n|5)"),
    8: CharacterSpec(8, (0, 1, 0, -1, 0, -1, 0, 1), "Kronecker symbol (8|n)"),
    12: CharacterSpec(12, (0, 1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1), "Kronecker symbol (12|n)"),
}


def get_character(k: int) -> CharacterSpec:
    try:
        return CHARACTERS[k]
    except KeyError:
        raise CharacterError(f"no built-in character mod {k}; available: {sorted(CHARACTERS)}") from None


def log_sin(z: complex) -> complex:
    """A logarithm of sin(z), continuous in Re z on each half-plane, without overflow."""
    if z.imag > 0.0:
        return 0.5j * math.pi - LOG_2 - 1j * z + cmath.log(1.0 - cmath.exp(2j * z))
    if z.imag < 0.0:
        return -0.5j * math.pi - LOG_2 + 1j * z + cmath.log(1.0 - cmath.exp(-2j * z))
    return cmath.log(complex(math.sin(z.real), 0.0))


def _nearest_integer(s: complex) -> int | None:
    if abs(s.imag) >= POLE_TOL:
        return None
    n = round(s.real)
    return int(n) if abs(s.real - n) < POLE_TOL else None


def log_chi(s: complex) -> tuple[complex, float]:
    """log chi(s) and its absolute error, away from the integer special points."""
    s = complex(s)
    lg = log_gamma(1.0 - s)
    value = -LOG_PI + s * LOG_2PI + log_sin(0.5 * math.pi * s) + lg.value
    # rounding in each term of the log; the Stirling tail is far below this
    err = 4.0 * EPS * (1.0 + abs(s) * (LOG_2PI + 0.5 * math.pi) + abs(lg.value))
    return value, err


def chi(s: complex, allow_limits: bool = True) -> Evaluation:
    """chi(s) = zeta(s) / zeta(1 - s).

    Poles at s = 1, 3, 5, ...; at s = 2, 4, 6, ... the sine zero cancels the
    Gamma pole and the finite limit is returned unless allow_limits is False.
    """
    s = complex(s)
    n = _nearest_integer(s)
    if n is not None and n >= 1:
        if n % 2 == 1:
            raise PoleError(f"chi has a pole at s = {n}")
        if not allow_limits:
            raise IndeterminateError(f"removable singularity of chi at s = {n}")
        m = n // 2
        # (-1)^m (2 pi)^(2m) / (2 (2m - 1)!)
        log_abs = n * LOG_2PI - LOG_2 - math.lgamma(n)
        if log_abs > MAX_EXP:
            raise NumericOverflowError(f"|chi({n})| overflows")
        value = (-1.0) ** m * math.exp(log_abs)
        return Evaluation(complex(value, 0.0), 8.0 * EPS * (1.0 + log_abs) * abs(value))
    if n is not None and n % 2 == 0:
        # trivial zeros: sin(pi s / 2) = 0 with Gamma(1 - s) finite
        return Evaluation(0j, 0.0)

    log_value, log_err = log_chi(s)
    if log_value.real > MAX_EXP:
        raise NumericOverflowError(f"|chi(s)| overflows at s = {s}")
    value = cmath.exp(log_value)
    if s.imag == 0.0:
        value = complex(value.real, 0.0)
    return Evaluation(value, abs(value) * log_err)


def chi_symmetric(s: complex) -> Evaluation:
    """chi(s) = pi^(s - 1/2) Gamma((1 - s)/2) / Gamma(s/2), an independent route."""
    s = complex(s)
    upper = log_gamma(0.5 * (1.0 - s))
    lower = log_gamma(0.5 * s)
    log_value = (s - 0.5) * LOG_PI + upper.value - lower.value
    if log_value.real > MAX_EXP:
        raise NumericOverflowError(f"|chi(s)| overflows at s = {s}")
    value = cmath.exp(log_value)
    if s.imag == 0.0:
        value = complex(value.real, 0.0)
    log_err = 4.0 * EPS * (1.0 + abs(s) * LOG_PI + abs(upper.value) + abs(lower.value))
    return Evaluation(value, abs(value) * log_err)


def abs_chi_imag_axis(t: float) -> float:
    """|chi(it)| = sqrt(t / 2 pi) (1 - e^(-pi t)) / sqrt(1 - e^(-2 pi t))."""
    if not t > 0.0:
        raise DomainError(f"t must be positive, got {t!r}")
    return math.sqrt(t / (2.0 * math.pi)) * (-math.expm1(-math.pi * t)) / math.sqrt(-math.expm1(-2.0 * math.pi * t))


def chi_asymptotic(s: complex) -> float:
    """(tau / 2 pi)^(1/2 - sigma), the leading behaviour of |chi| as tau grows."""
    s = complex(s)
    if not s.imag > 0.0:
        raise DomainError(f"tau must be positive, got {s.imag!r}")
    return math.exp((0.5 - s.real) * math.log(s.imag / (2.0 * math.pi)))


def chi_k(s: complex, k: int) -> Evaluation:
    """chi_k(s) = k^(1/2 - s) chi(s), the ratio L_k(s) / L_k(1 - s)."""
    if k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    s = complex(s)
    base = chi(s)
    scale = cmath.exp((0.5 - s) * math.log(k))
    return Evaluation(base.value * scale, base.abs_err * abs(scale))


def l_function(s: complex, chi_spec: CharacterSpec) -> Evaluation:
    """L(s, chi) = k^(-s) sum_a chi(a) zeta(s, a/k) for an even real primitive character."""
    from .zetafn import hurwitz_zeta

    chi_spec.validate()
    s = complex(s)
    k = chi_spec.modulus
    total = 0j
    err = 0.0
    for a in range(1, k + 1):
        weight = chi_spec(a)
        if weight == 0:
            continue
        hz = hurwitz_zeta(s, a / k)
        total += weight * hz.value
        err += hz.abs_err
    scale = cmath.exp(-s * math.log(k))
    return Evaluation(total * scale, err * abs(scale) + 4.0 * EPS * abs(total * scale))


def affine_exponent(sigma: float, p: float, q: float, sigma1: float, sigma2: float) -> float:
    """The affine interpolant taking p at sigma1 and q at sigma2."""
    if sigma2 == sigma1:
        raise DomainError("sigma1 and sigma2 must differ")
    return (q - p) / (sigma2 - sigma1) * (sigma - sigma1) + p


# -- individual checks: each returns None where it does not apply ------------------------

def _in_half_strip(s: complex) -> bool:
    return -POLE_TOL <= s.real <= 0.5 + POLE_TOL


def _on_line(sigma: float, line: float) -> bool:
    return abs(sigma - line) < POLE_TOL


def _abs_sin_scaled(s: complex) -> float:
    """|sin(pi s / 2)| e^(-pi |tau| / 2)."""
    z = 0.5 * math.pi * s
    if s.imag == 0.0:
        return abs(math.sin(z.real))
    return math.exp(log_sin(z).real - 0.5 * math.pi * abs(s.imag))


def check_k8_strip(s: complex) -> BoundRecord | None:
    if not _in_half_strip(s) or abs(s.imag) < 1.0:
        return None
    rhs = K_BOUND * abs(s.imag) ** (0.5 - s.real)
    return make_record("K8-strip", s, chi(s).modulus, rhs, SHARP_REL_TOL * rhs)


def check_k8_global(s: complex) -> BoundRecord | None:
    if not _in_half_strip(s):
        return None
    rhs = max(K_BOUND * abs(s.imag) ** (0.5 - s.real), K_BOUND)
    return make_record("K8-global", s, chi(s).modulus, rhs, SHARP_REL_TOL * rhs)


def check_sharp_imag_axis(s: complex) -> BoundRecord | None:
    if not _on_line(s.real, 0.0) or s.imag <= 0.0:
        return None
    s = complex(0.0, s.imag)
    rhs = math.sqrt(s.imag / (2.0 * math.pi))
    return make_record("sharp-imag-axis", s, chi(s).modulus, rhs, SHARP_REL_TOL * rhs)


def check_critical_line(s: complex) -> BoundRecord | None:
    if not _on_line(s.real, 0.5):
        return None
    s = complex(0.5, s.imag)
    return make_record("critical-line-modulus", s, chi(s).modulus, 1.0, IDENTITY_TOL, equality=True)


def check_a5_majorant(s: complex) -> BoundRecord | None:
    if not _in_half_strip(s) or abs(s.imag) < 1.0:
        return None
    lhs = math.exp(log_gamma(1.0 - s).value.real + log_sin(0.5 * math.pi * s).real)
    rhs = 2.0 * math.sqrt(2.0 * math.pi) * abs(1.0 - s) ** (0.5 - s.real)
    return make_record("A5-majorant", s, lhs, rhs, SHARP_REL_TOL * rhs)


def check_a9_majorant(s: complex) -> BoundRecord | None:
    if not _in_half_strip(s) or abs(s.imag) < 1.0:
        return None
    lhs = abs(1.0 - s) ** (0.5 - s.real)
    rhs = 2.0 * abs(s.imag) ** (0.5 - s.real)
    return make_record("A9-majorant", s, lhs, rhs, SHARP_REL_TOL * rhs)


def check_a3_sine(s: complex) -> BoundRecord | None:
    if not _in_half_strip(s):
        return None
    return make_record("A3-sine", s, _abs_sin_scaled(s), 1.0, SHARP_REL_TOL, note="scaled by e^(-pi|tau|/2)")


def check_a4_stirling(s: complex) -> BoundRecord | None:
    if not _in_half_strip(s) or abs(s.imag) < 1.0:
        return None
    scale = 0.5 * math.pi * abs(s.imag)
    lhs = math.exp(log_gamma(1.0 - s).value.real + scale)
    rhs = math.exp(log_stirling_abs_bound(s) + scale)
    return make_record("A4-stirling", s, lhs, rhs, SHARP_REL_TOL * rhs, note="scaled by e^(pi|tau|/2)")


def check_a6_prefactor(s: complex) -> BoundRecord | None:
    if not _in_half_strip(s):
        return None
    lhs = 2.0 * math.exp((s.real - 0.5) * LOG_2PI)
    return make_record("A6-prefactor", s, lhs, 2.0, SHARP_REL_TOL)


def check_a7_majorant(s: complex) -> BoundRecord | None:
    if not _in_half_strip(s) or abs(s.imag) < 1.0:
        return None
    rhs = 4.0 * abs(1.0 - s) ** (0.5 - s.real)
    return make_record("A7-majorant", s, chi(s).modulus, rhs, SHARP_REL_TOL * rhs)


def check_a14_rectangle(s: complex) -> BoundRecord | None:
    if not _in_half_strip(s) or abs(s.imag) > 1.0:
        return None
    return make_record("A14-rectangle", s, chi(s).modulus, K_BOUND, SHARP_REL_TOL * K_BOUND)


def check_affine_exponent(s: complex) -> BoundRecord | None:
    if not _in_half_strip(s) or abs(s.imag) < 1.0:
        return None
    exponent = affine_exponent(s.real, p=0.5, q=0.0, sigma1=0.0, sigma2=0.5)
    rhs = K_BOUND * abs(s.imag) ** exponent
    return make_record("affine-exponent", s, chi(s).modulus, rhs, SHARP_REL_TOL * rhs)


def check_asymptotic_ratio(s: complex) -> BoundRecord | None:
    if s.imag < ASYMPTOTIC_MIN_TAU:
        return None
    ratio = chi(s).modulus / chi_asymptotic(s)
    return make_record("asymptotic-ratio", s, ratio, 1.0, ASYMPTOTIC_SCALE / s.imag**2, equality=True)


def check_reflection(s: complex) -> BoundRecord | None:
    residual = abs(chi(s).value * chi(1.0 - s).value - 1.0)
    return make_record("reflection-identity", s, residual, 0.0, IDENTITY_TOL, equality=True)


def check_mirror(s: complex) -> BoundRecord | None:
    upper = chi(s).modulus
    lower = chi(s.conjugate()).modulus
    return make_record("mirror-symmetry", s, upper, lower, SHARP_REL_TOL * max(1.0, lower), equality=True)


def check_chik_asymptotic(s: complex, k: int) -> BoundRecord | None:
    if s.imag < ASYMPTOTIC_MIN_TAU:
        return None
    expected = math.exp((0.5 - s.real) * (math.log(k / (2.0 * math.pi)) + math.log(s.imag)))
    ratio = chi_k(s, k).modulus / expected
    return make_record(
        "chik-asymptotic", s, ratio, 1.0, ASYMPTOTIC_SCALE / s.imag**2, equality=True, note=f"k={k}"
    )


def check_lk_functional_eq(s: complex, chi_spec: CharacterSpec) -> BoundRecord | None:
    if not -1.0 < s.real < 2.0 or abs(s.imag) > 1e3:
        return None
    k = chi_spec.modulus
    left = l_function(s, chi_spec).value
    right = chi_k(s, k).value * l_function(1.0 - s, chi_spec).value
    tol = 1e-8 * max(1.0, abs(left))
    return make_record("Lk-functional-eq", s, abs(left - right), 0.0, tol, equality=True, note=f"k={k}")


BOUND_CHAIN: tuple[Callable[[complex], BoundRecord | None], ...] = (
    check_k8_strip,
    check_k8_global,
    check_sharp_imag_axis,
    check_critical_line,
    check_a5_majorant,
    check_a9_majorant,
)


def chi_bound_suite(s: complex) -> list[BoundRecord]:
    """The explicit K = 8 bound chain at one point of the half-strip 0 <= sigma <= 1/2."""
    s = complex(s)
    if not _in_half_strip(s):
        raise DomainError(f"sigma = {s.real:g} is outside 0 <= sigma <= 1/2")
    records = []
    for check in BOUND_CHAIN:
        record = check(s)
        if record is not None:
            records.append(record)
    return records
