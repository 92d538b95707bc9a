"""Riemann and Hurwitz zeta via Euler-Maclaurin, with an alternating-series cross-check."""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import bernoulli

from .chifn import chi
from .errors import DomainError, PoleError, RangeError
from .gammafn import Evaluation, log_gamma

# Guard radius around the pole at s = 1
POLE_RADIUS = 1e-8

MAX_TAU = 2e4
MAX_TAU_ETA = 1e3
MAX_TAU_HURWITZ = 1e3
MIN_TERMS = 20
EPS = 2.220446049250313e-16

# Borwein acceleration converges like (3 + sqrt 8)^-n
_BORWEIN_RATE = math.log(3.0 + math.sqrt(8.0))
_MAX_ETA_TERMS = 2000


@dataclass(frozen=True)
class ZetaConfig:
    """Euler-Maclaurin tuning."""

    em_terms_factor: float = 1.3  # direct-sum cutoff N ~ factor * |tau|
    bernoulli_terms: int = 8
    target_abs_err: float = 1e-13

    def __post_init__(self):
        if not self.em_terms_factor > 0:
            raise DomainError("em_terms_factor must be positive")
        if not 2 <= self.bernoulli_terms <= 30:
            raise DomainError("bernoulli_terms must lie in [2, 30]")
        if not self.target_abs_err >= 1e-13:
            raise DomainError("target_abs_err must be >= 1e-13")


DEFAULT_CONFIG = ZetaConfig()

# B_2k / (2k)! for k = 1..31, immutable after import
_BERNOULLI = bernoulli(62)
_EM_COEF = tuple(float(_BERNOULLI[2 * k]) / math.factorial(2 * k) for k in range(1, 32))


def _check_pole(s: complex) -> None:
    if abs(s - 1.0) <= POLE_RADIUS:
        raise PoleError("zeta has a pole at s = 1")


@lru_cache(maxsize=None)
def _log_block(size: int) -> np.ndarray:
    table = np.log(np.arange(1, size + 1, dtype=float))
    table.flags.writeable = False
    return table


def _log_table(n: int) -> np.ndarray:
    """log(1..n), read-only; backed by power-of-two blocks shared across calls."""
    return _log_block(1 << max(n - 1, 1).bit_length())[:n]


def _power_sum(s: complex, a: float, n_terms: int) -> tuple[complex, float]:
    """sum_{n=0}^{n_terms-1} (n + a)^(-s) and the sum of the moduli of its terms."""
    if n_terms <= 0:
        return 0j, 0.0
    if a == 1.0:
        logs = _log_table(n_terms)
    else:
        logs = np.log(np.arange(n_terms, dtype=float) + a)
    return complex(np.sum(np.exp(-s * logs))), float(np.sum(np.exp(-s.real * logs)))


def _euler_maclaurin(s: complex, a: float, cfg: ZetaConfig) -> Evaluation:
    """sum_{n>=0} (n + a)^(-s), lengthening the direct sum until the tail meets the target."""
    n_direct = max(MIN_TERMS, int(math.ceil(cfg.em_terms_factor * abs(s.imag))))
    value, omitted, rounding = _euler_maclaurin_once(s, a, n_direct, cfg.bernoulli_terms)
    for _ in range(4):
        if omitted <= cfg.target_abs_err * max(1.0, abs(value)):
            break
        n_direct = int(n_direct * 1.6)
        value, omitted, rounding = _euler_maclaurin_once(s, a, n_direct, cfg.bernoulli_terms)
    return Evaluation(value, omitted + rounding)


def _euler_maclaurin_once(
    s: complex, a: float, n_direct: int, bernoulli_terms: int
) -> tuple[complex, float, float]:
    """(value, first omitted correction, rounding estimate) for a fixed cutoff."""
    head, magnitude = _power_sum(s, a, n_direct)

    x = n_direct + a
    log_x = math.log(x)
    x_pow = cmath.exp(-s * log_x)  # x^(-s)
    tail = x * x_pow / (s - 1.0) + 0.5 * x_pow

    # term_k = B_2k/(2k)! * s(s+1)...(s+2k-2) * x^(-s-2k+1)
    rising = s
    power = x_pow / x
    omitted = 0.0
    for k in range(1, bernoulli_terms + 2):
        term = _EM_COEF[k - 1] * rising * power
        if k > bernoulli_terms:
            omitted = abs(term)
            break
        tail += term
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        power /= x * x

    value = head + tail
    # each term carries a phase error of about eps * |s| log x
    rounding = EPS * (1.0 + abs(s) * log_x) * magnitude + EPS * abs(value)
    return value, omitted, rounding


def zeta_em(s: complex, cfg: ZetaConfig = DEFAULT_CONFIG) -> Evaluation:
    """zeta(s) by Euler-Maclaurin summation (sigma >= -1, |tau| <= 2e4)."""
    s = complex(s)
    _check_pole(s)
    if abs(s.imag) > MAX_TAU:
        raise RangeError(f"|tau| = {abs(s.imag):g} exceeds the supported {MAX_TAU:g}")
    if s.real < -1.0:
        raise RangeError(f"sigma = {s.real:g} is below the supported -1; use zeta()")
    return _euler_maclaurin(s, 1.0, cfg)


@lru_cache(maxsize=64)
def _borwein_weights(n: int) -> np.ndarray:
    """(d_n - d_k) / d_n for k = 0..n-1, computed from positive summands in log space."""
    i = np.arange(n + 1, dtype=float)
    # log of n (n+i-1)! 4^i / ((n-i)! (2i)!)
    log_terms = np.array([
        math.log(n) + math.lgamma(n + k) + k * math.log(4.0) - math.lgamma(n - k + 1) - math.lgamma(2 * k + 1)
        for k in i.astype(int)
    ])
    terms = np.exp(log_terms - log_terms.max())
    total = terms.sum()
    # sum_{i>k} terms_i
    upper = np.cumsum(terms[::-1])[::-1]
    weights = np.append(upper[1:], 0.0)[:n] / total
    weights.flags.writeable = False
    return weights


def _eta_terms(s: complex, tol: float) -> int:
    """Smallest n with the acceleration error bound below tol."""
    tau = abs(s.imag)
    inv_gamma = -log_gamma(s).value.real
    log_bound = math.log(3.0 * (1.0 + 2.0 * tau)) + inv_gamma - math.log(tol)
    n = int(math.ceil(log_bound / _BORWEIN_RATE)) + 1
    return min(max(n, 10), _MAX_ETA_TERMS)


def zeta_eta(s: complex, tol: float = 1e-15) -> Evaluation:
    """zeta(s) from the accelerated alternating series (sigma > 0, |tau| <= 1e3)."""
    s = complex(s)
    _check_pole(s)
    if not s.real > 0.0:
        raise DomainError(f"the alternating series needs sigma > 0, got {s.real:g}")
    if abs(s.imag) > MAX_TAU_ETA:
        raise RangeError(f"|tau| = {abs(s.imag):g} exceeds the supported {MAX_TAU_ETA:g}")
    factor = 1.0 - cmath.exp((1.0 - s) * math.log(2.0))
    if abs(factor) < 1e-10:
        raise DomainError(f"1 - 2^(1-s) vanishes near s = {s}")

    n = _eta_terms(s, tol)
    weights = _borwein_weights(n)
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    powers = np.exp(-s * _log_table(n))
    series = complex(np.sum(signs * weights * powers))
    value = series / factor

    log_err = (
        math.log(3.0 * (1.0 + 2.0 * abs(s.imag)))
        - n * _BORWEIN_RATE
        - log_gamma(s).value.real
        - math.log(abs(factor))
    )
    acceleration = math.exp(min(log_err, 700.0))
    rounding = 1e-15 * n / abs(factor)
    return Evaluation(value, acceleration + rounding)


def zeta(s: complex, cfg: ZetaConfig = DEFAULT_CONFIG) -> Evaluation:
    """zeta(s) on the whole plane minus s = 1.

    Right of the critical line this is zeta_em; left of it the functional
    equation zeta(s) = chi(s) zeta(1 - s) is applied.
    """
    s = complex(s)
    _check_pole(s)
    # near s = 0 the mirror point sits on the pole, and the direct sum is harmless there
    if s.real >= 0.5 or abs(s) < 0.5:
        return zeta_em(s, cfg)

    factor = chi(s)
    mirror = zeta_em(1.0 - s, cfg)
    value = factor.value * mirror.value
    abs_err = abs(factor.value) * mirror.abs_err + factor.abs_err * abs(mirror.value)
    if s.imag == 0.0:
        value = complex(value.real, 0.0)
    return Evaluation(value, abs_err)


def hurwitz_zeta(s: complex, a: float, cfg: ZetaConfig = DEFAULT_CONFIG) -> Evaluation:
    """zeta(s, a) = sum_{n>=0} (n + a)^(-s) for 0 < a <= 1."""
    s = complex(s)
    _check_pole(s)
    if not 0.0 < a <= 1.0:
        raise DomainError(f"a must lie in (0, 1], got {a!r}")
    if not s.real > -1.0:
        raise RangeError(f"sigma = {s.real:g} is outside the supported sigma > -1")
    if abs(s.imag) > MAX_TAU_HURWITZ:
        raise RangeError(f"|tau| = {abs(s.imag):g} exceeds the supported {MAX_TAU_HURWITZ:g}")
    return _euler_maclaurin(s, float(a), cfg)
