"""Inverse-Mellin line integrals of the chi-factor.

The integrand along s = c + i tau is handed over as a modulus and a phase.
Each panel is integrated by a Filon-type rule: the phase is taken linear
across the panel and integrated exactly, the remaining smooth factor is
interpolated quadratically. Truncation ringing is removed by a repeated
running mean of the partial integral over one ringing period.
"""

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .chifn import log_chi, log_sin
from .errors import ContourError, ConvergenceError, DomainError, RangeError
from .gammafn import LOG_2, Evaluation, log_gamma

# (modulus, phase) of the integrand on the line, for an ascending tau array
ModulusPhase = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]

LAMBDA_X_RANGE = (0.3, 3.0)
RECIPROCAL_X_RANGE = (0.5, 3.0)

# Longest averaging window when the integrand barely oscillates at the cut
MAX_WINDOW = 2.0 * math.pi
# Panels with |tau| <= HEAD are subdivided near a pole of the integrand
HEAD = 1.0
# Below this |theta| the Filon moments switch to their Taylor series
_SERIES_THETA = 1e-2


@dataclass(frozen=True)
class ContourSpec:
    """Vertical line of integration and quadrature settings."""

    c: float
    T: float = 400.0  # truncation height
    panels: int = 8  # panels per unit tau
    averaging_windows: int = 6
    tol: float = 1e-2  # requested accuracy; the window spread may not exceed 10x this

    def __post_init__(self):
        if self.T < 10.0:
            raise DomainError(f"T must be >= 10, got {self.T!r}")
        if self.panels < 4:
            raise DomainError(f"panels must be >= 4, got {self.panels!r}")
        if self.averaging_windows < 1:
            raise DomainError("averaging_windows must be positive")
        if not self.tol > 0:
            raise DomainError("tol must be positive")


def _filon_moments(half: float, theta: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """int_{-h}^{h} u^j e^{i omega u} du for j = 0, 1, 2 with theta = omega h."""
    small = np.abs(theta) < _SERIES_THETA
    t = np.where(small, 1.0, theta)
    sin_t, cos_t = np.sin(t), np.cos(t)
    th2 = theta * theta

    m0 = np.where(small, 2.0 * half * (1.0 - th2 / 6.0 + th2 * th2 / 120.0), 2.0 * half * sin_t / t)
    m1 = np.where(
        small,
        2.0 * half**2 * (theta / 3.0 - theta * th2 / 30.0 + theta * th2 * th2 / 840.0),
        2.0 * half**2 * (sin_t - t * cos_t) / (t * t),
    )
    m2 = np.where(
        small,
        2.0 * half**3 * (1.0 / 3.0 - th2 / 10.0 + th2 * th2 / 168.0),
        2.0 * half**3 * (t * t * sin_t + 2.0 * t * cos_t - 2.0 * sin_t) / (t * t * t),
    )
    return m0, 1j * m1, m2


def _panel_integrals(amplitude: np.ndarray, phase: np.ndarray, half: float) -> np.ndarray:
    """Filon panels over nodes a, m, b, a, m, b, ... sharing end nodes.

    amplitude and phase hold 2P + 1 nodes in ascending tau.
    """
    a_amp, m_amp, b_amp = amplitude[:-2:2], amplitude[1:-1:2], amplitude[2::2]
    a_ph, m_ph, b_ph = phase[:-2:2], phase[1:-1:2], phase[2::2]

    omega = (b_ph - a_ph) / (2.0 * half)
    mean_phase = 0.5 * (a_ph + b_ph)
    # smooth factor once the linear phase is divided out
    g_a = a_amp.astype(complex)
    g_b = b_amp.astype(complex)
    g_m = m_amp * np.exp(1j * (m_ph - mean_phase))

    c1 = (g_b - g_a) / (2.0 * half)
    c2 = (g_a - 2.0 * g_m + g_b) / (2.0 * half * half)
    m0, m1, m2 = _filon_moments(half, omega * half)
    return np.exp(1j * mean_phase) * (g_m * m0 + c1 * m1 + c2 * m2)


def _ringing_rate(integrand: ModulusPhase, x: float, height: float) -> float:
    """|d psi / d tau| at the cut, psi being the full phase including x^(-i tau)."""
    step = 1e-3
    taus = np.array([height - step, height + step])
    _, phase = integrand(taus)
    phase = np.unwrap(phase)
    return abs((phase[1] - phase[0]) / (2.0 * step) - math.log(x))


def _window_means(partial: np.ndarray, start: int, per_window: int, windows: int) -> np.ndarray:
    """Twice-applied running means of the partial integral, one per window.

    Window w averages the running one-period mean over the period starting at
    start + w * per_window; repeating the mean makes a period rounded to whole
    panels cost only second order.
    """
    cum = cumulative_trapezoid(partial, initial=0.0)
    running = (cum[per_window:] - cum[:-per_window]) / per_window
    cum_running = cumulative_trapezoid(running, initial=0.0)
    starts = start + per_window * np.arange(windows)
    return (cum_running[starts + per_window] - cum_running[starts]) / per_window


def _refinement(h: float, pole_distance: float | None) -> int:
    """Sub-panels per panel near tau = 0 so that a sub-panel spans at most 1/8 of the pole distance."""
    if pole_distance is None or pole_distance <= 0.0:
        return 1
    return max(1, int(math.ceil(8.0 * h / pole_distance)))


def _line_samples(
    integrand: ModulusPhase, taus: np.ndarray, log_x: float, c: float
) -> tuple[np.ndarray, np.ndarray]:
    """Amplitude with x^(-c) applied, and the unwrapped phase with -tau log x added."""
    modulus, phase = integrand(taus)
    phase = np.unwrap(np.asarray(phase, dtype=float)) - taus * log_x
    amplitude = np.asarray(modulus, dtype=float) * math.exp(-c * log_x)
    return amplitude, phase


def _grouped_panels(amplitude: np.ndarray, phase: np.ndarray, half: float, group: int) -> np.ndarray:
    """Filon panels of half-width half, summed in consecutive groups."""
    return _panel_integrals(amplitude, phase, half).reshape(-1, group).sum(axis=1)


def oscillatory_line_integral(
    integrand: ModulusPhase,
    x: float,
    spec: ContourSpec,
    symmetric: bool = False,
    pole_distance: float | None = None,
) -> Evaluation:
    """(1 / 2 pi) int_{-T}^{T} F(c + i tau) x^{-(c + i tau)} d tau, window-averaged past T.

    With symmetric=True the integrand is taken to satisfy F(c - i tau) = conj F(c + i tau);
    only tau >= 0 is sampled and the result is real.

    pole_distance is the distance from s = c to the nearest pole of F; panels with
    |tau| <= HEAD are subdivided so that sub-panels resolve it.

    abs_err adds the window spread, the ringing that survives averaging, the
    difference against the same rule at twice the panel width over |tau| <= T,
    and rounding.
    """
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x!r}")
    h = 1.0 / spec.panels
    half = 0.5 * h
    log_x = math.log(x)
    refine = _refinement(h, pole_distance)

    rate = _ringing_rate(integrand, x, spec.T)
    period = MAX_WINDOW if rate < 2.0 * math.pi / MAX_WINDOW else 2.0 * math.pi / rate
    per_window = max(1, int(round(period / h)))

    first = int(math.ceil(spec.T / h))
    # the last window reads two periods past its start
    n_panels = first + (spec.averaging_windows + 1) * per_window
    n_panels += n_panels % 2  # pairs of panels make the coarse rule
    t_end = n_panels * h
    n_head = min(n_panels, 2 * int(math.ceil(HEAD / (2.0 * h))))

    if symmetric:
        taus = np.linspace(0.0, t_end, 2 * n_panels + 1)
        head_taus = np.linspace(0.0, n_head * h, 2 * n_head * refine + 1)
    else:
        taus = np.linspace(-t_end, t_end, 4 * n_panels + 1)
        head_taus = np.linspace(-n_head * h, n_head * h, 4 * n_head * refine + 1)
    amplitude, phase = _line_samples(integrand, taus, log_x, spec.c)

    panels = _panel_integrals(amplitude, phase, half)
    coarse = _panel_integrals(amplitude[::2], phase[::2], h)
    if refine > 1:
        head_amp, head_phase = _line_samples(integrand, head_taus, log_x, spec.c)
        head = _grouped_panels(head_amp, head_phase, half / refine, refine)
        head_coarse = _grouped_panels(head_amp[::2], head_phase[::2], h / refine, refine)
        if symmetric:
            panels[:n_head] = head
            coarse[: n_head // 2] = head_coarse
        else:
            panels[n_panels - n_head : n_panels + n_head] = head
            coarse[(n_panels - n_head) // 2 : (n_panels + n_head) // 2] = head_coarse

    if symmetric:
        pairs = 2.0 * panels.real
        coarse_pairs = 2.0 * coarse.real
    else:
        # pair panels symmetrically about tau = 0
        pairs = panels[n_panels:] + panels[:n_panels][::-1]
        mid = n_panels // 2
        coarse_pairs = coarse[mid:] + coarse[:mid][::-1]
    partial = np.cumsum(pairs)  # partial[j] integrates over |tau| <= (j + 1) h

    means = _window_means(partial, first - 1, per_window, spec.averaging_windows) / (2.0 * math.pi)
    value = complex(means.mean())
    spread = float(np.ptp(means.real) + np.ptp(means.imag))
    if spread > 10.0 * spec.tol:
        raise ConvergenceError(
            f"window spread {spread:.3g} exceeds 10x the requested tolerance {spec.tol:g}"
        )

    half_first = first // 2
    discretization = abs(partial[2 * half_first - 1] - coarse_pairs[:half_first].sum()) / (2.0 * math.pi)
    # what survives averaging of the ringing: ~ F(T) / (T psi'^2) from each end
    amp_t = float(amplitude[-1])
    eff_rate = max(rate, 1.0)
    remainder = 2.0 * amp_t * (1.0 + 1.0 / eff_rate) / (math.pi * spec.T * eff_rate**2)
    rounding = 1e-15 * float(np.abs(panels).sum())
    return Evaluation(value, spread + discretization + remainder + rounding)


def _chi_reflected(c: float) -> ModulusPhase:
    """chi(1 - s) on s = c + i tau."""

    def integrand(taus: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        logs = np.array([log_chi(complex(1.0 - c, -t))[0] for t in taus])
        return np.exp(logs.real), logs.imag

    return integrand


def _gamma_kernel(c: float) -> ModulusPhase:
    """2 (2 pi)^(-s) cos(pi s / 2) Gamma(s) on s = c + i tau."""
    log_2pi = math.log(2.0 * math.pi)

    def integrand(taus: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        logs = []
        for t in taus:
            s = complex(c, t)
            # cos z = sin(z + pi/2)
            logs.append(LOG_2 - s * log_2pi + log_sin(0.5 * math.pi * (s + 1.0)) + log_gamma(s).value)
        logs = np.array(logs)
        return np.exp(logs.real), logs.imag

    return integrand


def _chi_direct(c: float) -> ModulusPhase:
    """chi(s) on s = c + i tau."""

    def integrand(taus: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        logs = np.array([log_chi(complex(c, t))[0] for t in taus])
        return np.exp(logs.real), logs.imag

    return integrand


def _check_x(x: float, bounds: tuple[float, float]) -> None:
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x!r}")
    if not bounds[0] <= x <= bounds[1]:
        raise RangeError(f"x = {x:g} is outside the supported range [{bounds[0]:g}, {bounds[1]:g}]")


def inverse_mellin_lambda(
    x: float,
    spec: ContourSpec,
    form: Literal["chi", "gamma"] = "chi",
) -> Evaluation:
    """Recover 2 cos(2 pi x) from the line integral of chi(1 - s) x^(-s), 0 < c < 1/2.

    form="gamma" integrates the equivalent 2 (2 pi)^(-s) cos(pi s/2) Gamma(s) kernel.
    """
    if not 0.0 < spec.c < 0.5:
        raise ContourError(f"the line must satisfy 0 < c < 1/2, got c = {spec.c:g}")
    _check_x(x, LAMBDA_X_RANGE)
    if form == "chi":
        integrand = _chi_reflected(spec.c)
    elif form == "gamma":
        integrand = _gamma_kernel(spec.c)
    else:
        raise DomainError(f"unknown integrand form {form!r}")
    # Gamma(s) puts both forms at distance c from a pole
    return oscillatory_line_integral(integrand, x, spec, symmetric=True, pole_distance=spec.c)


def inverse_mellin_reciprocal(x: float, spec: ContourSpec) -> Evaluation:
    """Recover (2 / x) cos(2 pi / x) from the line integral of chi(s) x^(-s), 1/2 < c < 1."""
    if not 0.5 < spec.c < 1.0:
        raise ContourError(f"the line must satisfy 1/2 < c < 1, got c = {spec.c:g}")
    _check_x(x, RECIPROCAL_X_RANGE)
    return oscillatory_line_integral(_chi_direct(spec.c), x, spec, symmetric=True, pole_distance=1.0 - spec.c)


def lambda_target(x: float) -> float:
    return 2.0 * math.cos(2.0 * math.pi * x)


def reciprocal_target(x: float) -> float:
    return 2.0 / x * math.cos(2.0 * math.pi / x)
