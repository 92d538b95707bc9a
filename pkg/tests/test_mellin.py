"""Tests for the mellin module."""

import math

import numpy as np
import pytest

from lindelof_lab.errors import ContourError, ConvergenceError, DomainError, RangeError
from lindelof_lab.mellin import (
    ContourSpec,
    inverse_mellin_lambda,
    inverse_mellin_reciprocal,
    lambda_target,
    oscillatory_line_integral,
    reciprocal_target,
)


def gaussian(taus):
    return np.exp(-taus * taus), np.zeros_like(taus)


def chirp(taus):
    """e^(-tau^2 / 50) with a phase that makes x^(-i tau) matter."""
    return np.exp(-taus * taus / 50.0), 3.0 * taus


class TestOscillatoryLineIntegral:
    """Tests for the generic line integral."""

    def test_zero_integrand(self):
        """Nothing in, nothing out."""
        result = oscillatory_line_integral(lambda t: (np.zeros_like(t), np.zeros_like(t)), 1.0, ContourSpec(0.25, T=20))
        assert result.value == 0
        assert result.abs_err == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("symmetric", [False, True])
    def test_gaussian(self, symmetric):
        """(1 / 2 pi) int e^(-tau^2) = sqrt(pi) / 2 pi."""
        result = oscillatory_line_integral(gaussian, 1.0, ContourSpec(0.25, T=20), symmetric=symmetric)
        assert result.value.real == pytest.approx(math.sqrt(math.pi) / (2 * math.pi), abs=1e-6)
        assert abs(result.value.imag) <= 1e-12

    def test_linear_phase(self):
        """A linear phase shifts the Gaussian transform: x = e^3 cancels it."""
        x = math.exp(3.0)
        result = oscillatory_line_integral(chirp, x, ContourSpec(0.0, T=60), symmetric=True)
        assert result.value.real == pytest.approx(math.sqrt(50 * math.pi) / (2 * math.pi), rel=1e-6)

    def test_c_scales_by_x_power(self):
        """The line abscissa enters through x^(-c)."""
        a = oscillatory_line_integral(gaussian, 2.0, ContourSpec(0.0, T=20), symmetric=True)
        b = oscillatory_line_integral(gaussian, 2.0, ContourSpec(0.5, T=20), symmetric=True)
        assert b.value.real == pytest.approx(a.value.real * 2.0**-0.5, rel=1e-12)

    def test_symmetric_is_exactly_real(self):
        """Only tau >= 0 is sampled and the conjugate half is implied."""
        result = oscillatory_line_integral(chirp, 1.5, ContourSpec(0.2, T=60), symmetric=True)
        assert result.value.imag == 0.0

    def test_divergent_integrand(self):
        """A constant integrand never settles."""
        with pytest.raises(ConvergenceError):
            oscillatory_line_integral(lambda t: (np.ones_like(t), np.zeros_like(t)), 1.0, ContourSpec(0.25, T=20))

    def test_x_must_be_positive(self):
        """x^(-s) needs x > 0."""
        with pytest.raises(DomainError):
            oscillatory_line_integral(gaussian, 0.0, ContourSpec(0.25, T=20))


class TestContourSpec:
    """Tests for ContourSpec validation."""

    @pytest.mark.parametrize("kwargs", [
        {"T": 5.0},
        {"panels": 2},
        {"averaging_windows": 0},
        {"tol": 0.0},
    ])
    def test_invalid(self, kwargs):
        """Out-of-range settings are rejected."""
        with pytest.raises(DomainError):
            ContourSpec(0.25, **kwargs)

    def test_defaults(self):
        """Defaults suit the built-in transforms."""
        spec = ContourSpec(0.25)
        assert spec.T == 400.0
        assert spec.panels == 8
        assert spec.tol == 1e-2


class TestInverseMellinLambda:
    """Tests for the 2 cos(2 pi x) transform."""

    @pytest.mark.parametrize("x", [0.3, 0.5, 1.0, 2.0])
    def test_recovers_cosine(self, x):
        """Agreement to the default tolerance."""
        result = inverse_mellin_lambda(x, ContourSpec(0.25))
        assert abs(result.value.real - lambda_target(x)) <= 1e-2
        assert result.value.imag == 0.0

    def test_error_estimate_is_finite(self):
        """abs_err is reported and small."""
        result = inverse_mellin_lambda(1.0, ContourSpec(0.25))
        assert 0.0 < result.abs_err < 0.1

    @pytest.mark.parametrize("c", [0.1, 0.25])
    def test_error_estimate_covers_error(self, c):
        """The Gamma peak near tau = 0 is resolved and abs_err bounds what is left."""
        result = inverse_mellin_lambda(0.5, ContourSpec(c))
        error = abs(result.value.real - lambda_target(0.5))
        assert error <= 1e-3
        assert error <= 2.0 * result.abs_err

    def test_independent_of_line(self):
        """Any c in (0, 1/2) gives the same value within the summed error estimates."""
        results = [inverse_mellin_lambda(0.75, ContourSpec(c)) for c in (0.1, 0.25, 0.4)]
        for i, a in enumerate(results):
            for b in results[i + 1:]:
                assert abs(a.value.real - b.value.real) <= 2.0 * (a.abs_err + b.abs_err)

    @pytest.mark.parametrize("x", [0.5, 1.0])
    def test_doubling_height_does_not_hurt(self, x):
        """Raising T to 2T keeps the error within the previous error estimate."""
        short = inverse_mellin_lambda(x, ContourSpec(0.25, T=400))
        long = inverse_mellin_lambda(x, ContourSpec(0.25, T=800))
        short_error = abs(short.value.real - lambda_target(x))
        long_error = abs(long.value.real - lambda_target(x))
        assert long_error <= short_error + short.abs_err

    def test_gamma_form_agrees(self):
        """The Gamma kernel is the same function written differently."""
        a = inverse_mellin_lambda(0.5, ContourSpec(0.25), form="chi").value.real
        b = inverse_mellin_lambda(0.5, ContourSpec(0.25), form="gamma").value.real
        assert abs(a - b) <= 2e-2

    def test_unknown_form(self):
        """Only chi and gamma are known."""
        with pytest.raises(DomainError):
            inverse_mellin_lambda(1.0, ContourSpec(0.25), form="beta")

    @pytest.mark.parametrize("c", [0.0, 0.5, 0.6, -0.1])
    def test_line_outside_strip(self, c):
        """The line must lie in 0 < c < 1/2."""
        with pytest.raises(ContourError):
            inverse_mellin_lambda(1.0, ContourSpec(c))

    @pytest.mark.parametrize("x", [0.25, 3.5])
    def test_x_out_of_range(self, x):
        """Only [0.3, 3] is supported."""
        with pytest.raises(RangeError):
            inverse_mellin_lambda(x, ContourSpec(0.25))

    def test_x_non_positive(self):
        """x <= 0 is a domain error, not a range error."""
        with pytest.raises(DomainError):
            inverse_mellin_lambda(-1.0, ContourSpec(0.25))


class TestInverseMellinReciprocal:
    """Tests for the (2 / x) cos(2 pi / x) transform."""

    @pytest.mark.parametrize("x", [1.0, 2.0])
    def test_recovers_target(self, x):
        """Agreement to twice the default tolerance."""
        result = inverse_mellin_reciprocal(x, ContourSpec(0.75))
        assert abs(result.value.real - reciprocal_target(x)) <= 2e-2

    def test_consistent_with_lambda(self):
        """At x = 4/7 the reciprocal transform is (7/4) times the lambda transform at 7/4."""
        reciprocal = inverse_mellin_reciprocal(4 / 7, ContourSpec(0.75)).value.real
        direct = inverse_mellin_lambda(7 / 4, ContourSpec(0.25)).value.real
        assert abs(reciprocal - 1.75 * direct) <= 5e-2
        assert reciprocal_target(4 / 7) == pytest.approx(1.75 * lambda_target(7 / 4))

    @pytest.mark.parametrize("c", [0.3, 0.5, 1.0])
    def test_line_outside_strip(self, c):
        """The line must lie in 1/2 < c < 1."""
        with pytest.raises(ContourError):
            inverse_mellin_reciprocal(1.0, ContourSpec(c))

    def test_x_out_of_range(self):
        """Only [0.5, 3] is supported."""
        with pytest.raises(RangeError):
            inverse_mellin_reciprocal(0.4, ContourSpec(0.75))


class TestPoleRefinement:
    """Tests for subdividing panels next to a pole of the integrand."""

    @staticmethod
    def near_pole(c):
        """1 / |c + i tau| with no phase: a peak of width c at tau = 0."""
        return lambda taus: (1.0 / np.hypot(c, taus) * np.exp(-taus * taus / 50.0), np.zeros_like(taus))

    def test_refinement_improves_accuracy(self):
        """Coarse panels bias the peak; subdivided panels do not."""
        c = 0.1
        plain = oscillatory_line_integral(self.near_pole(c), 1.0, ContourSpec(0.25, T=40), symmetric=True)
        refined = oscillatory_line_integral(
            self.near_pole(c), 1.0, ContourSpec(0.25, T=40), symmetric=True, pole_distance=c
        )
        reference = oscillatory_line_integral(
            self.near_pole(c), 1.0, ContourSpec(0.25, T=40, panels=256), symmetric=True
        )
        assert abs(refined.value.real - reference.value.real) < abs(plain.value.real - reference.value.real)

    def test_discretization_in_error_estimate(self):
        """An unresolved peak shows up in abs_err."""
        c = 0.1
        plain = oscillatory_line_integral(self.near_pole(c), 1.0, ContourSpec(0.25, T=40), symmetric=True)
        reference = oscillatory_line_integral(
            self.near_pole(c), 1.0, ContourSpec(0.25, T=40, panels=256), symmetric=True
        )
        assert abs(plain.value.real - reference.value.real) <= plain.abs_err
