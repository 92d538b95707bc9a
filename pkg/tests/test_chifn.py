"""Tests for the chifn module."""

import math

import mpmath
import numpy as np
import pytest

from lindelof_lab.chifn import (
    CHARACTERS,
    BoundRecord,
    CharacterSpec,
    abs_chi_imag_axis,
    affine_exponent,
    check_a14_rectangle,
    check_a3_sine,
    check_a4_stirling,
    check_a6_prefactor,
    check_a7_majorant,
    check_asymptotic_ratio,
    check_chik_asymptotic,
    check_k8_strip,
    check_lk_functional_eq,
    chi,
    chi_asymptotic,
    chi_bound_suite,
    chi_k,
    chi_symmetric,
    get_character,
    l_function,
    log_sin,
    make_record,
)
from lindelof_lab.errors import CharacterError, DomainError, IndeterminateError, PoleError


class TestChi:
    """Tests for chi."""

    def test_critical_line_modulus(self):
        """|chi(1/2 + 14i)| = 1."""
        assert chi(0.5 + 14j).modulus == pytest.approx(1.0, abs=1e-9)

    def test_reflection_point(self):
        """chi(s) chi(1 - s) = 1 at s = 0.3 + 5i."""
        s = 0.3 + 5j
        assert abs(chi(s).value * chi(1 - s).value - 1.0) <= 1e-9

    def test_imaginary_axis(self):
        """|chi(i)| from the closed form."""
        assert chi(1j).modulus == pytest.approx(0.38206, abs=1e-5)

    def test_matches_zeta_ratio(self):
        """chi(s) = zeta(s) / zeta(1 - s)."""
        s = mpmath.mpc(0.2, 7.5)
        with mpmath.workdps(30):
            expected = complex(mpmath.zeta(s) / mpmath.zeta(1 - s))
        assert abs(chi(complex(0.2, 7.5)).value - expected) <= 1e-10 * abs(expected)

    def test_large_tau(self):
        """Log-space evaluation survives tau = 1e4."""
        value = chi(0.2 + 1e4j)
        assert value.modulus == pytest.approx((1e4 / (2 * math.pi)) ** 0.3, rel=1e-6)

    def test_abs_err_budget(self):
        """abs_err <= 1e-10 |value| for tau <= 1e3."""
        for s in (0.1 + 3j, 0.5 + 200j, 0.9 + 999j):
            result = chi(s)
            assert result.abs_err <= 1e-10 * result.modulus

    @pytest.mark.parametrize("n", [1, 3, 5])
    def test_poles_at_odd_integers(self, n):
        """Gamma(1 - s) has a pole and the sine does not vanish."""
        with pytest.raises(PoleError):
            chi(n)

    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_limits_at_even_integers(self, n):
        """The sine zero cancels the Gamma pole; the limit is zeta(n) / zeta(1 - n)."""
        expected = float(mpmath.zeta(n) / mpmath.zeta(1 - n))
        assert chi(n).value.real == pytest.approx(expected, rel=1e-12)

    def test_limits_can_be_disabled(self):
        """allow_limits=False raises instead."""
        with pytest.raises(IndeterminateError):
            chi(2, allow_limits=False)

    @pytest.mark.parametrize("n", [0, -2, -4])
    def test_trivial_zeros(self, n):
        """chi vanishes at 0 and the negative even integers."""
        assert chi(n).value == 0

    def test_reflection_identity(self, rng):
        """chi(s) chi(1 - s) = 1 on random strip points."""
        from conftest import random_points

        for s in random_points(rng, 200, (0.0, 1.0), (0.01, 50.0)):
            assert abs(chi(s).value * chi(1 - s).value - 1.0) <= 1e-9

    def test_mirror_symmetry(self, rng):
        """|chi(sigma + i tau)| = |chi(sigma - i tau)|."""
        from conftest import random_points

        for s in random_points(rng, 100, (-1.0, 2.0), (0.5, 500.0)):
            assert chi(s.conjugate()).modulus == pytest.approx(chi(s).modulus, rel=1e-10)

    def test_critical_line_geometric(self):
        """| |chi(1/2 + i tau)| - 1 | <= 1e-9 on 500 geometric samples."""
        for tau in np.geomspace(1.0, 1e3, 500):
            assert abs(chi(complex(0.5, tau)).modulus - 1.0) <= 1e-9

    def test_bounded_right_of_center(self):
        """|chi| <= 1.05 (tau / 2 pi)^(1/2 - sigma) for sigma >= 1/2, tau >= 2 pi."""
        for sigma in np.linspace(0.5, 0.95, 10):
            for tau in np.geomspace(2 * math.pi, 1e3, 40):
                bound = 1.05 * (tau / (2 * math.pi)) ** (0.5 - sigma)
                assert chi(complex(sigma, tau)).modulus <= bound

    def test_strip_constant(self):
        """max |chi| / tau^(1/2 - sigma) over the half-strip is far below K = 8."""
        ratios = [
            chi(complex(sigma, tau)).modulus / tau ** (0.5 - sigma)
            for sigma in np.linspace(0.0, 0.5, 26)
            for tau in np.geomspace(1.0, 1e3, 60)
        ]
        assert max(ratios) <= 1.01


class TestChiSymmetric:
    """Tests for chi_symmetric."""

    def test_center(self):
        """chi(1/2) = 1."""
        assert chi_symmetric(0.5).value.real == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize("s", [0.3 + 5j, 0.9 + 2j, 0.1 + 300j])
    def test_agrees_with_chi(self, s):
        """Two independent routes agree."""
        a = chi_symmetric(s).value
        b = chi(s).value
        assert abs(a - b) <= 1e-9 * abs(b)


class TestImaginaryAxis:
    """Tests for abs_chi_imag_axis and the sharp bound."""

    def test_values(self):
        """|chi(i)| and |chi(10i)|."""
        assert abs_chi_imag_axis(1.0) == pytest.approx(0.38206, abs=1e-5)
        assert abs_chi_imag_axis(10.0) == pytest.approx(math.sqrt(10 / (2 * math.pi)), rel=1e-13)

    def test_sharp_bound(self):
        """|chi(it)| <= sqrt(t / 2 pi), with ratio -> 1."""
        for t in np.geomspace(1e-3, 1e3, 300):
            modulus = chi(complex(0.0, t)).modulus
            bound = math.sqrt(t / (2 * math.pi))
            assert modulus <= bound * (1 + 1e-12)
            if t >= 5:
                assert modulus / bound >= 1 - 1e-6

    def test_matches_chi(self):
        """Closed form agrees with the log-space evaluation."""
        for t in (0.5, 1.0, 7.0, 150.0):
            assert chi(complex(0.0, t)).modulus == pytest.approx(abs_chi_imag_axis(t), rel=1e-10)

    def test_domain(self):
        """t must be positive."""
        with pytest.raises(DomainError):
            abs_chi_imag_axis(0.0)


class TestChiBoundSuite:
    """Tests for chi_bound_suite and the individual checks."""

    def test_imaginary_axis_point(self):
        """s = 2 pi i: the sharp bound holds with a tiny positive margin."""
        records = {r.check_id: r for r in chi_bound_suite(complex(0.0, 2 * math.pi))}
        sharp = records["sharp-imag-axis"]
        assert sharp.lhs == pytest.approx(1.0, abs=1e-6)
        assert sharp.rhs == pytest.approx(1.0, abs=1e-14)
        assert sharp.margin > 0
        assert sharp.passed

    def test_interior_point(self):
        """s = 1/4 + 10i: every record passes."""
        records = chi_bound_suite(0.25 + 10j)
        assert {r.check_id for r in records} == {"K8-strip", "K8-global", "A5-majorant", "A9-majorant"}
        assert all(r.passed for r in records)

    def test_critical_line_point(self):
        """s = 1/2 + i: |chi| = 1."""
        records = {r.check_id: r for r in chi_bound_suite(0.5 + 1j)}
        line = records["critical-line-modulus"]
        assert line.lhs == pytest.approx(1.0, abs=1e-9)
        assert line.passed

    def test_low_point_skips_strip_bound(self):
        """tau < 1 only gets the global bound."""
        ids = {r.check_id for r in chi_bound_suite(0.25 + 0.5j)}
        assert "K8-strip" not in ids
        assert "K8-global" in ids

    def test_outside_half_strip(self):
        """sigma outside [0, 1/2] is rejected."""
        with pytest.raises(DomainError):
            chi_bound_suite(0.7 + 1j)

    def test_supplementary_checks_pass(self):
        """The remaining steps of the K = 8 chain hold at a sample of points."""
        for sigma in (0.0, 0.2, 0.5):
            for tau in (1.0, 3.0, 40.0, 900.0):
                s = complex(sigma, tau)
                for check in (check_a3_sine, check_a4_stirling, check_a6_prefactor, check_a7_majorant):
                    record = check(s)
                    assert record is not None and record.passed, record

    def test_rectangle(self):
        """|chi| <= 8 for |tau| <= 1, and only there."""
        assert check_a14_rectangle(0.1 + 0.3j).passed
        assert check_a14_rectangle(0.1 + 2j) is None

    def test_check_inapplicable(self):
        """Checks return None away from their domain."""
        assert check_k8_strip(0.25 + 0.5j) is None
        assert check_asymptotic_ratio(0.25 + 5j) is None

    def test_asymptotic_ratio(self):
        """tau = 500 is deep in the asymptotic regime."""
        for sigma in (0.0, 0.25, 0.5, 0.75, 1.0):
            record = check_asymptotic_ratio(complex(sigma, 500.0))
            assert record.passed
            assert abs(record.lhs - 1.0) <= 1e-2


class TestRecords:
    """Tests for BoundRecord helpers."""

    def test_inequality_margin(self):
        """margin = rhs - lhs."""
        record = make_record("K8-strip", 0.1 + 2j, 1.0, 3.0, 0.0)
        assert record.margin == 2.0
        assert record.passed

    def test_equality_margin(self):
        """margin = -|lhs - rhs|, pass within tol."""
        record = make_record("critical-line-modulus", 0.5 + 2j, 1.0 + 1e-10, 1.0, 1e-9, equality=True)
        assert record.margin == pytest.approx(-1e-10)
        assert record.passed

    def test_non_finite_becomes_error(self):
        """Non-finite sides make a failed record with a reason."""
        record = make_record("K8-strip", 0.1 + 2j, float("inf"), 3.0, 0.0)
        assert not record.passed
        assert record.note.startswith("error:")

    def test_dict_round_trip(self):
        """to_dict / from_dict keep every field."""
        record = BoundRecord("A9-majorant", 0.1, 2.0, 1.5, 3.0, 1.5, True, "n")
        restored = BoundRecord.from_dict(record.to_dict())
        assert restored == record
        assert record.to_dict()["pass"] is True

    def test_from_dict_tolerates_missing_note(self):
        """Older records carry no note."""
        data = BoundRecord("A9-majorant", 0.1, 2.0, 1.5, 3.0, 1.5, True).to_dict()
        del data["note"]
        assert BoundRecord.from_dict(data).note == ""


class TestAsymptotics:
    """Tests for chi_asymptotic and chi_k."""

    def test_center_line(self):
        """Exponent zero."""
        assert chi_asymptotic(0.5 + 100j) == 1.0

    def test_base_one(self):
        """tau = 2 pi."""
        assert chi_asymptotic(complex(0.0, 2 * math.pi)) == pytest.approx(1.0, abs=1e-15)

    def test_ratio(self):
        """|chi| / asymptotic in [0.99, 1.01] at tau = 500."""
        s = 0.2 + 500j
        assert 0.99 <= chi(s).modulus / chi_asymptotic(s) <= 1.01

    def test_domain(self):
        """tau must be positive."""
        with pytest.raises(DomainError):
            chi_asymptotic(0.3 - 1j)

    def test_chi_k_one(self):
        """k = 1 is chi itself."""
        s = 0.3 + 7j
        assert chi_k(s, 1).value == chi(s).value

    def test_chi_k_asymptotic(self):
        """k = 5 at tau = 500."""
        s = 0.2 + 500j
        expected = (5 / (2 * math.pi)) ** 0.3 * 500**0.3
        assert 0.99 <= chi_k(s, 5).modulus / expected <= 1.01

    def test_chi_k_critical_line(self):
        """|k^(1/2 - s)| = 1 on the critical line."""
        assert chi_k(0.5 + 7j, 4).modulus == pytest.approx(1.0, abs=1e-9)

    def test_chik_record(self):
        """The registry check passes for every built-in modulus."""
        for k in CHARACTERS:
            assert check_chik_asymptotic(0.1 + 500j, k).passed

    def test_chi_k_domain(self):
        """k must be positive."""
        with pytest.raises(DomainError):
            chi_k(0.3 + 1j, 0)


class TestCharacters:
    """Tests for CharacterSpec and l_function."""

    @pytest.mark.parametrize("k", sorted(CHARACTERS))
    def test_builtin_characters_valid(self, k):
        """Built-in tables satisfy every invariant."""
        get_character(k).validate()

    def test_unknown_modulus(self):
        """Only the built-in moduli are available."""
        with pytest.raises(CharacterError):
            get_character(7)

    def test_odd_character_rejected(self):
        """The character mod 4 is odd."""
        with pytest.raises(CharacterError):
            CharacterSpec(4, (0, 1, 0, -1)).validate()

    def test_permuted_values_rejected(self):
        """Permuting the mod-5 table breaks multiplicativity."""
        with pytest.raises(CharacterError):
            l_function(2, CharacterSpec(5, (0, 1, -1, 1, -1)))

    def test_principal_character_rejected(self):
        """The principal character mod 5 is induced from modulus 1."""
        with pytest.raises(CharacterError):
            CharacterSpec(5, (0, 1, 1, 1, 1)).validate()

    def test_non_coprime_must_vanish(self):
        """chi(a) = 0 exactly when gcd(a, k) > 1."""
        with pytest.raises(CharacterError):
            CharacterSpec(8, (0, 1, 1, -1, 0, -1, 0, 1)).validate()

    def test_l5_at_two(self):
        """L(2, (.|5)) = 4 pi^2 / (25 sqrt 5)."""
        expected = 4 * math.pi**2 / (25 * math.sqrt(5))
        assert l_function(2, get_character(5)).value.real == pytest.approx(expected, abs=1e-6)
        assert expected == pytest.approx(0.70621, abs=1e-5)

    def test_l5_matches_direct_series(self):
        """Against the periodic L-series of mpmath."""
        expected = float(mpmath.dirichlet(2, list(get_character(5).values)))
        assert l_function(2, get_character(5)).value.real == pytest.approx(expected, abs=1e-10)

    def test_functional_equation_point(self):
        """s = 0.3 + 2i for k = 5."""
        record = check_lk_functional_eq(0.3 + 2j, get_character(5))
        assert record.lhs <= 1e-8
        assert record.passed

    def test_functional_equation_random(self, rng):
        """Residual <= 1e-8 at 20 random strip points for each modulus."""
        from conftest import random_points

        for k in (5, 8, 12):
            spec = get_character(k)
            for s in random_points(rng, 20, (0.0, 1.0), (0.1, 100.0)):
                record = check_lk_functional_eq(s, spec)
                assert record.passed, (k, s, record.lhs)


class TestHelpers:
    """Tests for log_sin and affine_exponent."""

    def test_log_sin_large_imag(self):
        """No overflow for Im z = 2000."""
        value = log_sin(1 + 2000j)
        assert value.real == pytest.approx(2000 - math.log(2), abs=1e-9)

    def test_log_sin_matches_sin(self):
        """exp(log_sin(z)) = sin(z) for moderate z."""
        for z in (0.3 + 0.2j, 1.2 - 3j, -2.0 + 0.5j, 0.7 + 0j):
            assert np.exp(log_sin(z)) == pytest.approx(np.sin(z), rel=1e-13)

    def test_affine_exponent(self):
        """Takes p at sigma1 and q at sigma2."""
        assert affine_exponent(0.0, 0.5, 0.0, 0.0, 0.5) == 0.5
        assert affine_exponent(0.5, 0.5, 0.0, 0.0, 0.5) == 0.0
        assert affine_exponent(0.25, 0.5, 0.0, 0.0, 0.5) == pytest.approx(0.25)

    def test_affine_exponent_degenerate(self):
        """sigma1 = sigma2 is rejected."""
        with pytest.raises(DomainError):
            affine_exponent(0.1, 0.5, 0.0, 0.3, 0.3)
