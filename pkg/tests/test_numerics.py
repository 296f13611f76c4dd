"""Tests for core.numerics — Q, entropies, Poisson pmf and truncation."""

import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "usr" / "share" / "impulsebsc"))

import numpy as np
import pytest
from scipy import integrate, special, stats

from core.numerics import (
    Bits,
    DomainError,
    PoissonTruncation,
    Probability,
    binary_entropy,
    binary_entropy_array,
    gaussian_diff_entropy,
    poisson_pmf,
    q_function,
    q_function_array,
    truncate_poisson,
)


def _q_by_quadrature(x: float) -> float:
    density = lambda t: math.exp(-t * t / 2.0) / math.sqrt(2.0 * math.pi)
    value, _ = integrate.quad(density, x, np.inf, epsabs=0.0, epsrel=1e-11, limit=200)
    return value


class TestQFunction:
    def test_zero_is_half(self):
        assert q_function(0.0) == 0.5

    @pytest.mark.parametrize("x", [0.25, 1.0, 2.0, math.sqrt(4.995), 3.0, 4.0])
    def test_matches_quadrature(self, x):
        assert q_function(x) == pytest.approx(_q_by_quadrature(x), rel=1e-9)

    def test_known_values(self):
        assert q_function(1.0) == pytest.approx(0.15865525393145707, rel=1e-12)
        assert q_function(2.0) == pytest.approx(0.022750131948179195, rel=1e-12)
        assert q_function(3.0) == pytest.approx(0.0013498980316301035, rel=1e-12)

    def test_symmetry(self):
        for x in (0.1, 0.7, 1.5, 3.3):
            assert q_function(x) + q_function(-x) == pytest.approx(1.0, abs=1e-15)

    def test_plateau_value(self):
        assert q_function(math.sqrt(4.995)) == pytest.approx(0.0127, abs=1e-4)

    def test_underflows_to_zero(self):
        assert q_function(math.sqrt(5000.0)) == 0.0
        assert isinstance(q_function(70.0), Probability)

    def test_array_matches_scalar(self):
        xs = np.array([-1.0, 0.0, 0.5, 2.0])
        np.testing.assert_allclose(q_function_array(xs), [q_function(x) for x in xs], rtol=0, atol=0)

    def test_rejects_nan(self):
        with pytest.raises(DomainError, match="x"):
            q_function(float("nan"))

    def test_strictly_decreasing_on_grid(self):
        q = q_function_array(np.linspace(-8.0, 8.0, 161))
        assert np.all(np.diff(q) < 0)

    def test_symmetry_on_grid(self):
        xs = np.linspace(-8.0, 8.0, 161)
        np.testing.assert_allclose(q_function_array(xs) + q_function_array(-xs), 1.0, rtol=0, atol=1e-12)

    def test_relative_accuracy_through_scaled_erfc(self):
        # Q(x) = erfcx(x / sqrt 2) * exp(-x^2 / 2) / 2
        xs = np.linspace(-8.0, 8.0, 321)
        reference = 0.5 * special.erfcx(xs / np.sqrt(2.0)) * np.exp(-xs * xs / 2.0)
        np.testing.assert_allclose(q_function_array(xs), reference, rtol=1e-12, atol=0)


class TestEntropies:
    def test_binary_entropy_endpoints(self):
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0
        assert binary_entropy(0.5) == pytest.approx(1.0, abs=1e-15)

    def test_binary_entropy_value(self):
        assert binary_entropy(0.11) == pytest.approx(0.49992, abs=1e-4)

    def test_binary_entropy_symmetric(self):
        assert binary_entropy(0.2) == pytest.approx(binary_entropy(0.8), abs=1e-15)

    def test_binary_entropy_symmetric_random(self):
        p = np.random.default_rng(1234).random(1000)
        np.testing.assert_allclose(binary_entropy_array(p), binary_entropy_array(1.0 - p), rtol=0, atol=1e-14)

    def test_binary_entropy_rejects_out_of_range(self):
        with pytest.raises(DomainError, match="p"):
            binary_entropy(1.2)

    def test_gaussian_entropy_unit_variance(self):
        assert gaussian_diff_entropy(1.0) == pytest.approx(0.5 * math.log2(2 * math.pi * math.e), rel=1e-14)
        assert gaussian_diff_entropy(1.0) == pytest.approx(2.0471, abs=1e-4)

    def test_gaussian_entropy_scales_with_log_variance(self):
        assert gaussian_diff_entropy(4.0) - gaussian_diff_entropy(1.0) == pytest.approx(1.0, abs=1e-14)

    def test_gaussian_entropy_can_be_negative(self):
        assert gaussian_diff_entropy(1e-6) < 0

    def test_gaussian_entropy_rejects_zero(self):
        with pytest.raises(DomainError, match="variance"):
            gaussian_diff_entropy(0.0)


class TestValueTypes:
    def test_probability_bounds(self):
        assert Probability(0.0) == 0.0
        assert Probability(1.0) == 1.0
        with pytest.raises(DomainError):
            Probability(-1e-9)
        with pytest.raises(DomainError, match="ber"):
            Probability(1.5, "ber")

    def test_bits_must_be_finite(self):
        assert Bits(-0.25) == -0.25
        with pytest.raises(DomainError):
            Bits(float("inf"))


class TestPoisson:
    def test_pmf_value(self):
        assert poisson_pmf(4, 4.0) == pytest.approx(0.19536681481316454, rel=1e-12)

    @pytest.mark.parametrize("a", [0.01, 1.0, 37.5, 1000.0])
    def test_pmf_matches_scipy(self, a):
        for k in (0, 1, int(a), int(a) + 3):
            assert poisson_pmf(k, a) == pytest.approx(stats.poisson.pmf(k, a), rel=1e-10)

    def test_pmf_rejects_bad_arguments(self):
        with pytest.raises(DomainError, match="k"):
            poisson_pmf(-1, 1.0)
        with pytest.raises(DomainError, match="k"):
            poisson_pmf(1.5, 1.0)
        with pytest.raises(DomainError, match="a"):
            poisson_pmf(1, 0.0)

    @pytest.mark.parametrize("a", [1e-3, 0.01, 1.0, 10.0, 100.0])
    @pytest.mark.parametrize("epsilon", [1e-6, 1e-12])
    def test_truncation_is_minimal_and_certified(self, a, epsilon):
        window = truncate_poisson(a, epsilon)
        law = stats.poisson(a)
        assert law.sf(window.k_max) <= epsilon
        if window.k_max > 0:
            assert law.sf(window.k_max - 1) > epsilon
        assert window.weights().sum() >= 1.0 - epsilon - 1e-14
        assert window.tail_bound <= epsilon

    def test_truncation_window_grows_with_a(self):
        assert truncate_poisson(100.0).k_max > truncate_poisson(1.0).k_max > truncate_poisson(0.01).k_max

    def test_truncation_small_a_window(self):
        # P(K > 3) = 1e-12 / 24 and P(K > 2) = 1e-9 / 6 for A = 1e-3
        assert truncate_poisson(1e-3, 1e-12).k_max == 3

    def test_truncation_rejects_bad_epsilon(self):
        with pytest.raises(DomainError, match="epsilon"):
            truncate_poisson(1.0, 0.0)
        with pytest.raises(DomainError, match="epsilon"):
            truncate_poisson(1.0, 1.0)

    def test_truncation_rejects_nonpositive_a(self):
        with pytest.raises(DomainError, match="a"):
            truncate_poisson(0.0)

    def test_window_validates_fields(self):
        with pytest.raises(DomainError, match="k_max"):
            PoissonTruncation(a=1.0, k_max=-1, tail_bound=0.1)
        assert list(PoissonTruncation(a=1.0, k_max=2, tail_bound=0.1).ks()) == [0, 1, 2]
