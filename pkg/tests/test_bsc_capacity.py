"""Tests for core.bsc_capacity — informed / non-informed capacity and the equal-capacity search."""

import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "usr" / "share" / "impulsebsc"))

import numpy as np
import pytest

from core.bsc_capacity import (
    ORDERING_SLACK,
    capacity_informed,
    capacity_noninformed,
    capacity_point,
    capacity_sweep,
    equal_performance_shift,
    informed_a_for_capacity,
)
from core.channel import ChannelKind, ChannelParams
from core.numerics import binary_entropy, q_function


class TestScalarCapacities:
    def test_noiseless_is_one(self):
        p = ChannelParams(sigma_f2=0.0)
        assert capacity_noninformed(ChannelKind.I, p) == pytest.approx(1.0, abs=1e-15)

    def test_no_impulses_informed_equals_noninformed(self):
        p = ChannelParams(eb=1.0, sigma_g2=0.3, sigma_f2=0.0, a=2.0)
        for kind in ChannelKind:
            assert capacity_informed(kind, p) == capacity_noninformed(kind, p)

    def test_small_a_values(self):
        p = ChannelParams(a=0.01)
        assert capacity_informed(ChannelKind.I, p) == pytest.approx(0.99, abs=5e-3)
        assert capacity_noninformed(ChannelKind.I, p) == pytest.approx(0.96, abs=5e-3)

    def test_channel_two_large_a_near_zero(self):
        assert capacity_noninformed(ChannelKind.II, ChannelParams(a=1e4)) < 0.02

    def test_channel_one_large_a_merge(self):
        p = ChannelParams(a=1000.0)
        plateau = q_function(math.sqrt(p.eb / (2 * p.sigma_av2)))
        informed = capacity_informed(ChannelKind.I, p)
        assert informed == pytest.approx(1.0 - binary_entropy(plateau), abs=1e-3)
        assert abs(informed - capacity_noninformed(ChannelKind.I, p)) <= 1e-3

    @pytest.mark.parametrize("a", [1e-3, 1e-2])
    def test_small_a_informed_loss_is_about_a(self, a):
        loss = 1.0 - capacity_informed(ChannelKind.I, ChannelParams(a=a))
        assert 0.5 * a <= loss <= 1.5 * a

    @pytest.mark.parametrize("kind", list(ChannelKind))
    def test_non_increasing_in_impulse_power(self, kind):
        values = [
            (capacity_informed(kind, ChannelParams(a=0.5, sigma_f2=s)),
             capacity_noninformed(kind, ChannelParams(a=0.5, sigma_f2=s)))
            for s in (1e-5, 1e-4, 7.28e-4, 3e-3, 1e-2)
        ]
        for (i0, n0), (i1, n1) in zip(values, values[1:]):
            assert i1 <= i0 + 1e-15
            assert n1 <= n0 + 1e-15


class TestCapacitySweep:
    @pytest.mark.parametrize("kind", list(ChannelKind))
    def test_informed_dominates_on_log_grid(self, kind):
        grid = np.geomspace(1e-3, 1e3, 40)
        points = capacity_sweep(kind, ChannelParams(), grid)
        assert len(points) == 40
        for point in points:
            assert point.error is None
            assert 0.0 <= point.c_noninformed <= point.c_informed + ORDERING_SLACK <= 1.0 + ORDERING_SLACK

    def test_single_point_matches_scalar_calls(self):
        base = ChannelParams()
        point = capacity_sweep(ChannelKind.II, base, [0.7])[0]
        p = base.with_a(0.7)
        assert point.c_informed == capacity_informed(ChannelKind.II, p)
        assert point.c_noninformed == capacity_noninformed(ChannelKind.II, p)

    def test_bad_point_reported(self):
        points = capacity_sweep(ChannelKind.I, ChannelParams(), [1.0, 0.0])
        assert points[0].error is None
        assert points[1].c_informed is None and points[1].error

    def test_ordering_violation_raises(self, monkeypatch):
        import core.bsc_capacity as bsc

        monkeypatch.setattr(bsc, "capacity_informed", lambda kind, params, epsilon: 0.1)
        with pytest.raises(ArithmeticError, match="exceeds"):
            bsc.capacity_point(ChannelKind.I, ChannelParams(a=0.01))

    def test_parallel_sweep_matches_serial(self):
        grid = [0.01, 0.1, 1.0, 10.0]
        assert capacity_sweep(ChannelKind.I, ChannelParams(), grid, workers=3) == capacity_sweep(
            ChannelKind.I, ChannelParams(), grid
        )


class TestEqualPerformanceShift:
    def test_informed_receiver_tolerates_larger_a(self):
        result = equal_performance_shift(ChannelKind.I, ChannelParams(), 0.02)
        assert result.found
        assert 0.05 <= result.a_informed <= 0.12
        assert result.a_informed > 0.02

    def test_found_point_reaches_target(self):
        base = ChannelParams()
        result = equal_performance_shift(ChannelKind.I, base, 0.02)
        reached = capacity_informed(ChannelKind.I, base.with_a(result.a_informed))
        assert reached == pytest.approx(result.target_capacity, abs=1e-6)
        assert result.target_capacity == capacity_noninformed(ChannelKind.I, base.with_a(0.02))

    def test_no_impulses_is_identity(self):
        result = equal_performance_shift(ChannelKind.I, ChannelParams(sigma_f2=0.0), 0.3)
        assert result.a_informed == 0.3

    def test_unreachable_target(self):
        result = informed_a_for_capacity(ChannelKind.I, ChannelParams(), 1.0)
        assert not result.found
        assert result.a_informed is None
        assert "outside" in result.reason

    def test_rejects_nan_target(self):
        with pytest.raises(ValueError, match="target"):
            informed_a_for_capacity(ChannelKind.I, ChannelParams(), float("nan"))

    def test_capacity_point_carries_a(self):
        assert capacity_point(ChannelKind.I, ChannelParams(a=0.25)).a == 0.25
