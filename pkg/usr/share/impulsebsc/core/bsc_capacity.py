"""BSC capacity with and without receiver knowledge of the impulse count."""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy import optimize

from core.ber import ber_analytic
from core.channel import ChannelKind, ChannelParams, transition_probability_array
from core.numerics import (
    DEFAULT_EPSILON,
    Bits,
    DomainError,
    binary_entropy,
    binary_entropy_array,
    truncate_poisson,
)
from core.sweep import run_points

log = logging.getLogger(__name__)

# Slack allowed on c_noninformed <= c_informed
ORDERING_SLACK = 1e-12

# Root search stops once |dA| / A falls below this
SHIFT_REL_TOL = 1e-6

# Log-spaced A grid scanned for the decreasing branch of the informed curve
_SCAN_LO = 1e-6
_SCAN_HI = 1e3
_SCAN_POINTS = 181


@dataclass(frozen=True)
class BscCapacityPoint:
    """Both capacities at one A; capacities are None when ``error`` is set."""

    a: float
    c_informed: Optional[Bits]
    c_noninformed: Optional[Bits]
    error: Optional[str] = None


@dataclass(frozen=True)
class ShiftResult:
    """Outcome of an equal-capacity search.

    ``a_informed`` is None when no A on the informed curve reaches the
    target; ``reason`` says why.
    """

    target_capacity: float
    a_informed: Optional[float]
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.a_informed is not None


def _clip_bits(value: float, name: str) -> Bits:
    return Bits(min(max(value, 0.0), 1.0), name)


def capacity_noninformed(
    kind: ChannelKind, params: ChannelParams, epsilon: float = DEFAULT_EPSILON
) -> Bits:
    """1 - H(BER): the receiver sees only the averaged channel."""
    ber = ber_analytic(kind, params, epsilon)
    return _clip_bits(1.0 - binary_entropy(ber), "C_noninformed")


def capacity_informed(
    kind: ChannelKind, params: ChannelParams, epsilon: float = DEFAULT_EPSILON
) -> Bits:
    """1 - Sum_k P(k) H(q(k)): the receiver knows k for every symbol.

    Truncation error is at most epsilon bits (tail mass times max H = 1).
    """
    if params.sigma_f2 == 0.0:
        return capacity_noninformed(kind, params, epsilon)
    window = truncate_poisson(params.a, epsilon)
    q = transition_probability_array(kind, params, window.ks())
    loss = float(np.dot(window.weights(), binary_entropy_array(q)))
    return _clip_bits(1.0 - loss, "C_informed")


def capacity_point(
    kind: ChannelKind, params: ChannelParams, epsilon: float = DEFAULT_EPSILON
) -> BscCapacityPoint:
    """Both capacities with the c_noninformed <= c_informed post-check."""
    informed = capacity_informed(kind, params, epsilon)
    noninformed = capacity_noninformed(kind, params, epsilon)
    if noninformed > informed + ORDERING_SLACK:
        log.error(
            "Capacity ordering violated at A=%g: informed %.15g < non-informed %.15g",
            params.a, informed, noninformed,
        )
        raise ArithmeticError(
            f"c_noninformed {noninformed:.15g} exceeds c_informed {informed:.15g}"
        )
    return BscCapacityPoint(a=params.a, c_informed=informed, c_noninformed=noninformed)


def capacity_sweep(
    kind: ChannelKind,
    base: ChannelParams,
    grid: Sequence[float],
    epsilon: float = DEFAULT_EPSILON,
    workers: int = 1,
) -> List[BscCapacityPoint]:
    """Informed and non-informed capacity along a grid of A values."""
    results = []
    for a, point, error in run_points(
        lambda a: capacity_point(kind, base.with_a(a), epsilon), grid, workers
    ):
        if point is None:
            results.append(BscCapacityPoint(a=float(a), c_informed=None, c_noninformed=None, error=error))
        else:
            results.append(point)
    return results


# ── Equal-performance search ────────────────────────────────────


def _decreasing_bracket(kind: ChannelKind, base: ChannelParams, epsilon: float):
    """(a_lo, a_hi, c_lo, c_hi) spanning the first decreasing branch of C_informed."""
    grid = np.logspace(math.log10(_SCAN_LO), math.log10(_SCAN_HI), _SCAN_POINTS)
    values = [capacity_informed(kind, base.with_a(a), epsilon) for a in grid]
    end = len(grid) - 1
    for i in range(len(grid) - 1):
        if values[i + 1] > values[i]:
            end = i
            break
    return grid[0], grid[end], values[0], values[end]


def informed_a_for_capacity(
    kind: ChannelKind,
    base: ChannelParams,
    target: float,
    epsilon: float = DEFAULT_EPSILON,
) -> ShiftResult:
    """A at which the informed capacity equals *target*, by a bracketed root search in log A.

    Only the decreasing branch starting at small A is searched.
    """
    if not math.isfinite(target):
        raise DomainError("target", f"must be finite, got {target!r}")
    a_lo, a_hi, c_lo, c_hi = _decreasing_bracket(kind, base, epsilon)
    if not c_hi <= target <= c_lo:
        return ShiftResult(
            target_capacity=target,
            a_informed=None,
            reason=(
                f"target {target:.6g} outside informed range "
                f"[{c_hi:.6g}, {c_lo:.6g}] on A in [{a_lo:.3g}, {a_hi:.3g}]"
            ),
        )

    def gap(log_a: float) -> float:
        return float(capacity_informed(kind, base.with_a(math.exp(log_a)), epsilon)) - target

    # |d ln A| approximates |dA| / A
    log_found = optimize.brentq(gap, math.log(a_lo), math.log(a_hi), xtol=SHIFT_REL_TOL, rtol=1e-12)
    lo = math.exp(log_found - SHIFT_REL_TOL)
    hi = math.exp(log_found + SHIFT_REL_TOL)
    if gap(math.log(lo)) < gap(math.log(hi)):
        raise ArithmeticError(
            f"informed capacity is not decreasing on [{lo:.6g}, {hi:.6g}]"
        )
    a_found = math.exp(log_found)
    log.debug("Informed capacity %.9g reached at A=%.9g", target, a_found)
    return ShiftResult(target_capacity=target, a_informed=a_found)


def equal_performance_shift(
    kind: ChannelKind,
    base: ChannelParams,
    a_noninformed: float,
    epsilon: float = DEFAULT_EPSILON,
) -> ShiftResult:
    """A at which the informed receiver matches the non-informed one at *a_noninformed*."""
    params = base.with_a(a_noninformed)
    target = float(capacity_noninformed(kind, params, epsilon))
    if base.sigma_f2 == 0.0:
        # both curves are the same constant
        return ShiftResult(target_capacity=target, a_informed=params.a)
    return informed_a_for_capacity(kind, base, target, epsilon)
