"""Average bit-error rate of Channel I and Channel II.

The exact BER is the Poisson mixture sum over q(k); the large-A and small-A
closed forms are the limiting expressions of that sum.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np

from core.channel import (
    ChannelKind,
    ChannelParams,
    transition_probability,
    transition_probability_array,
)
from core.numerics import (
    DEFAULT_EPSILON,
    DomainError,
    Probability,
    q_function,
    q_function_array,
    truncate_poisson,
)
from core.sweep import run_points


class SweepAxis(Enum):
    """Swept quantity of a BER curve."""

    A = "a"
    SNR_DB = "snr"

    @classmethod
    def parse(cls, value) -> "SweepAxis":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise DomainError("axis", f"expected 'a' or 'snr', got {value!r}") from None


@dataclass(frozen=True)
class BerCurvePoint:
    """One point of a BER curve; ``ber`` is None when ``error`` is set."""

    x: float
    ber: Optional[Probability]
    error: Optional[str] = None


def snr_db(params: ChannelParams) -> float:
    """SNR in dB, 10*log10(E_b / sigma_g2)."""
    return 10.0 * math.log10(params.eb / params.sigma_g2)


def params_at_snr(base: ChannelParams, db: float) -> ChannelParams:
    """Copy of *base* whose background variance gives the requested SNR."""
    if not math.isfinite(db):
        raise DomainError("snr_db", f"must be finite, got {db!r}")
    return replace(base, sigma_g2=base.eb / 10.0 ** (db / 10.0))


def ber_analytic(
    kind: ChannelKind, params: ChannelParams, epsilon: float = DEFAULT_EPSILON
) -> Probability:
    """Sum_k P(k) q(k) over the certified truncation window.

    The omitted tail contributes at most epsilon / 2.
    """
    if params.sigma_f2 == 0.0:
        # every state flips with the same probability
        return transition_probability(kind, params, 0)
    window = truncate_poisson(params.a, epsilon)
    q = transition_probability_array(kind, params, window.ks())
    total = float(np.dot(window.weights(), q))
    return Probability(min(max(total, 0.0), 1.0), "BER")


def ber_limit_large_a(kind: ChannelKind, params: ChannelParams) -> Probability:
    """A -> infinity: Q at the mean variance (Channel I), 1/2 (Channel II)."""
    if kind is ChannelKind.II:
        return Probability(0.5)
    return q_function(math.sqrt(params.eb / (2.0 * params.sigma_av2)))


def ber_limit_small_a(kind: ChannelKind, params: ChannelParams) -> Probability:
    """A -> 0 closed forms, evaluated verbatim.

    Channel I: exp(-A) * q_g + A/2.
    Channel II: (1 - A) * q_g + A * Q(sqrt(E_b / (2 (sigma_g2 + sigma_f2)))).
    Meant for A << 1; no range check.
    """
    q_background = q_function(math.sqrt(params.eb / (2.0 * params.sigma_g2)))
    a = params.a
    if kind is ChannelKind.I:
        value = math.exp(-a) * q_background + a / 2.0
    else:
        q_single = q_function(math.sqrt(params.eb / (2.0 * params.sigma_av2)))
        value = (1.0 - a) * q_background + a * q_single
    return Probability(min(max(value, 0.0), 1.0), "BER limit")


def error_floor(
    kind: ChannelKind, params: ChannelParams, epsilon: float = DEFAULT_EPSILON
) -> Probability:
    """High-SNR floor: Sum_{k>=1} P(k) q(k) with the background noise removed."""
    if params.sigma_f2 == 0.0:
        return Probability(0.0)
    window = truncate_poisson(params.a, epsilon)
    ks = window.ks()[1:]
    impulse = params.sigma_f2 / params.a if kind is ChannelKind.I else params.sigma_f2
    q = q_function_array(np.sqrt(params.eb / (2.0 * ks * impulse)))
    return Probability(float(np.dot(window.weights()[1:], q)), "error floor")


def ber_sweep(
    kind: ChannelKind,
    base: ChannelParams,
    axis: SweepAxis,
    grid: Sequence[float],
    epsilon: float = DEFAULT_EPSILON,
    workers: int = 1,
) -> List[BerCurvePoint]:
    """ber_analytic along A or along SNR (dB, varying sigma_g2)."""
    axis = SweepAxis.parse(axis)

    def _point(x: float) -> Probability:
        if axis is SweepAxis.A:
            params = base.with_a(x)
        else:
            params = params_at_snr(base, x)
        return ber_analytic(kind, params, epsilon)

    return [
        BerCurvePoint(x=float(x), ber=ber, error=error)
        for x, ber, error in run_points(_point, grid, workers)
    ]
