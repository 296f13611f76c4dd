"""Channel I / Channel II: conditional noise variance and bit-flip probability.

Both channels add background Gaussian noise (variance sigma_g2) to a
Poisson number k of impulses. In Channel I every impulse has variance
sigma_f2 / A, in Channel II every impulse has variance sigma_f2.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from core.numerics import DomainError, Probability, q_function_array, require_count, require_positive

# Reference constants (Watts, Joules)
DEFAULT_EB = 7.28e-3
DEFAULT_SIGMA_G2 = 7.28e-7
DEFAULT_SIGMA_F2 = 7.28e-4
DEFAULT_A = 1.0


class ChannelKind(Enum):
    """Which impulse-variance law the channel follows."""

    I = "I"
    II = "II"

    @classmethod
    def parse(cls, value) -> "ChannelKind":
        """Accept a ChannelKind, 'I'/'II', or '1'/'2'."""
        if isinstance(value, cls):
            return value
        text = str(value).strip().upper()
        text = {"1": "I", "2": "II"}.get(text, text)
        try:
            return cls(text)
        except ValueError:
            raise DomainError("kind", f"expected I or II, got {value!r}") from None


@dataclass(frozen=True)
class ChannelParams:
    """Physical quantities shared by every formula.

    E_b / variance ratios are used as plain numbers, as the model does.
    """

    eb: float = DEFAULT_EB
    sigma_g2: float = DEFAULT_SIGMA_G2
    sigma_f2: float = DEFAULT_SIGMA_F2
    a: float = DEFAULT_A

    def __post_init__(self):
        require_positive(self.eb, "eb")
        require_positive(self.sigma_g2, "sigma_g2")
        require_positive(self.a, "a")
        if not math.isfinite(self.sigma_f2) or self.sigma_f2 < 0:
            raise DomainError("sigma_f2", f"must be a finite value >= 0, got {self.sigma_f2!r}")

    @property
    def sigma_av2(self) -> float:
        """Average total noise variance sigma_g2 + sigma_f2."""
        return self.sigma_g2 + self.sigma_f2

    def with_a(self, a: float) -> "ChannelParams":
        return replace(self, a=a)


def _impulse_variance(kind: ChannelKind, params: ChannelParams) -> float:
    if kind is ChannelKind.I:
        return params.sigma_f2 / params.a
    return params.sigma_f2


def noise_variance_array(kind: ChannelKind, params: ChannelParams, k: np.ndarray) -> np.ndarray:
    """sigma_g2 + k * (per-impulse variance) for an array of counts."""
    return params.sigma_g2 + np.asarray(k, dtype=float) * _impulse_variance(kind, params)


def noise_variance(kind: ChannelKind, params: ChannelParams, k: int) -> float:
    """Conditional noise variance given k impulses."""
    k = require_count(k)
    return float(noise_variance_array(kind, params, k))


def transition_probability_array(
    kind: ChannelKind, params: ChannelParams, k: np.ndarray
) -> np.ndarray:
    """q(k) = Q(sqrt(E_b / (2 * variance(k)))) for an array of counts."""
    variance = noise_variance_array(kind, params, k)
    return q_function_array(np.sqrt(params.eb / (2.0 * variance)))


def transition_probability(kind: ChannelKind, params: ChannelParams, k: int) -> Probability:
    """Bit-flip probability given k impulses; underflows cleanly to 0."""
    k = require_count(k)
    return Probability(transition_probability_array(kind, params, k).item(), "q(k)")


def mean_noise_variance(kind: ChannelKind, params: ChannelParams) -> float:
    """Poisson average of the conditional variance."""
    return params.sigma_g2 + params.a * _impulse_variance(kind, params)


def conditional_variance_spread(params: ChannelParams) -> float:
    """Variance over k of the Channel I conditional variance: sigma_f2**2 / A."""
    return params.sigma_f2 ** 2 / params.a
