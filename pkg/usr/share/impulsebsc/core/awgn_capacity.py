"""Gaussian-input capacity of the Poisson-variance AWGN channel.

Four side-information scenarios (transmitter, receiver) each informed or
not of k. Every capacity is an output entropy minus a noise entropy, with
h(v) the Gaussian differential entropy of variance v, S the input power
spectral density and sigma_k2 = sigma_g2 + k sigma_f2 / A:

    C(+,+) = h(S + sigma_av2)          - Sum_k P(k) h(sigma_k2)
    C(+,-) = h(S + sigma_av2)          - h(sigma_av2)
    C(-,+) = Sum_k P(k) [h(S + sigma_k2) - h(sigma_k2)]
    C(-,-) = Sum_k P(k) h(S + sigma_k2) - h(sigma_av2)

The informed transmitter reaches the output entropy h(S + sigma_av2) in
closed form; no iterative water-filling is run.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from core.channel import ChannelKind, ChannelParams, noise_variance_array
from core.numerics import (
    DEFAULT_EPSILON,
    Bits,
    DomainError,
    gaussian_diff_entropy_array,
    require_positive,
    truncate_poisson,
)
from core.sweep import run_points

log = logging.getLogger(__name__)

DEFAULT_PSD = 7.28e-3

# Slack on the scenario ordering and decomposition checks
ORDERING_SLACK = 1e-12


@dataclass(frozen=True)
class KnowledgeScenario:
    """Which side knows the impulse count, written (transmitter, receiver)."""

    transmitter_informed: bool
    receiver_informed: bool

    @property
    def label(self) -> str:
        return ("+" if self.transmitter_informed else "-") + (
            "+" if self.receiver_informed else "-"
        )

    @classmethod
    def parse(cls, value) -> "KnowledgeScenario":
        """Accept a scenario or a two-character label such as '+-'."""
        if isinstance(value, cls):
            return value
        text = str(value).strip()
        if len(text) != 2 or any(c not in "+-" for c in text):
            raise DomainError("scenario", f"expected one of ++, +-, -+, --; got {value!r}")
        return cls(text[0] == "+", text[1] == "+")

    def __str__(self) -> str:
        return f"C({self.label[0]},{self.label[1]})"


ALL_SCENARIOS: Tuple[KnowledgeScenario, ...] = tuple(
    KnowledgeScenario.parse(label) for label in ("++", "+-", "-+", "--")
)


@dataclass(frozen=True)
class AwgnParams:
    """Input power spectral density P/2B plus the channel noise parameters.

    ``channel.eb`` plays no part here.
    """

    psd: float = DEFAULT_PSD
    channel: ChannelParams = field(default_factory=ChannelParams)

    def __post_init__(self):
        require_positive(self.psd, "psd")

    def with_a(self, a: float) -> "AwgnParams":
        return AwgnParams(psd=self.psd, channel=self.channel.with_a(a))


@dataclass(frozen=True)
class AwgnCurvePoint:
    """Capacity of one scenario at one A; ``capacity`` is None on error."""

    a: float
    scenario: KnowledgeScenario
    capacity: Optional[Bits]
    error: Optional[str] = None


@dataclass(frozen=True)
class _EntropyTerms:
    output_informed: float  # h(S + sigma_av2)
    output_averaged: float  # Sum P(k) h(S + sigma_k2)
    noise_informed: float  # Sum P(k) h(sigma_k2)
    noise_averaged: float  # h(sigma_av2)


def _state_mixture(params: AwgnParams, epsilon: float) -> Tuple[np.ndarray, np.ndarray]:
    """Renormalised Poisson weights and conditional variances sigma_k2."""
    channel = params.channel
    if channel.sigma_f2 == 0.0:
        return np.ones(1), np.array([channel.sigma_g2])
    window = truncate_poisson(channel.a, epsilon)
    weights = window.weights()
    # entropies are unbounded, so the missing tail mass must not shift their level
    weights = weights / weights.sum()
    return weights, noise_variance_array(ChannelKind.I, channel, window.ks())


def _entropy_terms(params: AwgnParams, epsilon: float) -> _EntropyTerms:
    weights, variances = _state_mixture(params, epsilon)
    s = params.psd
    sigma_av2 = params.channel.sigma_av2
    h_out_informed, h_noise_averaged = gaussian_diff_entropy_array([s + sigma_av2, sigma_av2])
    return _EntropyTerms(
        output_informed=float(h_out_informed),
        output_averaged=float(np.dot(weights, gaussian_diff_entropy_array(s + variances))),
        noise_informed=float(np.dot(weights, gaussian_diff_entropy_array(variances))),
        noise_averaged=float(h_noise_averaged),
    )


def _scenario_value(scenario: KnowledgeScenario, terms: _EntropyTerms) -> float:
    output = terms.output_informed if scenario.transmitter_informed else terms.output_averaged
    noise = terms.noise_informed if scenario.receiver_informed else terms.noise_averaged
    return output - noise


def _as_capacity(value: float, scenario: KnowledgeScenario, a: float) -> Bits:
    if value < 0.0:
        # averaged-entropy forms can dip below zero when psd < sigma_f2
        log.warning("%s = %.6g < 0 at A=%g; clamped to 0", scenario, value, a)
        value = 0.0
    return Bits(value, str(scenario))


def awgn_capacity(
    scenario: KnowledgeScenario, params: AwgnParams, epsilon: float = DEFAULT_EPSILON
) -> Bits:
    """Capacity in bits per transmission for one knowledge scenario."""
    scenario = KnowledgeScenario.parse(scenario)
    terms = _entropy_terms(params, epsilon)
    return _as_capacity(_scenario_value(scenario, terms), scenario, params.channel.a)


def awgn_capacity_table(
    params: AwgnParams, epsilon: float = DEFAULT_EPSILON
) -> Dict[KnowledgeScenario, Bits]:
    """All four scenario capacities, checked for C(+,+) >= C(+,-), C(-,+) >= C(-,-)."""
    terms = _entropy_terms(params, epsilon)
    a = params.channel.a
    table = {s: _as_capacity(_scenario_value(s, terms), s, a) for s in ALL_SCENARIOS}
    pp, pm, mp, mm = (table[s] for s in ALL_SCENARIOS)
    if not (
        pp + ORDERING_SLACK >= pm
        and pp + ORDERING_SLACK >= mp
        and pm + ORDERING_SLACK >= mm
        and mp + ORDERING_SLACK >= mm
    ):
        log.error("Scenario ordering violated at A=%g: %s", a, {str(k): float(v) for k, v in table.items()})
        raise ArithmeticError(f"scenario capacities out of order at A={a:g}")
    return table


def capacity_limit_large_a(params: AwgnParams) -> Bits:
    """A -> infinity common value 0.5*log2(1 + S / sigma_av2)."""
    ratio = params.psd / params.channel.sigma_av2
    return Bits(0.5 * math.log1p(ratio) / math.log(2.0), "C(*,*) limit")


def receiver_knowledge_gap(params: AwgnParams, epsilon: float = DEFAULT_EPSILON) -> Bits:
    """C(*,+) - C(*,-) = h(sigma_av2) - Sum_k P(k) h(sigma_k2) >= 0."""
    terms = _entropy_terms(params, epsilon)
    return Bits(max(0.0, terms.noise_averaged - terms.noise_informed), "receiver gap")


def transmitter_knowledge_gap(params: AwgnParams, epsilon: float = DEFAULT_EPSILON) -> Bits:
    """C(+,*) - C(-,*) = h(S + sigma_av2) - Sum_k P(k) h(S + sigma_k2) >= 0."""
    terms = _entropy_terms(params, epsilon)
    return Bits(max(0.0, terms.output_informed - terms.output_averaged), "transmitter gap")


def awgn_sweep(
    base: AwgnParams,
    grid: Sequence[float],
    scenarios: Iterable[KnowledgeScenario] = ALL_SCENARIOS,
    epsilon: float = DEFAULT_EPSILON,
    workers: int = 1,
) -> List[AwgnCurvePoint]:
    """One point per (A, scenario), A-major in grid order."""
    chosen = [KnowledgeScenario.parse(s) for s in scenarios]
    if not chosen:
        raise DomainError("scenario", "at least one scenario is required")

    points = []
    for a, table, error in run_points(
        lambda a: awgn_capacity_table(base.with_a(a), epsilon), grid, workers
    ):
        for scenario in chosen:
            if table is None:
                points.append(AwgnCurvePoint(a=float(a), scenario=scenario, capacity=None, error=error))
            else:
                points.append(AwgnCurvePoint(a=float(a), scenario=scenario, capacity=table[scenario]))
    return points
