"""Special functions shared by every channel computation.

Gaussian tail Q, binary entropy, Gaussian differential entropy and the
Poisson pmf with a certified truncation window.

Q accuracy: Q(x) = erfc(x/sqrt(2))/2 through ``scipy.special.erfc`` (Cephes
rational approximations). Cephes documents a peak relative error of
5.7e-14 for erfc on [0, 26.6], which bounds Q well inside 1e-12 relative
on [-8, 8]. For x > ~37.5 the result underflows to 0.0 (absolute error
below 1e-300); callers treat 0 as a valid probability.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import special, stats

log = logging.getLogger(__name__)

# Default Poisson tail mass left outside every truncated sum
DEFAULT_EPSILON = 1e-12

_LN2 = math.log(2.0)
_TWO_PI_E = 2.0 * math.pi * math.e


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""

    def __init__(self, parameter: str, message: str):
        super().__init__(f"{parameter}: {message}")
        self.parameter = parameter


class Probability(float):
    """A float constrained to [0, 1]."""

    def __new__(cls, value: float, name: str = "probability"):
        value = float(value)
        if not 0.0 <= value <= 1.0:
            raise DomainError(name, f"{value!r} is not in [0, 1]")
        return super().__new__(cls, value)


class Bits(float):
    """An information quantity in bits; finite, possibly negative."""

    def __new__(cls, value: float, name: str = "bits"):
        value = float(value)
        if not math.isfinite(value):
            raise DomainError(name, f"{value!r} is not finite")
        return super().__new__(cls, value)


def require_positive(value: float, name: str) -> float:
    """Return *value* as float, raising DomainError unless finite and > 0."""
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(name, f"must be a finite value > 0, got {value!r}")
    return value


def require_count(value: float, name: str = "k") -> int:
    """Return *value* as int, raising DomainError unless it is a whole number >= 0."""
    try:
        whole = float(value).is_integer() and value >= 0
    except (TypeError, ValueError):
        whole = False
    if not whole:
        raise DomainError(name, f"must be a nonnegative integer, got {value!r}")
    return int(value)


# ── Gaussian tail ───────────────────────────────────────────────


def q_function_array(x: np.ndarray) -> np.ndarray:
    """Vectorised upper Gaussian tail; no input checking."""
    return 0.5 * special.erfc(np.asarray(x, dtype=float) / math.sqrt(2.0))


def q_function(x: float) -> Probability:
    """Probability that a standard normal variable exceeds *x*."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("x", f"must be finite, got {x!r}")
    return Probability(0.5 * special.erfc(x / math.sqrt(2.0)), "Q(x)")


# ── Entropies ───────────────────────────────────────────────────


def binary_entropy_array(p: np.ndarray) -> np.ndarray:
    """Vectorised binary entropy in bits, H(0) = H(1) = 0."""
    p = np.asarray(p, dtype=float)
    return (special.entr(p) + special.entr(1.0 - p)) / _LN2


def binary_entropy(p: float) -> Bits:
    """Binary entropy -p*log2(p) - (1-p)*log2(1-p)."""
    p = Probability(p, "p")
    return Bits(binary_entropy_array(p).item(), "H(p)")


def gaussian_diff_entropy_array(variance: np.ndarray) -> np.ndarray:
    """Vectorised 0.5*log2(2*pi*e*variance); variance must be positive."""
    return 0.5 * np.log2(_TWO_PI_E * np.asarray(variance, dtype=float))


def gaussian_diff_entropy(variance: float) -> Bits:
    """Differential entropy of a Gaussian with the given variance, in bits."""
    variance = require_positive(variance, "variance")
    return Bits(0.5 * math.log2(_TWO_PI_E * variance), "h(variance)")


# ── Poisson ─────────────────────────────────────────────────────


def poisson_pmf_array(k: np.ndarray, a: float) -> np.ndarray:
    """Log-space Poisson pmf exp(k*ln a - a - lnGamma(k+1))."""
    k = np.asarray(k, dtype=float)
    return np.exp(special.xlogy(k, a) - a - special.gammaln(k + 1.0))


def poisson_pmf(k: int, a: float) -> Probability:
    """P(K = k) for K ~ Poisson(a)."""
    a = require_positive(a, "a")
    k = require_count(k)
    return Probability(min(1.0, poisson_pmf_array(k, a).item()), "P(k)")


@dataclass(frozen=True)
class PoissonTruncation:
    """Finite window [0, k_max] of a Poisson(a) law.

    ``tail_bound`` is the mass P(K > k_max) left outside the window.
    """

    a: float
    k_max: int
    tail_bound: float

    def __post_init__(self):
        if self.a <= 0:
            raise DomainError("a", "Poisson mean must be > 0")
        if self.k_max < 0:
            raise DomainError("k_max", "must be >= 0")
        if not 0.0 < self.tail_bound < 1.0:
            raise DomainError("tail_bound", "must lie in (0, 1)")

    def ks(self) -> np.ndarray:
        """Impulse counts 0..k_max."""
        return np.arange(self.k_max + 1)

    def weights(self) -> np.ndarray:
        """P(k) for every k in the window (sums to >= 1 - tail_bound)."""
        return poisson_pmf_array(self.ks(), self.a)


def truncate_poisson(a: float, epsilon: float = DEFAULT_EPSILON) -> PoissonTruncation:
    """Smallest window [0, k_max] whose Poisson(a) mass is at least 1 - epsilon."""
    a = require_positive(a, "a")
    epsilon = float(epsilon)
    if not 0.0 < epsilon < 1.0:
        raise DomainError("epsilon", f"must lie in (0, 1), got {epsilon!r}")

    law = stats.poisson(a)
    k_max = max(0, int(law.isf(epsilon)))
    # isf is an inverse of a discrete cdf; settle on the exact minimum
    while law.sf(k_max) > epsilon:
        k_max += 1
    while k_max > 0 and law.sf(k_max - 1) <= epsilon:
        k_max -= 1

    tail = float(law.sf(k_max))
    if tail <= 0.0:
        tail = float(np.finfo(float).tiny)
    log.debug("Poisson(%g) truncated at k_max=%d (tail %.3g)", a, k_max, tail)
    return PoissonTruncation(a=a, k_max=k_max, tail_bound=tail)
