"""Signal-level Monte Carlo check of the analytic BER.

Each symbol draws k ~ Poisson(A), a Gaussian noise sample with the
conditional variance of k, and counts an error when the noise exceeds the
decision distance sqrt(E_b / 2). That event has probability exactly
Q(sqrt(E_b / (2 sigma_k2))).

Randomness: ``n_streams`` PCG64 substreams are spawned from
``SeedSequence(seed)``; symbols are split across streams by a fixed block
partition, so results depend only on (seed, n_streams), never on thread
timing. numpy's Poisson sampler is exact (sequential-search inversion for
A < 10, PTRS transformed rejection above).
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, TypeVar

import numpy as np

from core.channel import ChannelKind, ChannelParams, noise_variance_array
from core.numerics import DomainError, Probability

log = logging.getLogger(__name__)

# Symbols drawn per vectorised step inside one stream
CHUNK_SIZE = 1 << 18

# z for a two-sided 95% normal interval
_Z95 = 1.96

T = TypeVar("T")


@dataclass(frozen=True)
class SimConfig:
    """Simulation input; ``n_streams`` fixes the substream partition."""

    kind: ChannelKind
    params: ChannelParams
    n_symbols: int
    seed: int
    n_streams: int = 1

    def __post_init__(self):
        if int(self.n_symbols) != self.n_symbols or self.n_symbols < 1:
            raise DomainError("n_symbols", f"must be an integer >= 1, got {self.n_symbols!r}")
        if int(self.n_streams) != self.n_streams or self.n_streams < 1:
            raise DomainError("n_streams", f"must be an integer >= 1, got {self.n_streams!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2 ** 64:
            raise DomainError("seed", f"must be an unsigned 64-bit integer, got {self.seed!r}")


@dataclass(frozen=True)
class BerEstimate:
    """Error count over trials with a 95% normal-approximation half-width.

    When no error is seen the half-width is the rule-of-three bound 3/trials.
    """

    errors: int
    trials: int
    p_hat: Probability
    ci_halfwidth_95: float
    seed: int

    @classmethod
    def from_counts(cls, errors: int, trials: int, seed: int) -> "BerEstimate":
        p_hat = errors / trials
        if errors == 0:
            half = 3.0 / trials
        else:
            half = _Z95 * math.sqrt(p_hat * (1.0 - p_hat) / trials)
        return cls(errors=errors, trials=trials, p_hat=Probability(p_hat, "p_hat"),
                   ci_halfwidth_95=half, seed=seed)


@dataclass(frozen=True)
class VarianceHistogram:
    """Normalised histogram of sampled conditional variances.

    ``atoms``/``atom_masses`` give the lattice support (one atom per observed
    k); ``edges``/``masses`` the binned view. Both mass arrays sum to 1.
    """

    edges: np.ndarray
    masses: np.ndarray
    atoms: np.ndarray
    atom_masses: np.ndarray
    mean: float
    variance: float
    samples: int


# ── Substreams ──────────────────────────────────────────────────


def spawn_generators(seed: int, n_streams: int) -> List[np.random.Generator]:
    """Independent PCG64 generators derived from (seed, stream index)."""
    children = np.random.SeedSequence(seed).spawn(n_streams)
    return [np.random.Generator(np.random.PCG64(child)) for child in children]


def block_sizes(n_symbols: int, n_streams: int) -> List[int]:
    """Fixed contiguous partition; the first n_symbols % n_streams blocks get one extra."""
    base, extra = divmod(n_symbols, n_streams)
    return [base + (1 if i < extra else 0) for i in range(n_streams)]


def _run_streams(
    config: SimConfig,
    per_stream: Callable[[int, np.random.Generator, int], T],
    workers: Optional[int],
) -> List[T]:
    generators = spawn_generators(config.seed, config.n_streams)
    sizes = block_sizes(config.n_symbols, config.n_streams)
    jobs = list(zip(range(config.n_streams), generators, sizes))
    workers = config.n_streams if workers is None else workers
    if workers <= 1:
        return [per_stream(*job) for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: per_stream(*job), jobs))


# ── Operations ──────────────────────────────────────────────────


def simulate_ber(config: SimConfig, workers: Optional[int] = None) -> BerEstimate:
    """Monte Carlo BER estimate; bit-identical for a fixed (seed, n_streams)."""
    params = config.params
    threshold = math.sqrt(params.eb / 2.0)

    def _stream(index: int, rng: np.random.Generator, size: int) -> int:
        errors = 0
        remaining = size
        while remaining > 0:
            n = min(CHUNK_SIZE, remaining)
            k = rng.poisson(params.a, n)
            sigma = np.sqrt(noise_variance_array(config.kind, params, k))
            noise = rng.standard_normal(n) * sigma
            errors += int(np.count_nonzero(noise > threshold))
            remaining -= n
        log.debug("Stream %d: %d errors in %d symbols", index, errors, size)
        return errors

    errors = sum(_run_streams(config, _stream, workers))
    estimate = BerEstimate.from_counts(errors, config.n_symbols, config.seed)
    log.info(
        "Simulated Channel %s, A=%g: %d/%d errors (p=%.6g +/- %.2g)",
        config.kind.value, params.a, errors, config.n_symbols,
        estimate.p_hat, estimate.ci_halfwidth_95,
    )
    return estimate


def empirical_variance_histogram(
    config: SimConfig, bins: int, workers: Optional[int] = None
) -> VarianceHistogram:
    """Histogram of sigma_k2 over sampled impulse counts."""
    if int(bins) != bins or bins < 1:
        raise DomainError("bins", f"must be an integer >= 1, got {bins!r}")
    params = config.params

    def _stream(index: int, rng: np.random.Generator, size: int) -> np.ndarray:
        counts = np.zeros(1, dtype=np.int64)
        remaining = size
        while remaining > 0:
            n = min(CHUNK_SIZE, remaining)
            chunk = np.bincount(rng.poisson(params.a, n))
            if chunk.size > counts.size:
                counts = np.pad(counts, (0, chunk.size - counts.size))
            counts[: chunk.size] += chunk
            remaining -= n
        return counts

    per_stream = _run_streams(config, _stream, workers)
    width = max(c.size for c in per_stream)
    counts = sum(np.pad(c, (0, width - c.size)) for c in per_stream)

    ks = np.flatnonzero(counts)
    weights = counts[ks] / config.n_symbols
    atoms = noise_variance_array(config.kind, params, ks)
    lo, hi = float(atoms.min()), float(atoms.max())
    if hi <= lo:
        # one observed variance: span up to the next lattice atom so no edge goes below it
        step = float(noise_variance_array(config.kind, params, ks[-1] + 1)) - lo
        hi = lo + (step if step > 0.0 else lo)
    masses, edges = np.histogram(atoms, bins=bins, range=(lo, hi), weights=weights)
    mean = float(np.dot(weights, atoms))
    variance = float(np.dot(weights, (atoms - mean) ** 2))
    return VarianceHistogram(
        edges=edges,
        masses=masses,
        atoms=atoms,
        atom_masses=weights,
        mean=mean,
        variance=variance,
        samples=config.n_symbols,
    )
