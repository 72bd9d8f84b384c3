"""Sampling, Monte Carlo tail estimates, exact rooted tails and sandwich checks."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from statistics import NormalDist
from typing import Callable, Optional, Union

import numpy as np

from . import config
from .hypergraph import induced_count, sample_subset, subset_count_histogram, tail_from_histogram
from .moments import BoundEnvelope
from .rng import uniforms
from .rooted.analysis import pair_index
from .rooted.copies import count_rooted_copies, rooted_copies
from .rooted.graph import Graph, complete_graph

Model = Callable[[int, int], int]


def sample_gnp(n, p, seed, trial_index):
    """G(n, p) from stream (seed, trial_index); pairs drawn in lexicographic order."""
    if n < 0 or not 0 <= p <= 1:
        raise ValueError("need n >= 0 and p in [0, 1]")
    pairs = list(combinations(range(n), 2))
    u = uniforms(seed, trial_index, len(pairs))
    return Graph(n, tuple(pairs[i] for i in np.flatnonzero(u < p)))


def wilson_interval(hits, trials, confidence=0.95):
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    phat = hits / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    lo, hi = max(0.0, centre - half), min(1.0, centre + half)
    # keep the point estimate inside the interval despite rounding
    return min(lo, phat), max(hi, phat)


@dataclass(frozen=True)
class TailEstimate:
    hits: int
    trials: int
    estimate: float
    ci_low: float
    ci_high: float
    seed: int
    exact: Optional[float] = None

    @property
    def half_width(self):
        return (self.ci_high - self.ci_low) / 2


def monte_carlo_tail(model: Model, threshold, trials, seed, workers=1, exact=None):
    """Fraction of trials with ``model(seed, i) >= threshold``, with a Wilson 95% CI.

    Trial i always uses stream (seed, i), so the result does not depend on
    ``workers``.
    """
    if trials < 1:
        raise ValueError("trials must be positive")

    def run(lo, hi):
        return sum(1 for i in range(lo, hi) if model(seed, i) >= threshold)

    if workers <= 1:
        hits = run(0, trials)
    else:
        step = math.ceil(trials / workers)
        bounds = [(lo, min(trials, lo + step)) for lo in range(0, trials, step)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(lambda b: run(*b), bounds))
    lo, hi = wilson_interval(hits, trials)
    return TailEstimate(hits, trials, hits / trials, lo, hi, seed, exact)


def hypergraph_model(H, p) -> Model:
    def count(seed, i):
        return induced_count(H, sample_subset(H.ground_size, p, seed, i).members)
    return count


def rooted_model(G_R, n, p) -> Model:
    def count(seed, i):
        return count_rooted_copies(sample_gnp(n, p, seed, i), G_R.r, G_R)
    return count


def root_degree_model(n, p) -> Model:
    """Rooted-edge count: edges at vertex 0 of G(n, p).

    Pairs (0, j) are the first n - 1 pairs of the lexicographic order, so
    this reads the same draws as :func:`sample_gnp` without building a graph.
    """
    total = n * (n - 1) // 2

    def count(seed, i):
        return int(np.count_nonzero(uniforms(seed, i, total)[: n - 1] < p))
    return count


@lru_cache(maxsize=32)
def _rooted_histogram(G_R, n):
    idx = pair_index(n)
    masks = [sum(1 << (idx[e] - 1) for e in edges)
             for _, edges in rooted_copies(complete_graph(n), G_R.r, G_R)]
    return subset_count_histogram(masks, len(idx))


def exact_tail_rooted(G_R, n, p, threshold, max_pairs=None):
    """P(X_G^R >= threshold) in G(n, p) by enumerating every edge subset of K_n."""
    pairs = n * (n - 1) // 2
    config.check_guard(pairs, config.ROOTED_TAIL_MAX_PAIRS if max_pairs is None else max_pairs,
                       "C(n, 2) for edge-subset enumeration")
    if threshold <= 0:
        return 1.0
    return tail_from_histogram(_rooted_histogram(G_R, n), pairs, p, threshold)


def binomial_tail(n, p, k):
    """P(Bin(n, p) >= k), summed exactly term by term."""
    k = max(0, math.ceil(k))
    return math.fsum(math.comb(n, i) * p**i * (1 - p) ** (n - i) for i in range(k, n + 1))


@dataclass(frozen=True)
class Verdict:
    passed: bool
    side: Optional[str] = None
    margin: float = 0.0

    @property
    def label(self):
        return "PASS" if self.passed else "FAIL"


def envelope_check(envelope: BoundEnvelope, truth: Union[float, TailEstimate]):
    """Check lower <= truth <= upper.

    Against an exact value the comparison is direct. Against a Monte Carlo
    estimate a side fails only when the bound lies beyond the confidence
    interval in the violating direction.
    """
    lower = envelope.lower_prob
    upper = envelope.upper_tail_bound
    if isinstance(truth, TailEstimate):
        lo_ref, hi_ref = truth.ci_high, truth.ci_low
    else:
        lo_ref = hi_ref = truth
    if lower > lo_ref:
        return Verdict(False, "lower", lower - lo_ref)
    if upper < hi_ref:
        return Verdict(False, "upper", hi_ref - upper)
    return Verdict(True)
