"""k-uniform hypergraphs over [N] and the exact oracles built on them.

Vertices are the integers 1..N. Edges are stored as sorted tuples and the
edge family is kept in lexicographic order, so every derived report is
deterministic.
"""
from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterable

import numpy as np

from . import config
from .errors import ValidationError
from .rng import uniforms


@dataclass(frozen=True)
class Hypergraph:
    ground_size: int
    uniformity: int
    edges: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        N, k = self.ground_size, self.uniformity
        if N < 0 or k < 1:
            raise ValidationError(f"need N >= 0 and k >= 1, got N={N}, k={k}")
        canon = set()
        for e in self.edges:
            t = tuple(sorted(int(v) for v in e))
            if len(t) != k or len(set(t)) != k:
                raise ValidationError(f"edge {e} does not have {k} distinct elements")
            if t[0] < 1 or t[-1] > N:
                raise ValidationError(f"edge {e} leaves the ground set [1, {N}]")
            canon.add(t)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    def __len__(self):
        return len(self.edges)

    def density(self, q):
        """The coefficient a in |H| = a * N**q."""
        return len(self.edges) / self.ground_size**q

    @property
    def masks(self):
        return _edge_masks(self)


@lru_cache(maxsize=256)
def _edge_masks(H):
    return tuple(sum(1 << (v - 1) for v in e) for e in H.edges)


def parse_hypergraph(text):
    """Parse the ``N k`` header + one-edge-per-line format ('#' lines ignored)."""
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([int(tok) for tok in line.split()])
    if not rows or len(rows[0]) != 2:
        raise ValueError("hypergraph file must start with a line 'N k'")
    (N, k), body = rows[0], rows[1:]
    return Hypergraph(N, k, tuple(tuple(r) for r in body))


def read_hypergraph(path):
    return parse_hypergraph(Path(path).read_text())


def format_hypergraph(H):
    lines = [f"{H.ground_size} {H.uniformity}"]
    lines += [" ".join(map(str, e)) for e in H.edges]
    return "\n".join(lines) + "\n"


def degree_bound(H, j):
    """Delta_j: the largest number of edges sharing a common j-set."""
    if not 0 <= j <= H.uniformity:
        raise ValueError(f"j must lie in [0, {H.uniformity}], got {j}")
    if not H.edges:
        return 0
    if j == 0:
        return len(H.edges)
    tally = Counter(s for e in H.edges for s in combinations(e, j))
    return max(tally.values())


def degree_profile(H):
    return [degree_bound(H, j) for j in range(H.uniformity + 1)]


def expected_count(H, p):
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return len(H.edges) * p**H.uniformity


def induced_count(H, S: Iterable[int]):
    S = set(S)
    bad = [v for v in S if not 1 <= v <= H.ground_size]
    if bad:
        raise ValueError(f"elements {sorted(bad)} outside [1, {H.ground_size}]")
    return sum(1 for e in H.edges if S.issuperset(e))


@dataclass(frozen=True)
class SubsetSample:
    members: frozenset
    p: float
    seed: int
    trial_index: int


def sample_subset(N, p, seed, trial_index):
    """Binomial random subset of [1, N] drawn from stream (seed, trial_index)."""
    if N < 0 or not 0 <= p <= 1:
        raise ValueError("need N >= 0 and p in [0, 1]")
    u = uniforms(seed, trial_index, N)
    members = frozenset(int(i) + 1 for i in np.flatnonzero(u < p))
    return SubsetSample(members, p, seed, trial_index)


def subset_count_histogram(masks, n_bits, chunk_bits=20):
    """Joint histogram of (#masks inside S, |S|) over all subsets S of n_bits.

    ``masks`` may repeat; each repetition counts separately. Returns an
    integer array of shape (len(masks) + 1, n_bits + 1).
    """
    masks = list(masks)
    hist = np.zeros((len(masks) + 1, n_bits + 1), dtype=np.int64)
    total = 1 << n_bits
    step = 1 << min(chunk_bits, n_bits)
    mask_arr = np.array(masks, dtype=np.uint64)
    for start in range(0, total, step):
        S = np.arange(start, start + step, dtype=np.uint64)
        counts = np.zeros(step, dtype=np.int64)
        for c in mask_arr:
            counts += (S & c) == c
        sizes = np.bitwise_count(S).astype(np.int64)
        flat = np.bincount(counts * (n_bits + 1) + sizes, minlength=hist.size)
        hist += flat.reshape(hist.shape)
    return hist


@lru_cache(maxsize=64)
def _hypergraph_histogram(H):
    return subset_count_histogram(H.masks, H.ground_size)


def _check_exact_n(N, max_n):
    config.check_guard(N, config.EXACT_TAIL_MAX_N if max_n is None else max_n,
                       "ground size N for subset enumeration")


def tail_from_histogram(hist, n_bits, p, threshold):
    """Sum of p^|S| (1-p)^(n-|S|) over subsets whose count reaches threshold."""
    q = 1.0 - p
    weights = [p**s * q ** (n_bits - s) for s in range(n_bits + 1)]
    terms = []
    for x in range(hist.shape[0]):
        if x < threshold:
            continue
        row = hist[x]
        terms.extend(int(row[s]) * weights[s] for s in np.flatnonzero(row))
    return math.fsum(terms)


def distribution_from_histogram(hist, n_bits, p):
    q = 1.0 - p
    weights = [p**s * q ** (n_bits - s) for s in range(n_bits + 1)]
    dist = {}
    for x in range(hist.shape[0]):
        row = hist[x]
        nz = np.flatnonzero(row)
        if len(nz):
            dist[x] = math.fsum(int(row[s]) * weights[s] for s in nz)
    return dist


def exact_distribution(H, p, max_n=None):
    """P(X = x) for every attainable x, by enumerating all 2^N subsets."""
    _check_exact_n(H.ground_size, max_n)
    return distribution_from_histogram(_hypergraph_histogram(H), H.ground_size, p)


def exact_tail(H, p, threshold, max_n=None):
    """P(X >= threshold) by full subset enumeration."""
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    _check_exact_n(H.ground_size, max_n)
    if threshold <= 0:
        return 1.0
    return tail_from_histogram(_hypergraph_histogram(H), H.ground_size, p, threshold)


def moment_polynomial(H, m, max_tuples=None):
    """Coefficients c_s with E X^m = sum_s c_s p^s.

    c_s counts the ordered m-tuples of edges whose union has s elements.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    limit = config.EXACT_MOMENT_MAX_TUPLES if max_tuples is None else max_tuples
    config.check_guard(len(H.edges) ** m, limit, "|H|^m for moment expansion")
    states = {0: 1}
    for _ in range(m):
        nxt = defaultdict(int)
        for union, mult in states.items():
            for e in H.masks:
                nxt[union | e] += mult
        states = nxt
    coeffs = defaultdict(int)
    for union, mult in states.items():
        coeffs[union.bit_count()] += mult
    return dict(sorted(coeffs.items()))


def exact_moment(H, p, m, max_tuples=None):
    """E X^m via the expansion over ordered m-tuples of edges."""
    coeffs = moment_polynomial(H, m, max_tuples)
    return math.fsum(c * p**s for s, c in coeffs.items())


def moment_from_distribution(H, p, m, max_n=None):
    """E X^m as sum_x x^m P(X = x); independent of :func:`exact_moment`."""
    dist = exact_distribution(H, p, max_n)
    return math.fsum(x**m * w for x, w in dist.items())
