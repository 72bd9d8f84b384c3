"""Finite-size moment and Markov upper bounds, certificate lower bounds.

The upper bound replaces the asymptotic O(.) estimates of the moment
recursion with exact combinatorial counts: given the union U of m-1 edges
(|U| <= (m-1)k), the edges meeting U in at least j vertices number at most
C((m-1)k, j) * Delta_j. Hence

    E X^m <= mu * (|H| p^k + sum_{j>=1} C((m-1)k, j) Delta_j p^(k-j))^(m-1)

holds at every N with no hidden constants.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from . import config
from .errors import CertificateError, InfeasibleError
from .hypergraph import degree_profile, expected_count, induced_count


# 64 ulps of outward rounding for a probability computed as a float
_ROUND_DOWN = 1 - 64 * 2.0**-53


def _moment_base(k, m, profile, p):
    """The bracketed factor of the moment bound for a given m."""
    total = profile[0] * p**k
    for j in range(1, k + 1):
        total += math.comb((m - 1) * k, j) * profile[j] * p ** (k - j)
    return total


def moment_upper_bound(H, p, m):
    if m < 1:
        raise ValueError("m must be a positive integer")
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    mu = expected_count(H, p)
    if m == 1 or mu == 0:
        return mu
    return mu * _moment_base(H.uniformity, m, degree_profile(H), p) ** (m - 1)


def log_moment_upper_bound(H, p, m):
    """Natural log of :func:`moment_upper_bound`, safe for large m."""
    mu = expected_count(H, p)
    if mu == 0:
        return -math.inf
    if m == 1:
        return math.log(mu)
    base = _moment_base(H.uniformity, m, degree_profile(H), p)
    return math.log(mu) + (m - 1) * math.log(base)


def default_m_max(mu, q):
    if mu <= 0:
        return 1
    return min(config.M_MAX_CAP, max(1, math.ceil(2 * mu ** (1 / float(q)))))


def markov_tail_upper(H, p, t, m_max):
    """min over 1 <= m <= m_max of E X^m / (t mu)^m, using the moment bound.

    Returns ``(bound, optimal_m)``; ties go to the smaller m.
    """
    if t <= 1:
        raise ValueError(f"t must exceed 1, got {t}")
    if m_max < 1:
        raise ValueError("m_max must be a positive integer")
    mu = expected_count(H, p)
    if mu <= 0:
        raise ValueError("mu = 0: the tail event is degenerate")
    k, profile = H.uniformity, degree_profile(H)
    log_tmu = math.log(t * mu)
    best_log, best_m = -math.log(t), 1
    for m in range(2, m_max + 1):
        base = _moment_base(k, m, profile, p)
        val = math.log(mu) + (m - 1) * math.log(base) - m * log_tmu
        if val < best_log:
            best_log, best_m = val, m
    if best_m == 1:
        return min(1.0, 1 / t), 1
    return min(1.0, math.exp(best_log)), best_m


def _as_fraction(q):
    if isinstance(q, (int, Fraction)):
        return Fraction(q)
    return Fraction(q).limit_denominator(10**6)


def scale_branches(mu, q, k, p):
    """The two candidate exponents for (possibly non-integer) q.

    Returns ``(mu^(1/q) p^(k(1/floor(q) - 1/q)), mu^(1/ceil(q)))``. When
    floor(q) = 0 the first branch is taken as 0.
    """
    q = _as_fraction(q)
    fl, cl = math.floor(q), math.ceil(q)
    root = mu ** (1 / int(q)) if q.denominator == 1 else mu ** (1 / float(q))
    if fl == 0:
        first = 0.0
    else:
        expo = k * (Fraction(1, fl) - 1 / q)
        first = root * p ** (float(expo) if expo else 0)
    second = mu ** (1 / cl)
    return first, second


def exponent_scales(mu, q, k, p):
    """(lower, upper) exponent scales: mu^(1/q) log(1/p) and the tail-rate scale."""
    if not 0 < p < 1:
        raise ValueError("exponent scales need 0 < p < 1")
    qf = _as_fraction(q)
    if not 0 < qf <= k:
        raise ValueError(f"q must lie in (0, {k}], got {q}")
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    if qf.denominator == 1:
        root = mu ** (1 / int(qf))
        return root * math.log(1 / p), root
    lower = mu ** (1 / float(qf)) * math.log(1 / p)
    return lower, max(scale_branches(mu, qf, k, p))


def certificate_tail_lower(H, gamma0, p, t):
    """log P(Gamma_p contains gamma0) = |gamma0| log p, after validating gamma0."""
    if not 0 < p < 1:
        raise ValueError("certificate bound needs 0 < p < 1")
    gamma0 = set(gamma0)
    need = t * expected_count(H, p)
    have = induced_count(H, gamma0)
    if have < need:
        raise CertificateError(
            f"certificate hosts {have} edges, needs at least {need}",
            achieved=have, required=need,
        )
    return len(gamma0) * math.log(p)


def greedy_certificate(H, p, t, budget=None):
    """Grow a vertex set greedily until it hosts at least t*mu edges.

    Each step adds the vertex completing the most new edges; ties go to the
    vertex touching the most unfinished edges, then to the lowest index. Returns a frozenset, or None if ``budget`` vertices do not suffice.
    """
    need = t * expected_count(H, p)
    if need > len(H.edges):
        raise InfeasibleError(f"t*mu = {need} exceeds |H| = {len(H.edges)}")
    budget = H.ground_size if budget is None else budget
    incident = [[] for _ in range(H.ground_size + 1)]
    for idx, e in enumerate(H.edges):
        for v in e:
            incident[v].append(idx)
    missing = [H.uniformity] * len(H.edges)
    chosen: list[int] = []
    inside = 0
    free = set(range(1, H.ground_size + 1))
    while inside < need:
        if len(chosen) >= budget or not free:
            return None
        best_v, best_key = None, None
        for v in sorted(free):
            gain = sum(1 for i in incident[v] if missing[i] == 1)
            key = (gain, sum(1 for i in incident[v] if missing[i] > 1))
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        best_gain = best_key[0]
        free.discard(best_v)
        chosen.append(best_v)
        for i in incident[best_v]:
            missing[i] -= 1
        inside += best_gain
    return frozenset(chosen)


@dataclass(frozen=True)
class BoundEnvelope:
    mu: float
    t: float
    q: Optional[float]
    lower_log_prob: Optional[float]
    upper_tail_bound: float
    optimal_m: int
    lower_exponent_scale: Optional[float]
    upper_exponent_scale: Optional[float]
    int_condition: bool = False
    certificate: Optional[tuple] = None
    certificate_source: Optional[str] = None
    infeasible: bool = False

    @property
    def lower_prob(self):
        """exp(lower_log_prob) rounded down, so float error cannot lift it over the truth."""
        if self.lower_log_prob is None:
            return 0.0
        return math.exp(self.lower_log_prob) * _ROUND_DOWN


def hypergraph_envelope(H, p, t, q, m_max=None, candidates: Iterable = (),
                        budget=None):
    """Assemble the two-sided bound for P(X >= t mu).

    ``candidates`` holds extra ``(source, vertex_set)`` certificates (e.g. a
    prefix [1..m]); the greedy certificate is always tried as well and the
    smallest valid set wins.
    """
    if t <= 1:
        raise ValueError(f"t must exceed 1, got {t}")
    mu = expected_count(H, p)
    k = H.uniformity
    scales = (None, None)
    if 0 < p < 1:
        scales = exponent_scales(mu, q, k, p)
    int_ok = mu >= 1 and 0 < p and t <= p ** (-k)
    if mu == 0:
        # threshold 0: the event is certain
        return BoundEnvelope(mu, t, float(q), 0.0, 1.0, 1, *scales,
                             int_condition=int_ok, certificate=(),
                             certificate_source="empty")
    if t * mu > len(H.edges):
        return BoundEnvelope(mu, t, float(q), None, 0.0, 1, *scales,
                             int_condition=int_ok, infeasible=True)
    if m_max is None:
        m_max = default_m_max(mu, q)
    upper, m_opt = markov_tail_upper(H, p, t, m_max)

    best = None
    options = list(candidates)
    greedy = greedy_certificate(H, p, t, budget)
    if greedy is not None:
        options.append(("greedy", greedy))
    if 0 < p < 1:
        for source, cert in options:
            try:
                logp = certificate_tail_lower(H, cert, p, t)
            except CertificateError:
                continue
            if best is None or logp > best[0]:
                best = (logp, tuple(sorted(cert)), source)
    elif p == 1:
        best = (0.0, tuple(range(1, H.ground_size + 1)), "full")
    lower, cert, source = best if best else (None, None, None)
    return BoundEnvelope(mu, t, float(q), lower, upper, m_opt, *scales,
                         int_condition=int_ok, certificate=cert,
                         certificate_source=source)
