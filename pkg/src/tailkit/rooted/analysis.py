"""Exponent bases, regimes and lower-bound certificates for rooted counts.

Subgraphs H of G are given as tuples of edges of G; the vertex set of H is
the set of endpoints, so H never has isolated vertices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional

from .. import config
from ..errors import CapacityError, ConsistencyError, ValidationError
from ..hypergraph import Hypergraph, expected_count
from ..moments import BoundEnvelope, greedy_certificate, markov_tail_upper
from .copies import copies_in_complete, count_rooted_copies, rooted_copies, rooted_mean
from .fractional import fractional_independence
from .graph import Graph

_REL_TIE = 1e-12


def edge_subsets(edges):
    """Nonempty subsets of ``edges`` in lexicographic order (preorder DFS)."""
    edges = sorted(edges)

    def walk(prefix, start):
        for i in range(start, len(edges)):
            nxt = prefix + (edges[i],)
            yield nxt
            yield from walk(nxt, i + 1)

    yield from walk((), 0)


def core_graph(G_R, H):
    """H - R relabelled onto 0..: returns (graph, original vertex labels)."""
    roots = set(G_R.roots)
    verts = sorted({v for e in H for v in e if v not in roots})
    label = {v: i for i, v in enumerate(verts)}
    kept = [(label[u], label[v]) for u, v in H if u in label and v in label]
    return Graph(len(verts), tuple(kept)), tuple(verts)


@dataclass(frozen=True)
class SubgraphInfo:
    edges: tuple
    e: int
    v_core: int
    alpha: Fraction
    assignment: tuple
    core_labels: tuple


@lru_cache(maxsize=64)
def subgraph_table(G_R):
    """All nonempty-edge subgraphs of G with their alpha*(H - R) data."""
    config.check_guard(G_R.e, config.SUBGRAPH_MAX_EDGES, "e(G) for subgraph enumeration")
    alpha_cache = {}
    table = []
    for H in edge_subsets(G_R.edges):
        core, labels = core_graph(G_R, H)
        key = (core.n, core.edges)
        if key not in alpha_cache:
            alpha_cache[key] = fractional_independence(core)
        alpha, x = alpha_cache[key]
        table.append(SubgraphInfo(H, len(H), core.n, alpha, x, labels))
    return tuple(table)


def _check_subgraph(G_R, H):
    H = tuple(sorted((min(u, v), max(u, v)) for u, v in H))
    missing = set(H) - set(G_R.edges)
    if missing:
        raise ValidationError(f"edges {sorted(missing)} are not in G")
    return H


def psi(G_R, H, n, p):
    """Psi_H^R = n^v(H-R) p^e(H)."""
    H = _check_subgraph(G_R, H)
    if n < G_R.vertex_count:
        raise ValidationError(f"need n >= v(G) = {G_R.vertex_count}")
    core, _ = core_graph(G_R, H)
    return float(n) ** core.n * p ** len(H)


def rooted_density(G_R):
    """m_R(G) = max e(H) / v(H - R) over subgraphs with at least one edge."""
    if G_R.e == 0:
        raise ValidationError("m_R(G) needs e(G) > 0")
    return max(Fraction(s.e, s.v_core) for s in subgraph_table(G_R))


def _log_base(info, log_n, log_p):
    return (info.v_core * log_n + info.e * log_p) / float(info.alpha)


def min_exponent_base(G_R, n, p):
    """M_{R,G} = min_H (Psi_H^R)^(1/alpha*(H-R)); returns ``(M, argmin edges)``.

    Ties (to relative 1e-12 in log space) keep the lexicographically first H.
    """
    if G_R.e == 0:
        raise ValidationError("M needs e(G) > 0")
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    if n < G_R.vertex_count:
        raise ValidationError(f"need n >= v(G) = {G_R.vertex_count}")
    log_n, log_p = math.log(n), math.log(p)
    best, arg = math.inf, None
    for info in subgraph_table(G_R):
        val = _log_base(info, log_n, log_p)
        if arg is None or val < best - _REL_TIE * max(1.0, abs(best)):
            best, arg = val, info
    return math.exp(best), arg.edges


def argmin_info(G_R, H):
    H = _check_subgraph(G_R, H)
    for info in subgraph_table(G_R):
        if info.edges == H:
            return info
    raise ValidationError("H has no edges")


@dataclass(frozen=True)
class RegimeReport:
    regime: str
    threshold: float
    p1: float
    p2: float
    M: float
    mu: float
    lower_exponent_scale: float
    upper_exponent_scale: float
    m_R: Fraction
    argmin: tuple
    copies: int


def classify_regime(G_R, n, p, t):
    """Place p among the appearance threshold n^(-1/m_R), p1 and p2.

    Intervals: d = (p2, 1], c = (p1, p2], a = [0, threshold), b otherwise.
    d and c are tested first, so for small n where threshold > p1 the
    exact-zero and dense classifications win.
    """
    if G_R.e_roots == 0:
        raise ValidationError(
            "e_R(G) = 0: the rooted count is an unrooted count of G - R; "
            "analyse it as an unrooted subgraph count")
    if t <= 1:
        raise ValueError(f"t must exceed 1, got {t}")
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    m_R = rooted_density(G_R)
    threshold = n ** (-1 / float(m_R))
    p1 = t ** (-1 / G_R.e_roots)
    p2 = t ** (-1 / G_R.e)
    M, H = min_exponent_base(G_R, n, p)
    mu = rooted_mean(G_R, n, p)
    copies = copies_in_complete(n, G_R.r, G_R)
    if p > p2:
        regime, lo, hi = "d", math.inf, math.inf
    elif p > p1:
        regime = "c"
        lo = hi = n + (p - p1) ** 2 * n**2
    elif p < threshold:
        regime, lo, hi = "a", math.log(1 / p), 1.0
    else:
        regime, lo, hi = "b", M * math.log(1 / p), M
    return RegimeReport(regime, threshold, p1, p2, M, mu, lo, hi, m_R, H, copies)


@dataclass(frozen=True)
class BlowUp:
    F: Graph
    classes: tuple
    F2: Graph
    roots: int
    size_bound: float


def blowup_certificate(G_R, H, t, M, assignment=None):
    """Blow each vertex i of H - R up to ceil(2 t M^x_i) clones, edges to bicliques.

    ``F2`` adds the r roots (vertices 0..r-1) joined to every vertex of F,
    which is shifted to start at r.
    """
    if M < 1:
        raise ValueError(f"blow-up needs M >= 1 (got {M}); below threshold")
    info = argmin_info(G_R, H)
    core, _ = core_graph(G_R, info.edges)
    x = info.assignment if assignment is None else tuple(Fraction(v) for v in assignment)
    if len(x) != core.n or sum(x) != info.alpha:
        raise ValidationError("assignment is not an optimal fractional independent set")
    sizes = [math.ceil(2 * t * M ** float(xi)) for xi in x]
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)
    classes = tuple(range(starts[i], starts[i + 1]) for i in range(core.n))
    edges = [(a, b) for u, v in core.edges for a in classes[u] for b in classes[v]]
    F = Graph(starts[-1], tuple(edges))
    bound = 3 * (G_R.vertex_count - G_R.r) * t * M
    if F.n > bound:
        raise ConsistencyError(f"blow-up has {F.n} vertices, above {bound}")
    r = G_R.r
    shifted = [(a + r, b + r) for a, b in F.edges]
    joins = [(i, r + w) for i in range(r) for w in range(F.n)]
    F2 = Graph(r + F.n, tuple(shifted + joins))
    return BlowUp(F, classes, F2, r, bound)


def closed_form_M(family, n, p, k=None, delta_s=None):
    """Closed-form M for the worked families.

    ``rooted_clique`` (K_k at a vertex), ``bipartite_one_side`` (needs the
    maximum non-root degree ``delta_s``), ``rooted_path`` (P_k at both ends)
    and ``rooted_cycle`` (C_{k-1} at a vertex, equal to the P_k value).
    """
    if family == "rooted_clique":
        if k is None or k < 2:
            raise ValueError("rooted_clique needs k >= 2")
        return min(n * p, n**2 * p**k)
    if family == "bipartite_one_side":
        if delta_s is None or delta_s < 1:
            raise ValueError("bipartite_one_side needs delta_s >= 1")
        return n * p**delta_s
    if family in ("rooted_path", "rooted_cycle"):
        if k is None or k < 3 or (family == "rooted_cycle" and k < 4):
            raise ValueError(f"{family} needs a larger k")
        terms = [(n**l * p**l) ** (1 / math.ceil(l / 2)) for l in range(1, k - 2)]
        terms.append((n ** (k - 2) * p ** (k - 1)) ** (1 / math.ceil((k - 2) / 2)))
        return min(terms)
    raise ValueError(f"unknown family {family!r}")


# -- finite-n certificates and the copy hypergraph ------------------------------

def pair_index(n):
    """Map each pair (i, j), i < j < n, to a 1-based ground element."""
    return {pr: i + 1 for i, pr in enumerate(combinations(range(n), 2))}


@lru_cache(maxsize=32)
def copy_hypergraph(G_R, n):
    """Copies of G in K_n as a hypergraph on the C(n,2) pairs.

    Returns ``(H, multiplicity)``: copies sharing an edge set (possible only
    when G has isolated vertices) collapse to one hyperedge, and every edge
    set is shared by the same number of copies, so X = multiplicity * |H[.]|.
    """
    total = copies_in_complete(n, G_R.r, G_R)
    config.check_guard(total, config.COPY_ENUM_MAX, "rooted copies to enumerate")
    idx = pair_index(n)
    groups = {}
    for _, edges in rooted_copies(_complete(n), G_R.r, G_R):
        key = tuple(sorted(idx[e] for e in edges))
        groups[key] = groups.get(key, 0) + 1
    mults = set(groups.values())
    if len(mults) > 1:
        raise ConsistencyError(f"non-uniform copy multiplicities {sorted(mults)}")
    mult = mults.pop() if mults else 1
    H = Hypergraph(len(idx), G_R.e, tuple(groups))
    return H, mult


@lru_cache(maxsize=32)
def _complete(n):
    return Graph(n, tuple(combinations(range(n), 2)))


@dataclass(frozen=True)
class RootedCertificate:
    log_prob: float
    edges: tuple
    source: str
    copies: int


def _prefix_join(G_R, n, need, with_core):
    r = G_R.r
    for m in range(1, n - r + 1):
        if copies_in_complete(r + m, r, G_R) >= need:
            edges = [(i, r + j) for i in range(r) for j in range(m)]
            if with_core:
                edges += [(r + a, r + b) for a, b in combinations(range(m), 2)]
            return tuple(edges), copies_in_complete(r + m, r, G_R)
    return None


def rooted_certificates(G_R, n, p, t, blowup_max_vertices=40):
    """Every valid certificate edge set E0 of K_n with N^R(E0, G) >= t mu."""
    mu = rooted_mean(G_R, n, p)
    need = t * mu
    found = []
    r = G_R.r
    for with_core, name in ((True, "root-clique"), (False, "root-star")):
        if not with_core and G_R.e_minus_roots:
            continue
        got = _prefix_join(G_R, n, need, with_core)
        if got:
            found.append((name, got[0], got[1]))
    if 0 < p < 1 and n >= G_R.vertex_count:
        M, H = min_exponent_base(G_R, n, p)
        if M >= 1:
            bl = blowup_certificate(G_R, H, t, M)
            if bl.F.n <= n - r and bl.F2.n <= blowup_max_vertices:
                c = count_rooted_copies(bl.F2, r, G_R)
                if c >= need:
                    found.append(("blow-up", bl.F2.edges, c))
    if math.comb(n, 2) <= 64:
        try:
            Hc, _ = copy_hypergraph(G_R, n)
        except CapacityError:
            Hc = None
        if Hc is not None and len(Hc) and t * expected_count(Hc, p) <= len(Hc):
            chosen = greedy_certificate(Hc, p, t)
            if chosen is not None:
                pairs = list(combinations(range(n), 2))
                edges = tuple(sorted(pairs[i - 1] for i in chosen))
                c = count_rooted_copies(Graph(n, edges), r, G_R)
                if c >= need:
                    found.append(("greedy", edges, c))
    return found


def rooted_certificate_lower(G_R, n, p, t):
    """Best (largest) log p^|E0| over the valid certificates, or None."""
    if not 0 < p < 1:
        return None
    best = None
    for source, edges, c in rooted_certificates(G_R, n, p, t):
        cand = RootedCertificate(len(edges) * math.log(p), edges, source, c)
        if best is None or cand.log_prob > best.log_prob:
            best = cand
    return best


def default_rooted_m_max(M):
    return min(config.M_MAX_CAP, max(1, math.ceil(2 * M)))


def rooted_envelope(G_R, n, p, t, m_max=None):
    """Two-sided bound for P(X_G^R >= t mu) at finite n, plus the regime report."""
    report = classify_regime(G_R, n, p, t)
    mu = report.mu
    scales = (report.lower_exponent_scale, report.upper_exponent_scale)
    if report.regime == "d":
        return BoundEnvelope(mu, t, None, None, 0.0, 1, *scales, infeasible=True), report, None
    upper, m_opt = min(1.0, 1 / t), 1
    try:
        Hc, _ = copy_hypergraph(G_R, n)
    except CapacityError:
        Hc = None
    if Hc is not None and len(Hc):
        if m_max is None:
            m_max = default_rooted_m_max(report.M)
        upper, m_opt = markov_tail_upper(Hc, p, t, m_max)
    cert = rooted_certificate_lower(G_R, n, p, t)
    env = BoundEnvelope(
        mu, t, None, cert.log_prob if cert else None, upper, m_opt, *scales,
        certificate=cert.edges if cert else None,
        certificate_source=cert.source if cert else None,
    )
    return env, report, cert
