"""Counting rooted copies of (R, G) in a host graph F rooted on its first r vertices.

A copy is a subgraph, not an embedding. Counts are obtained from the number
of class-respecting embeddings (roots into [r], other vertices outside [r])
divided by the number of rooted automorphisms of (R, G); the explicit
enumerator deduplicates images instead and serves as a cross-check.
"""
from __future__ import annotations

import math

from ..errors import ConsistencyError, ValidationError
from .graph import RootedGraph


def _search_order(G_R):
    """Roots first, then a connectivity-greedy order of the remaining vertices."""
    adj = G_R.graph.adjacency
    order = list(G_R.roots)
    placed = set(order)
    rest = [v for v in range(G_R.vertex_count) if v not in placed]
    while rest:
        rest.sort(key=lambda v: (-len(adj[v] & placed), -len(adj[v]), v))
        v = rest.pop(0)
        order.append(v)
        placed.add(v)
    return order


def iter_embeddings(G_R, F, root_targets, other_targets):
    """Yield injective edge-preserving maps V(G) -> V(F) as tuples indexed by vertex.

    Roots of G go to ``root_targets`` and all other vertices to ``other_targets``.
    """
    adj_g = G_R.graph.adjacency
    adj_f = F.adjacency
    roots = set(G_R.roots)
    root_targets = frozenset(root_targets)
    other_targets = frozenset(other_targets)
    order = _search_order(G_R)
    back = [[w for w in adj_g[v] if w in set(order[:i])] for i, v in enumerate(order)]
    phi = [-1] * G_R.vertex_count
    used = set()

    def extend(i):
        if i == len(order):
            yield tuple(phi)
            return
        v = order[i]
        pool = root_targets if v in roots else other_targets
        if back[i]:
            cand = set(adj_f[phi[back[i][0]]]) & pool
            for w in back[i][1:]:
                cand &= adj_f[phi[w]]
        else:
            cand = pool
        for c in sorted(cand - used):
            phi[v] = c
            used.add(c)
            yield from extend(i + 1)
            used.discard(c)
        phi[v] = -1

    yield from extend(0)


def count_embeddings(G_R, F, root_targets, other_targets):
    return sum(1 for _ in iter_embeddings(G_R, F, root_targets, other_targets))


def automorphism_count(G_R):
    """Number of automorphisms of G mapping R onto R."""
    return count_embeddings(G_R, G_R.graph, G_R.roots, G_R.non_roots)


def count_rooted_copies(F, r, G_R):
    """N^R(F, G): R-rooted copies of G in F, with F rooted on vertices 0..r-1."""
    if not 0 <= r <= F.n:
        raise ValidationError(f"need 0 <= r <= n, got r={r}, n={F.n}")
    emb = count_embeddings(G_R, F, range(r), range(r, F.n))
    aut = automorphism_count(G_R)
    if emb % aut:
        raise ConsistencyError(f"{emb} embeddings not divisible by {aut} automorphisms")
    return emb // aut


def rooted_copies(F, r, G_R):
    """Explicit list of copies as ``(vertex_set, edge_set)``, deduplicated."""
    seen = set()
    for phi in iter_embeddings(G_R, F, range(r), range(r, F.n)):
        verts = frozenset(phi)
        edges = frozenset((min(phi[u], phi[v]), max(phi[u], phi[v])) for u, v in G_R.edges)
        seen.add((verts, edges))
    return sorted((tuple(sorted(v)), tuple(sorted(e))) for v, e in seen)


def _falling(n, k):
    return math.perm(n, k) if 0 <= k <= n else 0


def copies_in_complete(n, r, G_R):
    """N^R(K_n, G) in closed form: every class-respecting injection embeds."""
    if n < 0 or not 0 <= r <= n:
        raise ValidationError("need 0 <= r <= n")
    emb = _falling(r, G_R.r) * _falling(n - r, G_R.vertex_count - G_R.r)
    aut = automorphism_count(G_R)
    if emb % aut:
        raise ConsistencyError(f"{emb} embeddings not divisible by {aut} automorphisms")
    return emb // aut


def count_copies(F, H):
    """Unrooted copies of the graph H in F."""
    return count_rooted_copies(F, 0, RootedGraph(H.n, H.edges, ()))


def unrooted_copies_in_complete(n, H):
    return copies_in_complete(n, 0, RootedGraph(H.n, H.edges, ()))


def rooted_mean(G_R, n, p):
    """mu = N^R(K_n, G) p^e(G); zero when n < v(G)."""
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if n < G_R.vertex_count:
        return 0.0
    return copies_in_complete(n, G_R.r, G_R) * p**G_R.e


def extension_multiplicity(G_R, n):
    """g with N^R(K_n, G) = g N(K_{n-r}, G - R), checked at n and n + 1."""
    if G_R.e_roots == 0:
        raise ValidationError("e_R(G) = 0: no root edges")
    if n < G_R.vertex_count:
        raise ValidationError(f"need n >= v(G) = {G_R.vertex_count}")
    core = G_R.minus_roots()
    values = []
    for size in (n, n + 1):
        num = copies_in_complete(size, G_R.r, G_R)
        den = unrooted_copies_in_complete(size - G_R.r, core)
        if den == 0 or num % den:
            raise ConsistencyError(f"N^R(K_{size}, G) = {num} is not a multiple of {den}")
        values.append(num // den)
    if values[0] != values[1]:
        raise ConsistencyError(f"extension multiplicity depends on n: {values}")
    return values[0]
