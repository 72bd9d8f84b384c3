"""Fractional independence number alpha*.

The production method works on the bipartite double cover B(H): vertex i
becomes a left copy i' and a right copy i'', and edge ij becomes i'-j'' and
j'-i''. A maximum independent set I of B(H) (complement of a Konig minimum
vertex cover) gives the half-integral optimum x_i = ([i' in I] + [i'' in I])/2,
so alpha*(H) = v(H) - nu(B(H))/2 with nu the matching number.
"""
from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import product

import numpy as np

HALF = Fraction(1, 2)


def _max_matching(n, adj):
    """Kuhn's augmenting-path matching on B(H); returns match of right copies."""
    match_right = [-1] * n

    def augment(u, seen):
        for w in adj[u]:
            if w in seen:
                continue
            seen.add(w)
            if match_right[w] == -1 or augment(match_right[w], seen):
                match_right[w] = u
                return True
        return False

    for u in range(n):
        augment(u, set())
    return match_right


def fractional_independence(G):
    """Return ``(alpha*, assignment)`` with exact rationals.

    ``G`` is a :class:`~tailkit.rooted.graph.Graph`; the assignment is a tuple
    indexed by vertex with values in {0, 1/2, 1}.
    """
    n = G.n
    adj = [sorted(a) for a in G.adjacency]
    match_right = _max_matching(n, adj)
    match_left = [-1] * n
    for w, u in enumerate(match_right):
        if u != -1:
            match_left[u] = w
    # Konig: Z = vertices reachable from unmatched left copies by alternating paths
    z_left, z_right = [False] * n, [False] * n
    queue = deque(u for u in range(n) if match_left[u] == -1)
    for u in queue:
        z_left[u] = True
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if not z_right[w]:
                z_right[w] = True
                u2 = match_right[w]
                if u2 != -1 and not z_left[u2]:
                    z_left[u2] = True
                    queue.append(u2)
    # cover = (L \ Z) + (R & Z); independent set is the complement
    x = tuple(Fraction(int(z_left[i]) + int(not z_right[i]), 2) for i in range(n))
    nu = sum(1 for u in match_right if u != -1)
    value = Fraction(2 * n - nu, 2)
    if sum(x) != value:
        raise ArithmeticError("Konig assignment does not attain the matching bound")
    return value, x


def fractional_independence_bruteforce(G):
    """Oracle: maximize over all assignments in {0, 1/2, 1}^v(G).

    Works in doubled units (0, 1, 2) so the search is exact integer arithmetic.
    """
    n = G.n
    if n == 0:
        return Fraction(0), ()
    grid = np.array(list(product((0, 1, 2), repeat=n)), dtype=np.int8)
    ok = np.ones(len(grid), dtype=bool)
    for u, v in G.edges:
        ok &= grid[:, u] + grid[:, v] <= 2
    totals = np.where(ok, grid.sum(axis=1, dtype=np.int64), -1)
    best = int(np.argmax(totals))
    return Fraction(int(totals[best]), 2), tuple(Fraction(int(c), 2) for c in grid[best])


def is_feasible(G, x):
    return all(0 <= xi <= 1 for xi in x) and all(x[u] + x[v] <= 1 for u, v in G.edges)
