"""Simple graphs and rooted graphs.

Vertices are 0..n-1 internally. The on-disk graph format and the CLI's
``--roots`` flag are 1-indexed and converted at the boundary.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path

from ..errors import ValidationError


def _norm_edges(n, edges):
    out = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise ValidationError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValidationError(f"edge ({u}, {v}) leaves the vertex range 0..{n - 1}")
        out.add((min(u, v), max(u, v)))
    return tuple(sorted(out))


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError("vertex count must be nonnegative")
        object.__setattr__(self, "edges", _norm_edges(self.n, self.edges))

    @cached_property
    def adjacency(self):
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @property
    def e(self):
        return len(self.edges)


def complete_graph(n):
    return Graph(n, tuple(combinations(range(n), 2)))


@dataclass(frozen=True)
class RootedGraph:
    """A graph with a distinguished independent root set."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    roots: tuple[int, ...] = ()

    def __post_init__(self):
        edges = _norm_edges(self.vertex_count, self.edges)
        roots = tuple(sorted(set(int(x) for x in self.roots)))
        if any(not 0 <= x < self.vertex_count for x in roots):
            raise ValidationError("root outside the vertex range")
        rs = set(roots)
        inside = [(u, v) for u, v in edges if u in rs and v in rs]
        if inside:
            listing = ", ".join(f"{u + 1}-{v + 1}" for u, v in inside)
            raise ValidationError(f"root set is not independent; offending edges: {listing}")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "roots", roots)

    @property
    def graph(self):
        return Graph(self.vertex_count, self.edges)

    @property
    def r(self):
        return len(self.roots)

    @property
    def e(self):
        return len(self.edges)

    @property
    def non_roots(self):
        rs = set(self.roots)
        return tuple(v for v in range(self.vertex_count) if v not in rs)

    @property
    def e_minus_roots(self):
        rs = set(self.roots)
        return sum(1 for u, v in self.edges if u not in rs and v not in rs)

    @property
    def e_roots(self):
        """e_R(G): edges incident with the root set."""
        return self.e - self.e_minus_roots

    def minus_roots(self):
        """G - R, relabelled onto 0..v-r-1 in vertex order."""
        label = {v: i for i, v in enumerate(self.non_roots)}
        kept = [(label[u], label[v]) for u, v in self.edges if u in label and v in label]
        return Graph(len(label), tuple(kept))


def parse_graph(text):
    """Parse the ``n`` header + one ``u v`` edge per line format (1-indexed)."""
    rows = [line.split() for line in text.splitlines()
            if line.strip() and not line.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 1:
        raise ValueError("graph file must start with a line holding n")
    n = int(rows[0][0])
    edges = []
    for row in rows[1:]:
        if len(row) != 2:
            raise ValueError(f"bad edge line: {' '.join(row)}")
        edges.append((int(row[0]) - 1, int(row[1]) - 1))
    return Graph(n, tuple(edges))


def read_graph(path):
    return parse_graph(Path(path).read_text())


def format_graph(G):
    return "\n".join([str(G.n)] + [f"{u + 1} {v + 1}" for u, v in G.edges]) + "\n"


def rooted(G, roots_1indexed):
    return RootedGraph(G.n, G.edges, tuple(x - 1 for x in roots_1indexed))


# -- the families used throughout the examples --------------------------------

def rooted_clique(k):
    """K_k rooted at vertex 0."""
    return RootedGraph(k, tuple(combinations(range(k), 2)), (0,))


def rooted_edge():
    return rooted_clique(2)


def rooted_path(k, both_ends=True):
    """P_k on 0..k-1, rooted at both endpoints (or only at 0)."""
    edges = tuple((i, i + 1) for i in range(k - 1))
    return RootedGraph(k, edges, (0, k - 1) if both_ends else (0,))


def rooted_cycle(length):
    """C_length rooted at vertex 0."""
    edges = tuple((i, (i + 1) % length) for i in range(length))
    return RootedGraph(length, edges, (0,))


def rooted_complete_bipartite(a, b):
    """K_{a,b} rooted at the whole side of size a (vertices 0..a-1)."""
    edges = tuple((i, a + j) for i in range(a) for j in range(b))
    return RootedGraph(a + b, edges, tuple(range(a)))
