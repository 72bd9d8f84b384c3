"""Shared corpus: small hypergraphs and rooted graphs used across the suite."""
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest

from tailkit.hypergraph import Hypergraph, read_hypergraph
from tailkit.linsys import solution_hypergraph, standard_system
from tailkit.rooted.graph import (
    RootedGraph,
    rooted_clique,
    rooted_complete_bipartite,
    rooted_cycle,
    rooted_path,
)

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"


def random_hypergraph(N, k, m, seed):
    rng = np.random.default_rng(seed)
    pool = list(combinations(range(1, N + 1), k))
    pick = rng.choice(len(pool), size=min(m, len(pool)), replace=False)
    return Hypergraph(N, k, tuple(pool[i] for i in sorted(pick)))


def hypergraph_corpus(max_n=12):
    ap, schur, ap4 = standard_system("ap"), standard_system("schur"), standard_system("ap", 4)
    items = {}
    for N in (5, 6, 8, 10, 12):
        items[f"ap3-{N}"] = solution_hypergraph(ap, N)
        items[f"schur-{N}"] = solution_hypergraph(schur, N)
    for N in (8, 10):
        items[f"ap4-{N}"] = solution_hypergraph(ap4, N)
    items["fano"] = read_hypergraph(DATA / "fano.txt")
    items["single-edge"] = Hypergraph(4, 2, ((1, 2),))
    items["graph-K5"] = Hypergraph(5, 2, tuple(combinations(range(1, 6), 2)))
    for seed, (N, k, m) in enumerate([(8, 3, 10), (9, 2, 12), (10, 4, 8), (12, 3, 15)]):
        items[f"random-{N}-{k}-{m}"] = random_hypergraph(N, k, m, seed)
    return {name: H for name, H in items.items() if H.ground_size <= max_n}


def rooted_corpus():
    star_pendant = RootedGraph(4, ((0, 1), (1, 2), (1, 3), (2, 3)), (0,))
    return {
        "edge": rooted_clique(2),
        "triangle": rooted_clique(3),
        "K4": rooted_clique(4),
        "K5": rooted_clique(5),
        "P3-ends": rooted_path(3),
        "P3-end": rooted_path(3, both_ends=False),
        "P4-ends": rooted_path(4),
        "P5-ends": rooted_path(5),
        "C4": rooted_cycle(4),
        "C5": rooted_cycle(5),
        "K12": rooted_complete_bipartite(1, 2),
        "K22": rooted_complete_bipartite(2, 2),
        "K23": rooted_complete_bipartite(2, 3),
        "K32": rooted_complete_bipartite(3, 2),
        "star-triangle": star_pendant,
    }


@pytest.fixture(scope="session")
def hypergraphs():
    return hypergraph_corpus()


@pytest.fixture(scope="session")
def rooted_graphs():
    return rooted_corpus()


@pytest.fixture(scope="session")
def data_dir():
    return DATA
