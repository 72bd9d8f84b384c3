"""Acceptance gate: one PASS/FAIL line per criterion, with runtime budgets."""
import math
import time

import networkx as nx
import pytest

from tailkit import cli
from tailkit.hypergraph import exact_moment, exact_tail
from tailkit.linsys import prefix_certificate, solution_hypergraph, standard_system
from tailkit.errors import InfeasibleError
from tailkit.moments import exponent_scales, hypergraph_envelope, moment_upper_bound
from tailkit.rooted.analysis import classify_regime, closed_form_M, min_exponent_base, rooted_density, rooted_envelope
from tailkit.rooted.copies import count_copies, count_rooted_copies, extension_multiplicity
from tailkit.rooted.fractional import fractional_independence, fractional_independence_bruteforce
from tailkit.rooted.graph import (
    Graph,
    complete_graph,
    rooted_clique,
    rooted_complete_bipartite,
    rooted_cycle,
    rooted_path,
)
from tailkit.sim import binomial_tail, exact_tail_rooted, monte_carlo_tail, root_degree_model

from conftest import ROOT, hypergraph_corpus, rooted_corpus
from test_cli import CASES, GOLDEN

pytestmark = pytest.mark.acceptance

GRID_N = (10, 30, 100, 300, 1000)
GRID_P = (0.01, 0.05, 0.2, 0.5, 0.9)


@pytest.fixture
def verdict(capsys):
    def report(number, title, failures, elapsed, budget, detail=""):
        ok = not failures and elapsed < budget
        label = "PASS" if ok else "FAIL"
        extra = f"; {len(failures)} violations, first: {failures[0]}" if failures else ""
        with capsys.disabled():
            print(f"\n{label} criterion {number:2d}: {title} [{detail}{elapsed:.2f}s / {budget}s]{extra}")
        assert not failures, failures[:5]
        assert elapsed < budget
    return report


def test_criterion_01_hypergraph_sandwich(verdict):
    start, failures, count = time.perf_counter(), [], 0
    for name in ("ap", "schur"):
        A = standard_system(name)
        for N in (8, 10, 12):
            H = solution_hypergraph(A, N)
            for p in (0.3, 0.5, 0.7):
                for t in (1.5, 2):
                    mu = len(H) * p**3
                    if t * mu > len(H):
                        continue
                    try:
                        pre = prefix_certificate(A, N, p, t)
                    except InfeasibleError:
                        pre = None
                    env = hypergraph_envelope(H, p, t, A.q, candidates=[("prefix", pre)] if pre else [])
                    truth = exact_tail(H, p, t * mu)
                    count += 1
                    if not env.lower_prob <= truth <= env.upper_tail_bound:
                        failures.append((name, N, p, t, env.lower_prob, truth, env.upper_tail_bound))
    verdict(1, "hypergraph sandwich, AP/Schur N in {8,10,12}", failures,
            time.perf_counter() - start, 30, f"{count} instances, ")


def test_criterion_02_moment_domination(verdict):
    start, failures, count = time.perf_counter(), [], 0
    for name, H in hypergraph_corpus(max_n=10).items():
        for p in (0.1, 0.3, 0.5, 0.9):
            for m in range(1, 5):
                count += 1
                if not exact_moment(H, p, m) <= moment_upper_bound(H, p, m):
                    failures.append((name, p, m))
    verdict(2, "exact moment <= moment bound, corpus N <= 10, m <= 4", failures,
            time.perf_counter() - start, 10, f"{count} cases, ")


def test_criterion_03_closed_form_M(verdict):
    start, failures, count = time.perf_counter(), [], 0

    def check(tag, got, want):
        nonlocal count
        count += 1
        if not math.isclose(got, want, rel_tol=1e-9):
            failures.append((tag, got, want))

    for n in GRID_N:
        for p in GRID_P:
            for k in (3, 4, 5):
                check(("clique", k, n, p), min_exponent_base(rooted_clique(k), n, p)[0],
                      closed_form_M("rooted_clique", n, p, k=k))
            for a in (1, 2, 3):
                for b in (1, 2, 3):
                    check(("bipartite", a, b, n, p),
                          min_exponent_base(rooted_complete_bipartite(a, b), n, p)[0],
                          closed_form_M("bipartite_one_side", n, p, delta_s=a))
            for k in (4, 5, 6):
                path_M = min_exponent_base(rooted_path(k), n, p)[0]
                check(("path", k, n, p), path_M, closed_form_M("rooted_path", n, p, k=k))
                check(("cycle-path", k, n, p), min_exponent_base(rooted_cycle(k - 1), n, p)[0], path_M)
    verdict(3, "min_exponent_base = closed forms, 5x5 (n,p) grid", failures,
            time.perf_counter() - start, 10, f"{count} comparisons, ")


def test_criterion_04_alpha_two_methods(verdict):
    start, failures = time.perf_counter(), []
    graphs = [g for g in nx.graph_atlas_g() if g.number_of_nodes() == 7]
    for g in graphs:
        G = Graph(7, tuple(g.edges()))
        if fractional_independence(G)[0] != fractional_independence_bruteforce(G)[0]:
            failures.append(sorted(g.edges()))
    verdict(4, "alpha* production = {0,1/2,1} brute force on all 7-vertex graphs", failures,
            time.perf_counter() - start, 60, f"{len(graphs)} graphs, ")


def test_criterion_05_threshold_sign_and_extension(verdict):
    start, failures, count = time.perf_counter(), [], 0
    for name, G in rooted_corpus().items():
        m_R = float(rooted_density(G))
        for n in GRID_N:
            for p in GRID_P:
                M, _ = min_exponent_base(G, n, p)
                ref = n * p**m_R
                if abs(math.log(ref)) < 1e-9:
                    continue  # boundary: both sides are 1 up to rounding
                count += 1
                if (M < 1) != (ref < 1) or (M > 1) != (ref > 1):
                    failures.append(("sign", name, n, p, M, ref))
        g = extension_multiplicity(G, G.vertex_count)
        for n in (G.vertex_count, G.vertex_count + 1, G.vertex_count + 2):
            count += 1
            lhs = count_rooted_copies(complete_graph(n), G.r, G)
            rhs = g * count_copies(complete_graph(n - G.r), G.minus_roots())
            if lhs != rhs:
                failures.append(("extension", name, n, lhs, rhs))
    verdict(5, "sign(M-1) = sign(n p^m_R - 1); N^R(K_n,G) = g N(K_{n-r},G-R)", failures,
            time.perf_counter() - start, 10, f"{count} checks, ")


def test_criterion_06_regime_d_zero_tail(verdict):
    start, failures, count = time.perf_counter(), [], 0
    for name, G in rooted_corpus().items():
        for n in range(max(G.vertex_count, 4), 7):
            for t in (1.5, 2, 3):
                p2 = t ** (-1 / G.e)
                for p in (p2 + (1 - p2) * 0.2, p2 + (1 - p2) * 0.8):
                    rep = classify_regime(G, n, p, t)
                    tail = exact_tail_rooted(G, n, p, t * rep.mu)
                    count += 1
                    if rep.regime != "d" or tail != 0:
                        failures.append((name, n, p, t, rep.regime, tail))
    verdict(6, "regime d gives exact tail 0 (n <= 6)", failures,
            time.perf_counter() - start, 60, f"{count} cases, ")


def test_criterion_07_rooted_sandwich(verdict):
    start, failures, count = time.perf_counter(), [], 0
    cases = {"triangle": rooted_clique(3), "P3 ends": rooted_path(3), "P3 one end": rooted_path(3, False)}
    for name, G in cases.items():
        for n in (5, 6):
            for p in (0.3, 0.5):
                env, _, _ = rooted_envelope(G, n, p, 2)
                truth = exact_tail_rooted(G, n, p, 2 * env.mu)
                count += 1
                if not env.lower_prob <= truth <= env.upper_tail_bound:
                    failures.append((name, n, p, env.lower_prob, truth, env.upper_tail_bound))
    verdict(7, "rooted sandwich, triangle and P3 at n in {5,6}", failures,
            time.perf_counter() - start, 120, f"{count} instances, ")


def test_criterion_08_monte_carlo_calibration(verdict):
    start = time.perf_counter()
    n, p, t = 40, 0.25, 1.3
    threshold = (n - 1) * t * p
    truth = binomial_tail(n - 1, p, threshold)
    model = root_degree_model(n, p)
    covered = sum(1 for seed in range(100)
                  if (e := monte_carlo_tail(model, threshold, 10**4, seed)).ci_low <= truth <= e.ci_high)
    failures = [] if covered >= 90 else [f"covered {covered}/100"]
    verdict(8, "rooted-edge Wilson CI covers binomial tail", failures,
            time.perf_counter() - start, 60, f"{covered}/100 seeds, ")


def test_criterion_09_ap_scale_shape(verdict):
    start, failures, count = time.perf_counter(), [], 0
    A = standard_system("ap")
    lo, hi = math.inf, 0.0
    for N in range(10, 201, 5):
        H = solution_hypergraph(A, N)
        for i in range(1, 10):
            p = i / 10
            mu = len(H) * p**3
            ratio = exponent_scales(mu, 2, 3, p)[1] / (N * p**1.5)
            lo, hi = min(lo, ratio), max(hi, ratio)
            count += 1
            if not 0.2 <= ratio <= 1.0:
                failures.append((N, p, ratio))
    verdict(9, "AP upper scale / (N p^{k/2}) in [0.2, 1]", failures,
            time.perf_counter() - start, 5, f"{count} points, ratio in [{lo:.3f}, {hi:.3f}], ")


def test_criterion_10_determinism(verdict, capsys, monkeypatch):
    monkeypatch.chdir(ROOT)
    start, failures = time.perf_counter(), []
    for name, argv in sorted(CASES.items()):
        outs = []
        for _ in range(2):
            cli.main(argv)
            outs.append(capsys.readouterr().out)
        if not outs[0] == outs[1] == (GOLDEN / name).read_text():
            failures.append(name)
    verdict(10, "repeated CLI runs byte-identical to golden files", failures,
            time.perf_counter() - start, 5, f"{len(CASES)} cases, ")
