import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tailkit.errors import CertificateError, InfeasibleError
from tailkit.hypergraph import Hypergraph, exact_moment, exact_tail, expected_count
from tailkit.linsys import solution_hypergraph, standard_system
from tailkit.moments import (
    certificate_tail_lower,
    default_m_max,
    exponent_scales,
    greedy_certificate,
    hypergraph_envelope,
    log_moment_upper_bound,
    markov_tail_upper,
    moment_upper_bound,
    scale_branches,
)

EDGE = Hypergraph(2, 2, ((1, 2),))
AP5 = Hypergraph(5, 3, ((1, 2, 3), (2, 3, 4), (3, 4, 5), (1, 3, 5)))
AP10 = solution_hypergraph(standard_system("ap"), 10)


def test_moment_upper_bound_examples():
    assert moment_upper_bound(AP5, 0.3, 1) == expected_count(AP5, 0.3)
    assert moment_upper_bound(EDGE, 0.5, 2) == 0.5625
    assert moment_upper_bound(EDGE, 0.5, 2) >= exact_moment(EDGE, 0.5, 2)
    assert moment_upper_bound(AP5, 0.5, 2) >= exact_moment(AP5, 0.5, 2)
    assert moment_upper_bound(AP5, 0.0, 3) == 0
    with pytest.raises(ValueError):
        moment_upper_bound(AP5, 0.5, 0)


def test_log_moment_agrees():
    for m in (1, 2, 5):
        assert log_moment_upper_bound(AP10, 0.4, m) == pytest.approx(
            math.log(moment_upper_bound(AP10, 0.4, m)), rel=1e-12)


def test_markov_examples():
    assert markov_tail_upper(EDGE, 0.5, 2, 1) == (0.5, 1)
    assert markov_tail_upper(EDGE, 0.5, 4, 1) == (0.25, 1)
    bound, m = markov_tail_upper(AP5, 0.5, 2, 8)
    assert bound >= exact_tail(AP5, 0.5, 2 * expected_count(AP5, 0.5))
    with pytest.raises(ValueError):
        markov_tail_upper(AP5, 0.5, 1.0, 3)
    with pytest.raises(ValueError):
        markov_tail_upper(AP5, 0.0, 2, 3)


def test_markov_picks_higher_moment_when_it_helps():
    # dense instance: large mu makes higher moments beat 1/t
    H = solution_hypergraph(standard_system("schur"), 60)
    bound, m = markov_tail_upper(H, 0.9, 1.3, 50)
    assert m > 1 and bound < 1 / 1.3


def test_default_m_max():
    assert default_m_max(25, 2) == 10
    assert default_m_max(0, 2) == 1
    assert default_m_max(1e40, 1) == 10**4


def test_exponent_scale_examples():
    lo, hi = exponent_scales(25, 2, 3, math.exp(-1))
    assert lo == pytest.approx(5, rel=1e-15) and hi == 5
    assert exponent_scales(64, Fraction(3, 2), 3, 0.25)[1] == pytest.approx(8, rel=1e-12)
    assert scale_branches(64, Fraction(3, 2), 3, 0.25) == pytest.approx((4, 8), rel=1e-12)
    for bad in (0.0, 1.0):
        with pytest.raises(ValueError):
            exponent_scales(4, 2, 3, bad)
    with pytest.raises(ValueError):
        exponent_scales(4, 4, 3, 0.5)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.01, 1e6), st.integers(1, 4), st.fractions(Fraction(1, 100), Fraction(99, 100)))
def test_integer_q_branches_coincide(mu, q, p):
    first, second = scale_branches(mu, q, 4, float(p))
    assert first == second
    assert exponent_scales(mu, q, 4, float(p))[1] == first


def test_certificate_examples():
    assert certificate_tail_lower(AP5, range(1, 6), 0.5, 7.9) == 5 * math.log(0.5)
    assert certificate_tail_lower(AP5, {1, 2, 3}, 0.5, 2) == 3 * math.log(0.5)
    with pytest.raises(CertificateError) as err:
        certificate_tail_lower(AP5, set(), 0.5, 1.5)
    assert err.value.achieved == 0


def test_greedy_examples():
    assert greedy_certificate(Hypergraph(4, 2, ((2, 3),)), 0.5, 2) == frozenset({2, 3})
    cert = greedy_certificate(AP10, 0.5, 2)
    assert len(cert) <= 6
    with pytest.raises(InfeasibleError):
        greedy_certificate(AP5, 0.5, 9)
    assert greedy_certificate(AP10, 0.5, 2, budget=3) is None


def test_domination_on_corpus(hypergraphs):
    for name, H in hypergraphs.items():
        for p in (0.1, 0.3, 0.5, 0.9):
            for m in range(1, 5):
                if len(H) ** m > 10**6:
                    continue
                assert exact_moment(H, p, m) <= moment_upper_bound(H, p, m), (name, p, m)


def test_sandwich_on_corpus(hypergraphs):
    checked = 0
    for name, H in hypergraphs.items():
        for p in (0.2, 0.5, 0.8):
            for t in (1.2, 1.5, 2, 3):
                env = hypergraph_envelope(H, p, t, 2)
                truth = exact_tail(H, p, t * env.mu)
                if env.infeasible:
                    assert truth == 0
                    continue
                assert env.upper_tail_bound <= 1 / t
                assert env.lower_prob <= truth <= env.upper_tail_bound, (name, p, t)
                checked += env.lower_log_prob is not None
    assert checked > 50


def test_markov_nonincreasing_in_t(hypergraphs):
    H = hypergraphs["schur-12"]
    for p in (0.3, 0.6):
        values = [markov_tail_upper(H, p, t, 20)[0] for t in (1.1, 1.5, 2, 3, 5)]
        assert all(a >= b for a, b in zip(values, values[1:]))


def test_envelope_edge_cases():
    env = hypergraph_envelope(AP5, 0.5, 100, 2)
    assert env.infeasible and env.upper_tail_bound == 0 and env.lower_prob == 0
    env = hypergraph_envelope(AP5, 0.0, 2, 2)
    assert env.upper_tail_bound == 1 and env.lower_prob <= 1
    env = hypergraph_envelope(AP10, 0.5, 2, 2, candidates=[("prefix", range(1, 7))])
    assert env.certificate_source in ("prefix", "greedy") and len(env.certificate) <= 6
