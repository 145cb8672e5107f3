import itertools
import math
from collections import Counter

import numpy as np
import pytest
from scipy import stats as sps

from digraph_forge.bidegree import sample_bidegree
from digraph_forge.config_model import Multigraph, pair_uniform
from digraph_forge.degree_dist import make_zeta
from digraph_forge.errors import AttemptsExhausted
from digraph_forge.rng import make_rng
from digraph_forge.simplify import (
    Provenance,
    SimpleDigraph,
    default_max_attempts,
    erase,
    erased_model,
    repeated_model,
)
from _helpers import seq_of


def test_zero_sequence_repeated(rng):
    g, attempts = repeated_model(seq_of([0, 0], [0, 0]), rng)
    assert attempts == 1
    assert g.num_edges == 0
    assert g.provenance is Provenance.REPEATED


def test_impossible_sequence_exhausts(rng):
    with pytest.raises(AttemptsExhausted) as err:
        repeated_model(seq_of([1], [1]), rng, max_attempts=50)
    assert err.value.graphical is False
    assert "not graphical" in str(err.value)


def test_graphical_but_unlucky_message():
    # (1,1) cycle is simple half the time; one attempt can fail by chance
    r = make_rng(0)
    for _ in range(100):
        try:
            repeated_model(seq_of([1, 1], [1, 1]), r, max_attempts=1)
        except AttemptsExhausted as err:
            assert err.graphical is True
            assert "not graphical" not in str(err)
            return
    pytest.fail("never saw a failed attempt")


def test_default_max_attempts():
    assert default_max_attempts(seq_of([0], [0])) == 100
    assert default_max_attempts(seq_of([1, 1], [1, 1])) == 100
    seq = seq_of([3] * 4, [3] * 4)
    # lam1 = 9/3 = 3, lam2 = 6*6/(2*9) = 2
    assert default_max_attempts(seq) == math.ceil(20 * math.exp(5))


def test_erase_example():
    g = Multigraph.from_edges(2, {(0, 1): 3, (1, 0): 1, (0, 0): 1})
    simple, report = erase(g)
    assert simple.edges == {(0, 1), (1, 0)}
    assert simple.provenance is Provenance.ERASED
    assert list(report.removed_out) == [3, 0]
    assert list(report.removed_in) == [1, 2]
    assert report.total_parallel_edges_merged == 2
    assert report.total_self_loops_removed == 1
    assert report.nodes_affected == 2


def test_erased_deficit_matches_counters():
    r = make_rng(31)
    F = make_zeta(2.5)
    for _ in range(20):
        seq, _ = sample_bidegree(F, F, 500, rng=r)
        g = pair_uniform(seq, r)
        simple, rep = erase(g)
        lost = (seq.in_degrees - simple.in_degrees).sum() + (seq.out_degrees - simple.out_degrees).sum()
        assert lost == 2 * (g.self_loops + g.multi_excess)
        assert np.array_equal(seq.in_degrees - simple.in_degrees, rep.removed_in)
        assert np.array_equal(seq.out_degrees - simple.out_degrees, rep.removed_out)


def test_simple_digraph_rejects_bad_edges():
    with pytest.raises(ValueError):
        SimpleDigraph(2, np.array([0]), np.array([0]), Provenance.ERASED)
    with pytest.raises(ValueError):
        SimpleDigraph(2, np.array([0, 0]), np.array([1, 1]), Provenance.ERASED)


def test_repeated_is_uniform_over_realizations():
    # simple realizations of four unit degrees are the 9 derangements
    r = make_rng(32)
    seq = seq_of([1, 1, 1, 1], [1, 1, 1, 1])
    reps = 50_000
    counts = Counter(tuple(sorted(repeated_model(seq, r)[0].edges)) for _ in range(reps))
    assert len(counts) == 9
    chi2, p = sps.chisquare(list(counts.values()))
    assert p > 1e-3


def realizations(m, d):
    n = len(m)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    found = []
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        edges = [p for p, b in zip(pairs, bits) if b]
        if [sum(v == i for _, v in edges) for i in range(n)] == list(m) and [
            sum(u == i for u, _ in edges) for i in range(n)
        ] == list(d):
            found.append(tuple(edges))
    return found


def test_repeated_uniform_on_uneven_sequence():
    m, d = (2, 1, 1, 1), (1, 2, 1, 1)
    expected = realizations(m, d)
    assert len(expected) == 7
    r = make_rng(33)
    reps = 35_000
    counts = Counter(tuple(sorted(repeated_model(seq_of(m, d), r)[0].edges)) for _ in range(reps))
    assert set(counts) == set(expected)
    chi2, p = sps.chisquare([counts[e] for e in expected])
    assert p > 1e-3


def test_erased_heavy_tail_affects_few_nodes():
    r = make_rng(34)
    F = make_zeta(2.5)
    seq, _ = sample_bidegree(F, F, 10**4, rng=r)
    g, rep = erased_model(seq, r)
    assert rep.nodes_affected / seq.n <= 0.05
    assert g.num_edges == seq.total - rep.total_self_loops_removed - rep.total_parallel_edges_merged
