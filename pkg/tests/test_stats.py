import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats as sps

from digraph_forge.bidegree import sample_bidegree
from digraph_forge.degree_dist import make_empirical, make_geometric, make_point_mass, make_poisson, make_zeta
from digraph_forge.errors import MeanMismatch
from digraph_forge.rng import make_rng
from digraph_forge.stats import (
    LimitSource,
    chi2_sf,
    empirical_law,
    independence_check,
    limits_from_distributions,
    limits_from_sequence,
    poisson_bins,
    poisson_fit,
    tv_distance,
    tv_to_distribution,
    wilson_interval,
)
from _helpers import seq_of


# -- limit constants --

def test_poisson_limits():
    lim = limits_from_distributions(make_poisson(2), make_poisson(2))
    assert lim.lambda1 == pytest.approx(2.0)
    assert lim.lambda2 == pytest.approx(2.0)
    assert lim.p_simple == pytest.approx(math.exp(-4))
    assert lim.source is LimitSource.DISTRIBUTIONS


def test_point_mass_limits():
    lim = limits_from_distributions(make_point_mass(1), make_point_mass(1))
    assert lim.lambda1 == 1.0
    assert lim.lambda2 == 0.0
    assert lim.p_simple == pytest.approx(math.exp(-1))


def test_geometric_limits():
    lim = limits_from_distributions(make_geometric(0.5), make_geometric(0.5))
    # E[g(g-1)] = 2 for mean-1 geometric
    assert lim.lambda1 == pytest.approx(1.0)
    assert lim.lambda2 == pytest.approx(2.0)
    assert lim.p_simple == pytest.approx(math.exp(-3))


def test_mixed_families_with_equal_means():
    lim = limits_from_distributions(make_poisson(1.0), make_geometric(0.5))
    assert lim.lambda1 == pytest.approx(1.0)
    assert lim.lambda2 == pytest.approx(1.0 * 2.0 / 2)


def test_limit_errors():
    with pytest.raises(MeanMismatch):
        limits_from_distributions(make_poisson(1), make_poisson(2))
    with pytest.raises(ValueError):
        limits_from_distributions(make_zeta(3), make_zeta(3))
    with pytest.raises(ValueError):
        limits_from_distributions(make_empirical([1]), make_empirical([1]))


def test_sequence_limits():
    lim = limits_from_sequence(seq_of([1, 1], [2, 0]))
    # mu = 1, E[md] = 1, E[m(m-1)] = 0
    assert lim.lambda1 == pytest.approx(1.0)
    assert lim.lambda2 == 0.0
    lim = limits_from_sequence(seq_of([2, 0], [2, 0]))
    assert lim.lambda1 == pytest.approx(2.0)
    assert lim.lambda2 == pytest.approx(0.5)
    assert lim.source is LimitSource.SEQUENCE
    with pytest.raises(ValueError):
        limits_from_sequence(seq_of([0], [0]))


@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=20), st.integers(2, 4))
def test_sequence_limits_invariant_under_duplication(pairs, copies):
    m = [a for a, _ in pairs]
    d = [b for _, b in pairs]
    if sum(m) != sum(d) or sum(m) == 0:
        return
    one = limits_from_sequence(seq_of(m, d))
    many = limits_from_sequence(seq_of(m * copies, d * copies))
    assert many.lambda1 == pytest.approx(one.lambda1)
    assert many.lambda2 == pytest.approx(one.lambda2)


# -- empirical laws and TV --

def test_empirical_law():
    law = empirical_law([1, 1, 0], [0, 2, 1])
    assert law.marginal_in == {0: 1 / 3, 1: 2 / 3}
    assert law.joint[(1, 2)] == pytest.approx(1 / 3)
    with pytest.raises(ValueError):
        empirical_law([], [])


def test_tv_examples():
    assert tv_distance({0: 1.0}, {1: 1.0}) == 1.0
    assert tv_distance({0: 0.5, 1: 0.5}, {0: 0.5, 1: 0.5}) == 0.0
    assert tv_distance({0: 0.5, 1: 0.5}, {0: 1.0}) == 0.5
    with pytest.raises(ValueError):
        tv_distance({0: 0.5}, {0: 1.0})


def test_tv_to_distribution_includes_unseen_mass():
    assert tv_to_distribution({1: 1.0}, make_point_mass(1)) == pytest.approx(0.0)
    p = {0: 0.5, 1: 0.5}
    G = make_geometric(0.5)
    # |0.5-0.5| + |0.5-0.25| + tail mass 0.25
    assert tv_to_distribution(p, G) == pytest.approx(0.25)


prob_maps = st.dictionaries(st.integers(0, 8), st.floats(0.01, 1.0), min_size=1).map(
    lambda w: {k: v / math.fsum(w.values()) for k, v in w.items()}
)


@given(prob_maps, prob_maps, prob_maps)
def test_tv_is_a_metric(p, q, r):
    assert tv_distance(p, p) == pytest.approx(0.0, abs=1e-12)
    assert tv_distance(p, q) == pytest.approx(tv_distance(q, p))
    assert 0 <= tv_distance(p, q) <= 1 + 1e-12
    assert tv_distance(p, r) <= tv_distance(p, q) + tv_distance(q, r) + 1e-12


# -- chi-square machinery --

@pytest.mark.parametrize("x, dof", [(0.5, 1), (3.84, 1), (10.0, 4), (30.0, 10), (150.0, 100), (1e-3, 7), (80.0, 3)])
def test_chi2_sf_against_mpmath(x, dof):
    oracle = float(mpmath.gammainc(mpmath.mpf(dof) / 2, mpmath.mpf(x) / 2, mpmath.inf, regularized=True))
    assert chi2_sf(x, dof) == pytest.approx(oracle, rel=1e-10)


def test_poisson_bins_meet_minimum_expected():
    for lam in (0.3, 1.0, 2.0, 7.5):
        for N in (200, 1000, 5000):
            bins = poisson_bins(lam, N)
            for lo, hi in bins:
                mass = sps.poisson.sf(lo - 1, lam) if hi is None else sps.poisson.cdf(hi, lam) - sps.poisson.cdf(lo - 1, lam)
                assert N * mass >= 5 - 1e-9
            assert bins[0][0] == 0 and bins[-1][1] is None


def test_poisson_fit_accepts_true_law_and_rejects_wrong_one():
    r = make_rng(41)
    x = r.poisson(2.0, 5000)
    good = poisson_fit(x, 2.0)
    assert good.p_value > 1e-3
    bad = poisson_fit(x, 2.4)
    assert bad.p_value < 1e-6


def test_poisson_fit_small_lambda_single_bin():
    rep = poisson_fit(np.zeros(200, dtype=int), 0.001)
    assert rep.skipped


def test_poisson_fit_needs_samples():
    with pytest.raises(ValueError):
        poisson_fit([0] * 199, 1.0)


def test_poisson_fit_false_rejection_rate():
    r = make_rng(42)
    trials = 2000
    rejected = sum(poisson_fit(r.poisson(1.5, 500), 1.5).p_value <= 1e-3 for _ in range(trials))
    assert 1 - rejected / trials >= 0.995


def test_independence_check_behaviour():
    r = make_rng(43)
    s = r.poisson(2.0, 5000)
    m = r.poisson(2.0, 5000)
    assert independence_check(s, m).p_value > 1e-3
    assert independence_check(s, s).p_value < 1e-10
    rep = independence_check(np.zeros(1000, dtype=int), m[:1000])
    assert rep.skipped and rep.reason == "degenerate table"
    with pytest.raises(ValueError):
        independence_check(s[:999], m[:999])


def test_independence_false_rejection_rate():
    r = make_rng(44)
    trials = 1000
    rejected = 0
    for _ in range(trials):
        rep = independence_check(r.poisson(2.0, 1000), r.poisson(0.7, 1000))
        rejected += rep.p_value <= 1e-3
    assert 1 - rejected / trials >= 0.995


def test_wilson_interval():
    lo, hi = wilson_interval(50, 100)
    assert lo == pytest.approx(0.4038, abs=1e-4)
    assert hi == pytest.approx(0.5962, abs=1e-4)
    lo, hi = wilson_interval(0, 10)
    assert lo == 0.0 and 0 < hi < 0.35


def test_realized_poisson_marginal_close_to_target():
    F = make_poisson(2)
    seq, _ = sample_bidegree(F, F, 10**5, rng=make_rng(45))
    law = empirical_law(seq.in_degrees, seq.out_degrees)
    assert tv_to_distribution(law.marginal_in, F) <= 0.01
    assert tv_to_distribution(law.marginal_out, F) <= 0.01
