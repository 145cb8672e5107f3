"""Limit constants, empirical degree laws and goodness-of-fit tests.

The self-loop count S_n and multi-edge excess M_n of a pairing converge to
independent Poisson variables with means

    lambda1 = E[gamma * xi] / mu
    lambda2 = E[gamma(gamma-1)] * E[xi(xi-1)] / (2 mu^2)

so a pairing is simple with probability tending to exp(-lambda1 - lambda2).
The helpers here compute those constants from distributions or from a
realized sequence, and test simulated counters against them.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Mapping, Sequence

import numpy as np
from scipy import special, stats as sps

from .bidegree import BiDegreeSequence, check_means
from .degree_dist import DegreeDistribution

NORMALIZATION_TOL = 1e-9
MIN_EXPECTED = 5.0


class LimitSource(str, Enum):
    DISTRIBUTIONS = "from_distributions"
    SEQUENCE = "from_sequence"


@dataclass(frozen=True)
class LimitConstants:
    lambda1: float
    lambda2: float
    p_simple: float
    source: LimitSource

    @classmethod
    def from_lambdas(cls, lambda1: float, lambda2: float, source: LimitSource) -> "LimitConstants":
        return cls(lambda1, lambda2, math.exp(-lambda1 - lambda2), source)


def limits_from_distributions(
    F: DegreeDistribution, G: DegreeDistribution, mean_tolerance: float = 1e-9
) -> LimitConstants:
    """Poisson means for independently sampled in/out degrees (E[gamma xi] = mu^2)."""
    check_means(F, G, mean_tolerance)
    if not (F.finite_variance and G.finite_variance):
        raise ValueError("limit constants need finite second moments for both distributions")
    mu = F.mean
    if not mu > 0:
        raise ValueError("limit constants need a positive common mean")
    lam1 = F.mean * G.mean / mu
    lam2 = F.factorial_moment2 * G.factorial_moment2 / (2 * mu * mu)
    return LimitConstants.from_lambdas(lam1, lam2, LimitSource.DISTRIBUTIONS)


def limits_from_sequence(seq: BiDegreeSequence) -> LimitConstants:
    """Plug-in constants using empirical moments of a realized sequence."""
    n = seq.n
    if n == 0 or seq.total == 0:
        raise ValueError("plug-in limits need a sequence with positive total degree")
    m = seq.in_degrees.astype(float)
    d = seq.out_degrees.astype(float)
    mu = seq.total / n
    lam1 = float(np.dot(m, d)) / n / mu
    fm_in = float(np.dot(m, m - 1)) / n
    fm_out = float(np.dot(d, d - 1)) / n
    lam2 = fm_in * fm_out / (2 * mu * mu)
    return LimitConstants.from_lambdas(lam1, lam2, LimitSource.SEQUENCE)


@dataclass(frozen=True)
class EmpiricalDegreeLaw:
    marginal_in: dict[int, float]
    marginal_out: dict[int, float]
    joint: dict[tuple[int, int], float]
    n: int


def _freq(counter: Counter, n: int) -> dict:
    return {k: c / n for k, c in sorted(counter.items())}


def empirical_law(in_degrees: Sequence[int], out_degrees: Sequence[int]) -> EmpiricalDegreeLaw:
    ins = np.asarray(in_degrees, dtype=np.int64)
    outs = np.asarray(out_degrees, dtype=np.int64)
    if ins.shape != outs.shape:
        raise ValueError("in- and out-degree sequences must have equal length")
    n = ins.size
    if n == 0:
        raise ValueError("empirical law of an empty sequence is undefined")
    pairs, counts = np.unique(np.stack([ins, outs], axis=1), axis=0, return_counts=True)
    joint = {(int(i), int(j)): int(c) / n for (i, j), c in zip(pairs, counts)}
    return EmpiricalDegreeLaw(
        marginal_in=_freq(Counter(ins.tolist()), n),
        marginal_out=_freq(Counter(outs.tolist()), n),
        joint=joint,
        n=n,
    )


def _check_normalized(p: Mapping, name: str):
    total = math.fsum(p.values())
    if abs(total - 1.0) > NORMALIZATION_TOL or any(v < 0 for v in p.values()):
        raise ValueError(f"{name} is not a probability map (total mass {total!r})")


def tv_distance(p: Mapping, q: Mapping) -> float:
    """Half the L1 distance between two probability maps over their joint support."""
    _check_normalized(p, "p")
    _check_normalized(q, "q")
    keys = set(p) | set(q)
    return 0.5 * math.fsum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


def tv_to_distribution(p: Mapping[int, float], dist: DegreeDistribution) -> float:
    """TV distance from an empirical map to a distribution with possibly infinite support.

    Mass of ``dist`` off the support of ``p`` is added as one lump.
    """
    _check_normalized(p, "p")
    ks = np.array(sorted(p), dtype=np.int64)
    q = dist.pmf(ks) if ks.size else np.empty(0)
    on_support = math.fsum(abs(p[int(k)] - qk) for k, qk in zip(ks, q))
    off_support = max(0.0, 1.0 - math.fsum(q))
    return 0.5 * (on_support + off_support)


@dataclass
class TestReport:
    statistic: float | None
    dof: int
    p_value: float | None
    bins: list | None = None
    skipped: bool = False
    reason: str | None = None

    __test__ = False  # not a pytest class

    def to_dict(self) -> dict:
        return asdict(self)


def chi2_sf(x: float, dof: int) -> float:
    """Upper tail of the chi-square law via the regularized incomplete gamma Q."""
    if dof <= 0:
        return 1.0
    return float(special.gammaincc(dof / 2.0, x / 2.0))


def poisson_bins(lam: float, n_samples: int, min_expected: float = MIN_EXPECTED):
    """Bin edges ``[lo, hi]`` over {0, 1, ...} with expected counts >= min_expected.

    Singleton bins from 0 upward while both the bin and the remaining tail
    clear the threshold; low bins that fall short are pooled forward, and
    the last bin is open ended (``hi = None``).
    """
    bins = []
    lo = 0
    acc = 0.0
    k = 0
    while True:
        acc += n_samples * sps.poisson.pmf(k, lam)
        tail = n_samples * sps.poisson.sf(k, lam)
        if tail < min_expected:
            break
        if acc >= min_expected:
            bins.append((lo, k))
            lo, acc = k + 1, 0.0
        k += 1
    bins.append((lo, None))
    return bins


def poisson_fit(samples: Sequence[int], lam: float, min_expected: float = MIN_EXPECTED) -> TestReport:
    """Pearson chi-square goodness of fit to Poisson(lam), lam fixed in advance."""
    x = np.asarray(samples, dtype=np.int64)
    if x.size < 200:
        raise ValueError(f"poisson_fit needs at least 200 samples, got {x.size}")
    if not lam > 0:
        raise ValueError("lambda must be positive")
    N = x.size
    bins = poisson_bins(lam, N, min_expected)
    observed = []
    expected = []
    for lo, hi in bins:
        if hi is None:
            observed.append(int(np.count_nonzero(x >= lo)))
            expected.append(N * sps.poisson.sf(lo - 1, lam))
        else:
            observed.append(int(np.count_nonzero((x >= lo) & (x <= hi))))
            expected.append(N * (sps.poisson.cdf(hi, lam) - sps.poisson.cdf(lo - 1, lam)))
    obs = np.array(observed, dtype=float)
    exp = np.array(expected)
    dof = len(bins) - 1
    labels = [[lo, hi] for lo, hi in bins]
    if dof == 0:
        return TestReport(0.0, 0, 1.0, labels, skipped=True, reason="single bin")
    stat = float(np.sum((obs - exp) ** 2 / exp))
    return TestReport(stat, dof, chi2_sf(stat, dof), labels)


def _pool_upper(values: np.ndarray, min_count: float) -> np.ndarray:
    """Category cut points: values >= cut[-1] share the top category."""
    counts = np.bincount(values)
    cuts = [0]
    acc = 0
    remaining = values.size
    for v, c in enumerate(counts):
        acc += c
        remaining -= c
        if acc >= min_count and remaining >= min_count:
            cuts.append(v + 1)
            acc = 0
    return np.array(cuts)


def independence_check(
    s_samples: Sequence[int], m_samples: Sequence[int], min_expected: float = MIN_EXPECTED
) -> TestReport:
    """Chi-square test of independence on the pooled (S, M) contingency table.

    Each margin is pooled into contiguous categories holding at least a
    threshold count; the threshold grows until every expected cell count
    reaches ``min_expected``.
    """
    s = np.asarray(s_samples, dtype=np.int64)
    m = np.asarray(m_samples, dtype=np.int64)
    if s.shape != m.shape:
        raise ValueError("paired samples must have equal length")
    if s.size < 1000:
        raise ValueError(f"independence_check needs at least 1000 pairs, got {s.size}")
    N = s.size
    threshold = min_expected
    while True:
        s_cuts = _pool_upper(s, threshold)
        m_cuts = _pool_upper(m, threshold)
        if len(s_cuts) < 2 or len(m_cuts) < 2:
            return TestReport(None, 0, None, skipped=True, reason="degenerate table")
        s_cat = np.searchsorted(s_cuts, s, side="right") - 1
        m_cat = np.searchsorted(m_cuts, m, side="right") - 1
        table = np.zeros((len(s_cuts), len(m_cuts)))
        np.add.at(table, (s_cat, m_cat), 1)
        row = table.sum(axis=1)
        col = table.sum(axis=0)
        if row.min() * col.min() / N >= min_expected:
            break
        threshold *= 1.5
    expected = np.outer(row, col) / N
    stat = float(np.sum((table - expected) ** 2 / expected))
    dof = (len(s_cuts) - 1) * (len(m_cuts) - 1)
    bins = {"s_cuts": s_cuts.tolist(), "m_cuts": m_cuts.tolist()}
    return TestReport(stat, dof, chi2_sf(stat, dof), bins)


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    if trials <= 0:
        raise ValueError("trials must be positive")
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)
