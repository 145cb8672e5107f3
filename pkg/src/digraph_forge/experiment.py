"""Monte-Carlo harness for the simple-graph probability and the Poisson limits.

Replication ``i`` always draws from ``replication_rng(master_seed, i)`` and
results are concatenated in replication order, so a report is bit-identical
for any ``jobs`` setting.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bidegree import SamplerParams, sample_bidegree
from .config_model import pair_uniform
from .degree_dist import DegreeDistribution
from .rng import check_seed, replication_rng
from .stats import (
    TestReport,
    independence_check,
    limits_from_distributions,
    limits_from_sequence,
    poisson_fit,
    wilson_interval,
)

MIN_REPS = 1000

# acceptance thresholds, see README "Acceptance thresholds"
P_SIMPLE_SE_MULTIPLE = 3.0
S_MEAN_REL_TOL = 0.05
M_MEAN_REL_TOL = 0.07
P_VALUE_FLOOR = 1e-3

_FIELDS = ("s", "m", "m_pairs", "simple", "lambda1_hat", "lambda2_hat")


def run_replication(F, G, n, params, master_seed, rep) -> tuple:
    rng = replication_rng(master_seed, rep)
    seq, _ = sample_bidegree(F, G, n, params, rng)
    g = pair_uniform(seq, rng)
    if seq.total:
        lim = limits_from_sequence(seq)
        lam1, lam2 = lim.lambda1, lim.lambda2
    else:
        lam1 = lam2 = math.nan
    return g.self_loops, g.multi_excess, g.multi_pairs, g.is_simple, lam1, lam2


def _run_block(F, G, n, params, master_seed, start, stop):
    rows = [run_replication(F, G, n, params, master_seed, i) for i in range(start, stop)]
    return [np.array(col) for col in zip(*rows)]


def run_replications(F, G, n, reps, params, master_seed, jobs=1) -> dict[str, np.ndarray]:
    if jobs <= 1 or reps < 2:
        cols = _run_block(F, G, n, params, master_seed, 0, reps)
    else:
        nblocks = min(reps, 4 * jobs)
        edges = np.linspace(0, reps, nblocks + 1).astype(int)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_run_block, F, G, n, params, master_seed, int(a), int(b))
                for a, b in zip(edges[:-1], edges[1:])
                if b > a
            ]
            parts = [f.result() for f in futures]
        cols = [np.concatenate(c) for c in zip(*parts)]
    return dict(zip(_FIELDS, cols))


@dataclass
class ExperimentReport:
    config: dict
    n: int
    reps: int
    empirical_p_simple: float
    ci_low: float
    ci_high: float
    theory_p_simple: float | None
    lambda1_hat: float | None
    lambda2_hat: float | None
    lambda1_theory: float | None
    lambda2_theory: float | None
    s_mean: float
    m_mean: float
    m_pairs_differs_fraction: float
    s_fit: TestReport | None
    m_fit: TestReport | None
    independence: TestReport
    checks: dict
    runtime_seconds: float | None = None
    samples: dict = field(default_factory=dict, repr=False)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks.values())

    def to_dict(self) -> dict:
        def _fit(t):
            return None if t is None else t.to_dict()

        return {
            "config": self.config,
            "n": self.n,
            "reps": self.reps,
            "empirical_p_simple": self.empirical_p_simple,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "theory_p_simple": self.theory_p_simple,
            "lambda1_hat": self.lambda1_hat,
            "lambda2_hat": self.lambda2_hat,
            "lambda1_theory": self.lambda1_theory,
            "lambda2_theory": self.lambda2_theory,
            "s_mean": self.s_mean,
            "m_mean": self.m_mean,
            "m_pairs_differs_fraction": self.m_pairs_differs_fraction,
            "s_fit": _fit(self.s_fit),
            "m_fit": _fit(self.m_fit),
            "independence": self.independence.to_dict(),
            "checks": self.checks,
            "passed": self.passed,
            "runtime_seconds": self.runtime_seconds,
        }


def _mean_check(observed, theory, rel_tol):
    tol = rel_tol * theory if theory > 0 else rel_tol
    return {
        "observed": observed,
        "theory": theory,
        "tolerance": tol,
        "passed": bool(abs(observed - theory) <= tol),
    }


def _pvalue_check(report):
    if report is None or report.skipped:
        reason = "no test" if report is None else report.reason
        return {"p_value": None, "floor": P_VALUE_FLOOR, "passed": True, "skipped": reason}
    return {"p_value": report.p_value, "floor": P_VALUE_FLOOR, "passed": bool(report.p_value > P_VALUE_FLOOR)}


def simple_probability_experiment(
    F: DegreeDistribution,
    G: DegreeDistribution,
    n: int,
    reps: int,
    params: SamplerParams | None = None,
    master_seed: int = 0,
    jobs: int = 1,
    timing: bool = False,
) -> ExperimentReport:
    """Sample ``reps`` bi-degree sequences, pair each once, and compare with theory.

    Theory columns are ``None`` when the common mean is zero.  Infinite
    second moments are rejected because the limit constants diverge.
    """
    if reps < MIN_REPS:
        raise ValueError(f"reps too small: need at least {MIN_REPS}, got {reps}")
    if not (F.finite_variance and G.finite_variance):
        raise ValueError("experiment needs finite second moments for both distributions")
    params = params or SamplerParams()
    master_seed = check_seed(master_seed)
    t0 = time.perf_counter()

    cols = run_replications(F, G, n, reps, params, master_seed, jobs)
    s, m, simple = cols["s"], cols["m"], cols["simple"]
    p_hat = float(simple.mean())
    lo, hi = wilson_interval(int(simple.sum()), reps)

    theory = None
    if F.mean > 0:
        theory = limits_from_distributions(F, G, params.mean_tolerance)

    lam1_hat = cols["lambda1_hat"]
    lam2_hat = cols["lambda2_hat"]
    lam1_hat = None if np.all(np.isnan(lam1_hat)) else float(np.nanmean(lam1_hat))
    lam2_hat = None if np.all(np.isnan(lam2_hat)) else float(np.nanmean(lam2_hat))

    s_fit = m_fit = None
    checks = {}
    if theory is not None:
        p = theory.p_simple
        tol = P_SIMPLE_SE_MULTIPLE * math.sqrt(p * (1 - p) / reps)
        checks["p_simple"] = {
            "observed": p_hat,
            "theory": p,
            "tolerance": tol,
            "passed": bool(abs(p_hat - p) <= tol),
        }
        checks["s_mean"] = _mean_check(float(s.mean()), theory.lambda1, S_MEAN_REL_TOL)
        checks["m_mean"] = _mean_check(float(m.mean()), theory.lambda2, M_MEAN_REL_TOL)
        if theory.lambda1 > 0:
            s_fit = poisson_fit(s, theory.lambda1)
        if theory.lambda2 > 0:
            m_fit = poisson_fit(m, theory.lambda2)
        checks["s_fit"] = _pvalue_check(s_fit)
        checks["m_fit"] = _pvalue_check(m_fit)
    independence = independence_check(s, m)
    checks["independence"] = _pvalue_check(independence)

    config = {
        "fin": F.spec,
        "fout": G.spec,
        "n": n,
        "reps": reps,
        "seed": master_seed,
        "delta0": params.delta0,
        "max_resamples": params.max_resamples,
        "mean_tolerance": params.mean_tolerance,
    }
    return ExperimentReport(
        config=config,
        n=n,
        reps=reps,
        empirical_p_simple=p_hat,
        ci_low=lo,
        ci_high=hi,
        theory_p_simple=None if theory is None else theory.p_simple,
        lambda1_hat=lam1_hat,
        lambda2_hat=lam2_hat,
        lambda1_theory=None if theory is None else theory.lambda1,
        lambda2_theory=None if theory is None else theory.lambda2,
        s_mean=float(s.mean()),
        m_mean=float(m.mean()),
        m_pairs_differs_fraction=float(np.mean(cols["m_pairs"] != m)),
        s_fit=s_fit,
        m_fit=m_fit,
        independence=independence,
        checks=checks,
        runtime_seconds=round(time.perf_counter() - t0, 3) if timing else None,
        samples={"s": s, "m": m},
    )
