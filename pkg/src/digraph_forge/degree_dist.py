"""Integer degree distributions with the moment and tail metadata the
bi-degree sampler needs.

Each family knows its pmf, its survival function ``P(X > k)``, its mean,
its second moment (``math.inf`` when it diverges) and a scalar tail index
(``math.inf`` for tails lighter than any power).  Sampling is inverse-CDF
against a lazily grown table of survival values; draws that land beyond the
table cap fall back to bisection on the closed-form survival function.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy import special, stats

_TABLE_START = 64
_TABLE_CAP = 1 << 20


class DegreeDistribution:
    """Base class for a distribution on the nonnegative integers.

    Subclasses implement ``_pmf`` and ``_sf`` on integer arrays and set
    ``mean``, ``second_moment`` and ``tail_index`` in ``__init__``.
    Instances are logically immutable; the sampling table is an internal
    cache that is only ever replaced wholesale, never mutated in place.
    """

    family = "abstract"
    mean: float
    second_moment: float
    tail_index: float
    truncation_bound: int | None = None

    def __init__(self):
        self._sf_table = np.empty(0)

    # -- subclass hooks --

    def _pmf(self, ks: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _sf(self, ks: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def spec(self) -> str:
        raise NotImplementedError

    # -- public surface --

    def pmf(self, k):
        """Probability mass at ``k`` (scalar or array); zero off the support."""
        ks = np.asarray(k)
        out = np.zeros(ks.shape, dtype=float)
        ok = (ks >= 0) & (ks == np.floor(ks))
        if np.any(ok):
            out[ok] = self._pmf(ks[ok].astype(np.int64))
        return float(out) if out.ndim == 0 else out

    def sf(self, k):
        """Survival function ``P(X > k)``."""
        ks = np.asarray(k, dtype=np.int64)
        out = np.ones(ks.shape, dtype=float)
        ok = ks >= 0
        if np.any(ok):
            out[ok] = self._sf(ks[ok])
        return float(out) if out.ndim == 0 else out

    def cdf(self, k):
        return 1.0 - self.sf(k)

    @property
    def finite_variance(self) -> bool:
        return math.isfinite(self.second_moment)

    @property
    def factorial_moment2(self) -> float:
        """E[X(X-1)]."""
        return self.second_moment - self.mean

    def sample(self, rng: np.random.Generator, size=None):
        """Inverse-CDF draws; deterministic given the generator state."""
        u = rng.random(size)
        ks = self._invert(np.atleast_1d(1.0 - u))
        if size is None:
            return int(ks[0])
        return ks.reshape(np.shape(u))

    def _invert(self, tails: np.ndarray) -> np.ndarray:
        # smallest k with P(X > k) < t, for t = 1 - u in (0, 1]
        tmin = tails.min() if tails.size else 1.0
        table = self._ensure_table(tmin)
        ks = np.searchsorted(-table, -tails, side="right").astype(np.int64)
        beyond = ks >= table.size
        if np.any(beyond):
            for idx in np.flatnonzero(beyond):
                ks[idx] = self._bisect_tail(tails[idx], table.size)
        return ks

    def _ensure_table(self, tmin: float) -> np.ndarray:
        table = self._sf_table
        if table.size and (table[-1] < tmin or table.size >= _TABLE_CAP):
            return table
        size = max(_TABLE_START, 2 * table.size)
        while True:
            table = self._sf(np.arange(size, dtype=np.int64))
            if table[-1] < tmin or size >= _TABLE_CAP:
                break
            size = min(2 * size, _TABLE_CAP)
        self._sf_table = table
        return table

    def _bisect_tail(self, t: float, lo: int) -> int:
        # invariant: sf(lo - 1) >= t, find first k >= lo with sf(k) < t
        hi = max(2 * lo, 1)
        while self._sf(np.array([hi]))[0] >= t:
            lo, hi = hi, 2 * hi
        while lo < hi:
            mid = (lo + hi) // 2
            if self._sf(np.array([mid]))[0] < t:
                hi = mid
            else:
                lo = mid + 1
        return int(lo)

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec}>"

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_sf_table"] = np.empty(0)
        return state


class Poisson(DegreeDistribution):
    family = "poisson"

    def __init__(self, mu: float):
        super().__init__()
        mu = float(mu)
        if not (mu > 0 and math.isfinite(mu)):
            raise ValueError(f"Poisson mean must be positive and finite, got {mu}")
        self.mu = mu
        self.mean = mu
        self.second_moment = mu * mu + mu
        self.tail_index = math.inf

    @property
    def spec(self):
        return f"poisson:{self.mu!r}"

    def _pmf(self, ks):
        return stats.poisson.pmf(ks, self.mu)

    def _sf(self, ks):
        return stats.poisson.sf(ks, self.mu)


class Zeta(DegreeDistribution):
    """pmf(k) proportional to (k+1)^-a on k >= 0; tail index a - 1."""

    family = "zeta"

    def __init__(self, a: float):
        super().__init__()
        a = float(a)
        if not a > 2:
            raise ValueError(f"zeta exponent must exceed 2 for a finite mean, got {a}")
        self.a = a
        self._norm = special.zeta(a)
        # sum_{j>=1} (j-1)^r j^-a expanded into Riemann zeta values
        self.mean = (special.zeta(a - 1) - self._norm) / self._norm
        if a > 3:
            self.second_moment = (
                special.zeta(a - 2) - 2 * special.zeta(a - 1) + self._norm
            ) / self._norm
        else:
            self.second_moment = math.inf
        self.tail_index = a - 1

    @property
    def spec(self):
        return f"zeta:{self.a!r}"

    def _pmf(self, ks):
        return (ks + 1.0) ** (-self.a) / self._norm

    def _sf(self, ks):
        return special.zeta(self.a, ks + 2.0) / self._norm


class Geometric(DegreeDistribution):
    """pmf(k) = (1-p) p^k on k >= 0."""

    family = "geometric"

    def __init__(self, p: float):
        super().__init__()
        p = float(p)
        if not 0 < p < 1:
            raise ValueError(f"geometric parameter must lie in (0, 1), got {p}")
        self.p = p
        self.mean = p / (1 - p)
        self.second_moment = p * (1 + p) / (1 - p) ** 2
        self.tail_index = math.inf

    @property
    def spec(self):
        return f"geometric:{self.p!r}"

    def _pmf(self, ks):
        return (1 - self.p) * self.p ** ks.astype(float)

    def _sf(self, ks):
        return self.p ** (ks + 1.0)


class Empirical(DegreeDistribution):
    """Finite-support distribution from nonnegative weights indexed by degree."""

    family = "empirical"

    def __init__(self, weights: Sequence[float], source: str | None = None):
        super().__init__()
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("empirical weights must be a nonempty 1-d sequence")
        if np.any(~np.isfinite(w)) or np.any(w < 0):
            raise ValueError("empirical weights must be finite and nonnegative")
        total = math.fsum(w)
        if total <= 0:
            raise ValueError("empirical weights must contain a positive entry")
        self.weights = w
        self.source = source
        self.probs = w / total
        ks = np.arange(w.size, dtype=float)
        self.mean = math.fsum(ks * self.probs)
        self.second_moment = math.fsum(ks * ks * self.probs)
        self.tail_index = math.inf
        self.truncation_bound = int(w.size - 1)
        tail = np.array([math.fsum(w[k + 1:]) for k in range(w.size)]) / total
        self._tail = tail

    @property
    def spec(self):
        if self.source is not None:
            return f"empirical:@{self.source}"
        return "empirical:" + ",".join(repr(float(x)) for x in self.weights)

    def _pmf(self, ks):
        out = np.zeros(ks.shape)
        inside = ks < self.probs.size
        out[inside] = self.probs[ks[inside]]
        return out

    def _sf(self, ks):
        out = np.zeros(ks.shape)
        inside = ks < self._tail.size
        out[inside] = self._tail[ks[inside]]
        return out


class PointMass(Empirical):
    family = "point"

    def __init__(self, k: int):
        k = int(k)
        if k < 0:
            raise ValueError("point mass must sit on a nonnegative degree")
        super().__init__([0.0] * k + [1.0])
        self.k = k

    @property
    def spec(self):
        return f"point:{self.k}"


def make_poisson(mu: float) -> Poisson:
    return Poisson(mu)


def make_zeta(a: float) -> Zeta:
    return Zeta(a)


def make_geometric(p: float) -> Geometric:
    return Geometric(p)


def make_empirical(weights: Sequence[float], source: str | None = None) -> Empirical:
    return Empirical(weights, source=source)


def make_point_mass(k: int) -> PointMass:
    return PointMass(k)


def sample(dist: DegreeDistribution, rng: np.random.Generator, size=None):
    return dist.sample(rng, size)


def kappa(alpha: float, beta: float) -> float:
    """min{1 - 1/alpha, 1 - 1/beta, 1/2}; an infinite index contributes 1."""
    for t in (alpha, beta):
        if not t > 1:
            raise ValueError(f"tail index must exceed 1, got {t}")
    return min(1.0 - 1.0 / alpha, 1.0 - 1.0 / beta, 0.5)


def parse_distribution(spec: str, base_dir: str | Path | None = None) -> DegreeDistribution:
    """Build a distribution from ``family:param``.

    Accepted forms: ``poisson:2.0``, ``zeta:3.5``, ``geometric:0.5``,
    ``point:1`` and ``empirical:@weights.txt`` (one weight per line, line
    index = degree; blank lines and ``#`` comments ignored).
    """
    family, sep, arg = spec.partition(":")
    family = family.strip().lower()
    arg = arg.strip()
    if not sep or not arg:
        raise ValueError(f"malformed distribution spec {spec!r}; expected family:param")
    try:
        if family == "poisson":
            return make_poisson(float(arg))
        if family == "zeta":
            return make_zeta(float(arg))
        if family == "geometric":
            return make_geometric(float(arg))
        if family == "point":
            return make_point_mass(int(arg))
    except ValueError as exc:
        raise ValueError(f"bad parameter in distribution spec {spec!r}: {exc}") from None
    if family == "empirical":
        if not arg.startswith("@"):
            raise ValueError("empirical spec must reference a file as empirical:@path")
        path = Path(arg[1:])
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        weights = []
        for line in path.read_text().splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                weights.append(float(line))
        return make_empirical(weights, source=arg[1:])
    raise ValueError(f"unknown distribution family {family!r} in {spec!r}")
