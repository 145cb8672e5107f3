"""Bi-degree sequences with equal in/out sums.

Two i.i.d. sequences are drawn, one per distribution, and redrawn until the
difference of their sums is within ``n ** (1 - kappa + delta0)``.  The
deficit is then covered by adding one stub to ``|delta|`` distinct,
uniformly chosen nodes on the smaller side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .degree_dist import DegreeDistribution, kappa
from .errors import MeanMismatch, RetryExhausted


class Side(str, Enum):
    IN = "in_side"
    OUT = "out_side"
    NONE = "none"


@dataclass
class SamplerParams:
    """Knobs for :func:`sample_bidegree`.

    ``delta0=None`` means kappa / 2, resolved once the tail indices are known.
    """

    delta0: float | None = None
    max_resamples: int = 1000
    mean_tolerance: float = 1e-9

    def __post_init__(self):
        if self.max_resamples < 1:
            raise ValueError("max_resamples must be at least 1")
        if self.mean_tolerance < 0:
            raise ValueError("mean_tolerance must be nonnegative")

    def resolve_delta0(self, kappa_val: float) -> float:
        if self.delta0 is None:
            return kappa_val / 2
        if not 0 < self.delta0 < kappa_val:
            raise ValueError(f"delta0 must lie in (0, kappa={kappa_val:.6g}), got {self.delta0}")
        return float(self.delta0)


@dataclass(frozen=True)
class BiDegreeSequence:
    in_degrees: np.ndarray
    out_degrees: np.ndarray

    def __post_init__(self):
        ins = np.asarray(self.in_degrees, dtype=np.int64)
        outs = np.asarray(self.out_degrees, dtype=np.int64)
        if ins.ndim != 1 or ins.shape != outs.shape:
            raise ValueError("in- and out-degree sequences must be 1-d and of equal length")
        if ins.size and (ins.min() < 0 or outs.min() < 0):
            raise ValueError("degrees must be nonnegative")
        if ins.sum() != outs.sum():
            raise ValueError(f"degree sums differ: in={ins.sum()} out={outs.sum()}")
        object.__setattr__(self, "in_degrees", ins)
        object.__setattr__(self, "out_degrees", outs)

    @property
    def n(self) -> int:
        return int(self.in_degrees.size)

    @property
    def total(self) -> int:
        return int(self.in_degrees.sum())

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, BiDegreeSequence):
            return NotImplemented
        return np.array_equal(self.in_degrees, other.in_degrees) and np.array_equal(
            self.out_degrees, other.out_degrees
        )

    __hash__ = None


@dataclass
class SamplerDiagnostics:
    raw_in_sum: int
    raw_out_sum: int
    delta: int
    threshold: float
    kappa: float
    delta0: float
    resamples_used: int
    incremented_nodes: np.ndarray
    incremented_side: Side
    raw_in: np.ndarray = field(repr=False)
    raw_out: np.ndarray = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "raw_in_sum": self.raw_in_sum,
            "raw_out_sum": self.raw_out_sum,
            "delta": self.delta,
            "threshold": self.threshold,
            "kappa": self.kappa,
            "delta0": self.delta0,
            "resamples_used": self.resamples_used,
            "incremented_count": int(self.incremented_nodes.size),
            "incremented_side": self.incremented_side.value,
        }


def delta_threshold(n: int, kappa_val: float, delta0: float) -> float:
    """Largest |Gamma_n - Xi_n| the sampler accepts: ``n ** (1 - kappa + delta0)``."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 < delta0 < kappa_val <= 0.5:
        raise ValueError(f"need 0 < delta0 < kappa <= 1/2, got delta0={delta0}, kappa={kappa_val}")
    return float(n) ** (1.0 - kappa_val + delta0)


def choose_without_replacement(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform k-subset of ``range(n)`` via a partial Fisher-Yates shuffle.

    Only the first ``k`` positions are swapped, so the work after the
    ``arange`` setup is O(k).  Returned in selection order.
    """
    if k < 0 or k > n:
        raise ValueError(f"cannot choose {k} distinct items from {n}")
    if k == 0:
        return np.empty(0, dtype=np.int64)
    perm = np.arange(n, dtype=np.int64)
    picks = rng.integers(np.arange(k), n)
    for i, j in enumerate(picks):
        perm[i], perm[j] = perm[j], perm[i]
    return perm[:k].copy()


def equalize(gamma, xi, rng: np.random.Generator):
    """Balance two raw degree draws by incrementing the smaller side.

    Returns ``(sequence, chosen_nodes, side)``.  When the raw in-sum is at
    least the raw out-sum, out-degrees are incremented (and vice versa).
    """
    gamma = np.asarray(gamma, dtype=np.int64)
    xi = np.asarray(xi, dtype=np.int64)
    delta = int(gamma.sum() - xi.sum())
    chosen = choose_without_replacement(gamma.size, abs(delta), rng)
    ins, outs = gamma.copy(), xi.copy()
    if delta > 0:
        outs[chosen] += 1
        side = Side.OUT
    elif delta < 0:
        ins[chosen] += 1
        side = Side.IN
    else:
        side = Side.NONE
    return BiDegreeSequence(ins, outs), chosen, side


def check_means(F: DegreeDistribution, G: DegreeDistribution, tolerance: float) -> None:
    if not abs(F.mean - G.mean) <= tolerance:
        raise MeanMismatch(F.mean, G.mean, tolerance)


def sample_bidegree(
    F: DegreeDistribution,
    G: DegreeDistribution,
    n: int,
    params: SamplerParams | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[BiDegreeSequence, SamplerDiagnostics]:
    """Draw an equal-sum bi-degree sequence with in-degrees ~ F, out-degrees ~ G.

    Both raw sequences are redrawn in full after every rejection.

    Raises:
        MeanMismatch: if the two means differ by more than ``params.mean_tolerance``.
        RetryExhausted: if ``params.max_resamples`` draws in a row are rejected.
    """
    params = params or SamplerParams()
    if rng is None:
        rng = np.random.default_rng()
    if n < 1:
        raise ValueError("n must be positive")
    check_means(F, G, params.mean_tolerance)
    k = kappa(F.tail_index, G.tail_index)
    d0 = params.resolve_delta0(k)
    threshold = delta_threshold(n, k, d0)

    for attempt in range(params.max_resamples):
        gamma = F.sample(rng, n)
        xi = G.sample(rng, n)
        delta = int(gamma.sum() - xi.sum())
        if abs(delta) <= threshold:
            break
    else:
        raise RetryExhausted(params.max_resamples, threshold, delta)

    seq, chosen, side = equalize(gamma, xi, rng)
    diag = SamplerDiagnostics(
        raw_in_sum=int(gamma.sum()),
        raw_out_sum=int(xi.sum()),
        delta=delta,
        threshold=threshold,
        kappa=k,
        delta0=d0,
        resamples_used=attempt,
        incremented_nodes=np.sort(chosen),
        incremented_side=side,
        raw_in=gamma,
        raw_out=xi,
    )
    return seq, diag

