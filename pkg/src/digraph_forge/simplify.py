"""Simple digraphs from the pairing model: repeated and erased variants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bidegree import BiDegreeSequence
from .config_model import Multigraph, pair_uniform
from .errors import AttemptsExhausted
from .graphicality import is_graphical
from .stats import limits_from_sequence


class Provenance(str, Enum):
    REPEATED = "repeated"
    ERASED = "erased"


@dataclass(frozen=True)
class SimpleDigraph:
    n: int
    src: np.ndarray
    dst: np.ndarray
    provenance: Provenance

    def __post_init__(self):
        if np.any(self.src == self.dst):
            raise ValueError("simple digraph cannot contain self-loops")
        keys = self.src * max(self.n, 1) + self.dst
        if np.unique(keys).size != keys.size:
            raise ValueError("simple digraph cannot contain parallel edges")

    @classmethod
    def from_multigraph(cls, g: Multigraph, provenance: Provenance) -> "SimpleDigraph":
        keep = g.src != g.dst
        return cls(g.n, g.src[keep].copy(), g.dst[keep].copy(), Provenance(provenance))

    @property
    def edges(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in zip(self.src, self.dst)}

    @property
    def num_edges(self) -> int:
        return int(self.src.size)

    @property
    def in_degrees(self) -> np.ndarray:
        return np.bincount(self.dst, minlength=self.n).astype(np.int64)

    @property
    def out_degrees(self) -> np.ndarray:
        return np.bincount(self.src, minlength=self.n).astype(np.int64)


@dataclass(frozen=True)
class ErasureReport:
    removed_in: np.ndarray
    removed_out: np.ndarray
    total_self_loops_removed: int
    total_parallel_edges_merged: int

    @property
    def nodes_affected(self) -> int:
        return int(np.count_nonzero((self.removed_in > 0) | (self.removed_out > 0)))

    def to_dict(self) -> dict:
        return {
            "total_self_loops_removed": self.total_self_loops_removed,
            "total_parallel_edges_merged": self.total_parallel_edges_merged,
            "removed_in_stubs": int(self.removed_in.sum()),
            "removed_out_stubs": int(self.removed_out.sum()),
            "nodes_with_removed_stubs": self.nodes_affected,
        }


def default_max_attempts(seq: BiDegreeSequence) -> int:
    """max(100, ceil(20 * exp(lam1_hat + lam2_hat))) from the plug-in estimates."""
    if seq.total == 0:
        return 100
    lim = limits_from_sequence(seq)
    exponent = lim.lambda1 + lim.lambda2
    # beyond ~1e9 attempts the loop is hopeless anyway
    if exponent > math.log(5e7):
        return 10**9
    return max(100, math.ceil(20 * math.exp(exponent)))


def repeated_model(
    seq: BiDegreeSequence,
    rng: np.random.Generator,
    max_attempts: int | None = None,
) -> tuple[SimpleDigraph, int]:
    """Re-pair until the multigraph is simple.

    The degree sequence is never redrawn.  Conditional on success the
    result is uniform over simple realizations of ``seq``.

    Raises:
        AttemptsExhausted: after ``max_attempts`` non-simple pairings; the
            exception's ``graphical`` field says whether success was possible.
    """
    if max_attempts is None:
        max_attempts = default_max_attempts(seq)
    if max_attempts < 1:
        raise ValueError("max_attempts must be positive")
    for attempt in range(1, max_attempts + 1):
        g = pair_uniform(seq, rng)
        if g.is_simple:
            return SimpleDigraph.from_multigraph(g, Provenance.REPEATED), attempt
    raise AttemptsExhausted(max_attempts, graphical=is_graphical(seq))


def erase(g: Multigraph) -> tuple[SimpleDigraph, ErasureReport]:
    """Drop self-loops and collapse same-direction parallel edges to one."""
    loop = g.src == g.dst
    removed = np.where(loop, g.mult, g.mult - 1)
    removed_out = np.bincount(g.src, weights=removed, minlength=g.n).astype(np.int64)
    removed_in = np.bincount(g.dst, weights=removed, minlength=g.n).astype(np.int64)
    report = ErasureReport(
        removed_in=removed_in,
        removed_out=removed_out,
        total_self_loops_removed=g.self_loops,
        total_parallel_edges_merged=g.multi_excess,
    )
    return SimpleDigraph.from_multigraph(g, Provenance.ERASED), report


def erased_model(seq: BiDegreeSequence, rng: np.random.Generator) -> tuple[SimpleDigraph, ErasureReport]:
    return erase(pair_uniform(seq, rng))
