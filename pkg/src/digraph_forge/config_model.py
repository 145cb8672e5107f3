"""Directed configuration model: uniform pairing of inbound and outbound stubs."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .bidegree import BiDegreeSequence


@dataclass(frozen=True)
class Multigraph:
    """Directed multigraph stored as sorted unique ``(src, dst)`` pairs.

    ``self_loops`` counts every loop, parallel loops included.  Parallel
    loops never contribute to ``multi_excess`` (sum of k-1 over non-loop
    pairs with multiplicity k >= 2) or ``multi_pairs`` (sum of k choose 2).
    """

    n: int
    src: np.ndarray
    dst: np.ndarray
    mult: np.ndarray

    @classmethod
    def from_edges(cls, n: int, edges) -> "Multigraph":
        """Build from a ``{(src, dst): multiplicity}`` mapping or an iterable of pairs."""
        if hasattr(edges, "items"):
            items = sorted((tuple(map(int, k)), int(v)) for k, v in edges.items() if v > 0)
        else:
            items = sorted(Counter((int(u), int(v)) for u, v in edges).items())
        src = np.array([k[0] for k, _ in items], dtype=np.int64)
        dst = np.array([k[1] for k, _ in items], dtype=np.int64)
        mult = np.array([v for _, v in items], dtype=np.int64)
        if src.size and (min(src.min(), dst.min()) < 0 or max(src.max(), dst.max()) >= n):
            raise ValueError("edge endpoint outside range(n)")
        return cls(n, src, dst, mult)

    @classmethod
    def from_stub_pairs(cls, n: int, tails: np.ndarray, heads: np.ndarray) -> "Multigraph":
        keys = tails.astype(np.int64) * n + heads.astype(np.int64)
        uniq, mult = np.unique(keys, return_counts=True)
        return cls(n, uniq // n, uniq % n, mult.astype(np.int64))

    @property
    def edges(self) -> dict:
        return {(int(u), int(v)): int(k) for u, v, k in zip(self.src, self.dst, self.mult)}

    @property
    def total(self) -> int:
        return int(self.mult.sum())

    @property
    def _loop(self) -> np.ndarray:
        return self.src == self.dst

    @property
    def self_loops(self) -> int:
        return int(self.mult[self._loop].sum())

    @property
    def multi_excess(self) -> int:
        k = self.mult[~self._loop]
        return int((k[k >= 2] - 1).sum())

    @property
    def multi_pairs(self) -> int:
        k = self.mult[~self._loop]
        return int((k * (k - 1) // 2).sum())

    @property
    def is_simple(self) -> bool:
        return not np.any(self._loop) and not np.any(self.mult > 1)

    def in_degrees(self) -> np.ndarray:
        return np.bincount(self.dst, weights=self.mult, minlength=self.n).astype(np.int64)

    def out_degrees(self) -> np.ndarray:
        return np.bincount(self.src, weights=self.mult, minlength=self.n).astype(np.int64)


def pair_uniform(seq: BiDegreeSequence, rng: np.random.Generator) -> Multigraph:
    """Match every inbound stub to a uniformly random outbound stub.

    One full shuffle of the outbound stub list against the fixed inbound
    list makes all ``L_n!`` matchings equally likely.
    """
    nodes = np.arange(seq.n, dtype=np.int64)
    heads = np.repeat(nodes, seq.in_degrees)
    tails = rng.permutation(np.repeat(nodes, seq.out_degrees))
    return Multigraph.from_stub_pairs(seq.n, tails, heads)


def count_multiplicities(g: Multigraph) -> dict[int, int]:
    """Histogram multiplicity -> number of ordered non-loop node pairs."""
    k = g.mult[~g._loop]
    values, counts = np.unique(k, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}
